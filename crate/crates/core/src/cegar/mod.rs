//! Counterexample-guided refinement of classifier approximations.

mod refine;
mod split;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use refine::{compute_equiv, refine, SplitRecord};
pub use split::split;

use crate::automata::{apply, intersect_empty, inverse, lang_equal, product, trim, witness_word, Nfa, Transducer};
use crate::classifier::{raw_image, step_tc, Classifier, TaggedNfa};
use crate::error::{Error, Result};
use crate::report::{Clock, Outcome, Report};

/// One refinement round of the driver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefinementRound {
    /// Step at which the spurious intersection was found.
    pub k: usize,
    /// Localisation index.
    pub j: usize,
    pub sim_classes: usize,
    pub equiv_classes: usize,
    pub splits: Vec<SplitRecord>,
    pub classifier_states: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefinementTrace {
    pub rounds: Vec<RefinementRound>,
}

/// Lazily computed backward images `T^{-m}(B)`.
#[derive(Clone, Debug)]
pub struct BackwardImages {
    t_inv: Transducer,
    images: Vec<Nfa>,
}

impl BackwardImages {
    pub fn new(t: &Transducer, bad: &Nfa) -> Self {
        BackwardImages {
            t_inv: inverse(t),
            images: vec![trim(bad)],
        }
    }

    pub fn get(&mut self, m: usize) -> Result<&Nfa> {
        while self.images.len() <= m {
            let next = apply(&self.t_inv, self.images.last().expect("non-empty"))?;
            self.images.push(next);
        }
        Ok(&self.images[m])
    }
}

/// Maximal `j ≤ k` such that `T^j_C(A)` meets `T^{-(k-j)}(B)` while the
/// exact image `T(T^{j-1}_C(A))` does not. `iterates[i]` must be
/// `T^i_C(A)` for `i ≤ k`.
pub(crate) fn find_j_with(
    iterates: &[TaggedNfa],
    t: &Transducer,
    back: &mut BackwardImages,
    k: usize,
) -> Result<usize> {
    if !intersect_empty(iterates[0].nfa(), back.get(k)?)? {
        return Err(Error::NoSuchIndex { k });
    }
    for j in (1..=k).rev() {
        let b = back.get(k - j)?.clone();
        if intersect_empty(iterates[j].nfa(), &b)? {
            continue;
        }
        let exact = apply(t, iterates[j - 1].nfa())?;
        if intersect_empty(&exact, &b)? {
            return Ok(j);
        }
    }
    Err(Error::NoSuchIndex { k })
}

/// Localisation index for a spurious intersection at step `k`.
pub fn find_j(a: &Nfa, bad: &Nfa, c: &Classifier, t: &Transducer, k: usize) -> Result<usize> {
    c.check_compatible(t)?;
    let mut iterates = vec![TaggedNfa::initial(a, c)];
    for i in 0..k {
        let next = step_tc(&iterates[i], t, c)?;
        iterates.push(next);
    }
    find_j_with(&iterates, t, &mut BackwardImages::new(t, bad), k)
}

#[derive(Clone, Debug)]
pub struct CegarOptions {
    /// Starting step of the first round.
    pub ell: usize,
    pub max_outer: usize,
    /// Largest step index explored within one round.
    pub max_steps: usize,
    pub timeout: Option<Duration>,
}

impl Default for CegarOptions {
    fn default() -> Self {
        CegarOptions {
            ell: 0,
            max_outer: 10,
            max_steps: 30,
            timeout: None,
        }
    }
}

/// The refinement driver.
///
/// Each round grows `k` from the current start while `T^k_C(A)` avoids the
/// current bad automaton and the languages keep changing. Stabilisation
/// without intersection is `Safe`; an initial word whose `k`-fold image is
/// bad is `Unsafe`; otherwise the classifier is refined at the localisation
/// index `j` and the next round starts at `j` with `T^{-k}` of the current
/// bad automaton.
pub fn reach_cegar(a: &Nfa, bad: &Nfa, t: &Transducer, c: &Classifier, opts: &CegarOptions) -> Result<Report> {
    let clock = Clock::start(opts.timeout);
    a.alphabet().ensure_same(t.alphabet())?;
    a.alphabet().ensure_same(bad.alphabet())?;
    c.check_compatible(t)?;
    crate::classifier::fixpoint::require_identity(t)?;
    let mut report = Report::new("cegar");
    let mut trace = RefinementTrace::default();
    let mut c = c.clone();
    let mut current_bad = trim(bad);
    let mut ell = opts.ell;
    let mut offset = 0;

    for round in 0..opts.max_outer {
        let mut back = BackwardImages::new(t, &current_bad);
        let mut iterates = vec![TaggedNfa::initial(a, &c)];
        let mut recorded = 0;
        let mut k = ell;
        let (hit, stable) = loop {
            while iterates.len() <= k + 1 {
                let next = step_tc(iterates.last().expect("non-empty"), t, &c)?;
                iterates.push(next);
            }
            while recorded <= k {
                let s = iterates[recorded].nfa();
                let hit = !intersect_empty(s, &current_bad)?;
                report.record(offset + recorded, s, hit, Some(round));
                recorded += 1;
            }
            let hit = !intersect_empty(iterates[k].nfa(), &current_bad)?;
            let stable = lang_equal(iterates[k + 1].nfa(), iterates[k].nfa())?;
            if hit || stable {
                break (hit, stable);
            }
            if k >= opts.max_steps || clock.expired() {
                report.refinement = Some(trace);
                report.depth = Some(offset + k);
                return Ok(report.finish(Outcome::BoundExceeded, &clock));
            }
            k += 1;
        };
        if stable && !hit {
            report.equality_step = Some(k + 1);
            report.depth = Some(offset + k + 1);
            let f = iterates.swap_remove(k + 1).into_nfa();
            report.final_size = Some(f.size());
            report.final_automaton = Some(f);
            report.refinement = Some(trace);
            return Ok(report.finish(Outcome::Safe, &clock));
        }
        report.bad_step.get_or_insert(offset + k);
        let back_k = back.get(k)?.clone();
        let base = trim(a);
        if !intersect_empty(&base, &back_k)? {
            let w = witness_word(&product(&base, &back_k)?).expect("non-empty intersection");
            report.set_witness(a, w);
            report.witness_depth = Some(offset + k);
            report.depth = Some(offset + k);
            report.refinement = Some(trace);
            return Ok(report.finish(Outcome::Unsafe, &clock));
        }
        let j = find_j_with(&iterates, t, &mut back, k)?;
        let raw = raw_image(&iterates[j - 1], t)?;
        let sim = raw.sim(&c);
        let equiv = compute_equiv(&raw.nfa, &sim, back.get(k - j)?)?;
        let (refined, splits) = refine(&c, &raw, &equiv)?;
        trace.rounds.push(RefinementRound {
            k,
            j,
            sim_classes: sim.num_classes(),
            equiv_classes: equiv.num_classes(),
            splits,
            classifier_states: refined.num_states(),
        });
        c = refined;
        current_bad = back_k;
        ell = j;
        offset += k;
        if clock.expired() {
            break;
        }
    }
    report.refinement = Some(trace);
    report.depth = Some(offset);
    Ok(report.finish(Outcome::BoundExceeded, &clock))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::includes;
    use crate::fixtures::token_ring;

    #[test]
    fn token_ring_one_state_is_safe_in_four() {
        let t = token_ring::t();
        let r = reach_cegar(
            &token_ring::a(),
            &token_ring::bad(),
            &t,
            &Classifier::one_state(&t),
            &CegarOptions::default(),
        )
        .unwrap();
        assert_eq!(r.outcome, Outcome::Safe);
        assert!(r.depth.unwrap() <= 4);
        let trace = r.refinement.as_ref().unwrap();
        assert_eq!(trace.rounds.len(), 1);
        assert_eq!(trace.rounds[0].splits.len(), 1);
        let f = r.final_automaton.unwrap();
        assert!(includes(&f, &apply(&t, &f).unwrap()).unwrap());
        assert!(intersect_empty(&f, &token_ring::bad()).unwrap());
    }

    #[test]
    fn bad_initial_word_is_unsafe_immediately() {
        let t = token_ring::t();
        let a = token_ring::a();
        let r = reach_cegar(&a, &a, &t, &Classifier::one_state(&t), &CegarOptions::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Unsafe);
        assert_eq!(r.witness.as_deref(), Some("b"));
        assert_eq!(r.witness_depth, Some(0));
    }

    #[test]
    fn single_candidate_index() {
        let t = token_ring::t();
        let c = Classifier::one_state(&t);
        assert_eq!(find_j(&token_ring::a(), &token_ring::bad(), &c, &t, 1).unwrap(), 1);
    }

    #[test]
    fn genuine_counterexample_has_no_index() {
        let t = token_ring::t();
        let a = token_ring::a();
        let c = Classifier::one_state(&t);
        assert_eq!(find_j(&a, &a, &c, &t, 1), Err(Error::NoSuchIndex { k: 1 }));
    }
}
