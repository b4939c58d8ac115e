//! Over-approximation by syntactic merging criteria and the quotient-based
//! fixpoint engine.

mod expr;
mod relations;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use expr::CriterionExpr;
pub use relations::{eval, rel_in, rel_left, rel_out, rel_right};

use crate::automata::{
    apply, ensure_identity, includes, intersect_empty, lang_equal, product, quotient, trim,
    witness_word, Nfa, Transducer,
};
use crate::error::Result;
use crate::report::{Clock, Outcome, Report};

/// The successive automata of a collapse: element 0 is the trimmed input,
/// every further element one non-trivial quotient round. The last element is
/// the limit.
pub fn collapse_trace(e: &CriterionExpr, a: &Nfa) -> Result<Vec<Nfa>> {
    let mut rounds = vec![trim(a)];
    loop {
        let current = rounds.last().expect("non-empty");
        let p = eval(e, current)?;
        if p.is_identity() {
            return Ok(rounds);
        }
        let next = quotient(current, &p)?;
        rounds.push(next);
    }
}

/// Repeats quotienting by `e` until the relation becomes the identity.
pub fn collapse(e: &CriterionExpr, a: &Nfa) -> Result<Nfa> {
    Ok(collapse_trace(e, a)?.pop().expect("non-empty"))
}

/// Termination test between consecutive iterates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixpointTest {
    /// Language equality.
    #[default]
    Equal,
    /// Only `L(a_{k+1}) ⊆ L(a_k)`.
    Inclusion,
}

#[derive(Clone, Debug)]
pub struct FixpointOptions {
    pub max_steps: usize,
    pub test: FixpointTest,
    pub timeout: Option<Duration>,
}

impl Default for FixpointOptions {
    fn default() -> Self {
        FixpointOptions {
            max_steps: 20,
            test: FixpointTest::Equal,
            timeout: None,
        }
    }
}

/// Iterates `a_{k+1} = collapse(e, T(a_k))` from `a_0 = a`.
///
/// Each new iterate is first intersected with `bad` (non-empty gives
/// `Inconclusive`), then compared to its predecessor (a fixpoint gives
/// `Safe`). Step numbers count applications, so step 0 is the input.
pub fn fixpoint(a: &Nfa, t: &Transducer, bad: &Nfa, e: &CriterionExpr, opts: &FixpointOptions) -> Result<Report> {
    let clock = Clock::start(opts.timeout);
    a.alphabet().ensure_same(t.alphabet())?;
    a.alphabet().ensure_same(bad.alphabet())?;
    let t = ensure_identity(t);
    let mut report = Report::new("fixpoint");
    report.record(0, a, false, None);
    let mut current = a.clone();
    for step in 1..=opts.max_steps {
        if clock.expired() {
            report.notes.push("timeout".into());
            return Ok(report.finish(Outcome::BoundExceeded, &clock));
        }
        let next = collapse(e, &apply(&t, &current)?)?;
        let hit = !intersect_empty(&next, bad)?;
        report.record(step, &next, hit, None);
        if hit {
            let w = witness_word(&product(&next, bad)?).expect("non-empty intersection");
            report.bad_step = Some(step);
            report.set_witness(&next, w);
            report.final_size = Some(next.size());
            report.final_automaton = Some(next);
            return Ok(report.finish(Outcome::Inconclusive, &clock));
        }
        let stable = match opts.test {
            FixpointTest::Equal => lang_equal(&next, &current)?,
            FixpointTest::Inclusion => includes(&current, &next)?,
        };
        if stable {
            report.equality_step = Some(step);
            report.final_size = Some(next.size());
            report.final_automaton = Some(next);
            return Ok(report.finish(Outcome::Safe, &clock));
        }
        current = next;
    }
    Ok(report.finish(Outcome::BoundExceeded, &clock))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::isomorphic;
    use crate::fixtures::{chain, token_ring};
    use crate::test_support::{random_nfa, random_transducer};
    use proptest::prelude::*;
    use rand::{rngs::StdRng, SeedableRng};

    #[test]
    fn right_collapse_takes_two_rounds() {
        let rounds = collapse_trace(&CriterionExpr::Right, &chain::a()).unwrap();
        assert_eq!(rounds.len(), 3);
        assert!(isomorphic(&rounds[1], &chain::right1()).unwrap());
        assert!(isomorphic(&rounds[2], &chain::right2()).unwrap());
    }

    #[test]
    fn left_collapse_of_token_ring_image() {
        let img = apply(&token_ring::t(), &token_ring::a()).unwrap();
        let c = collapse(&CriterionExpr::Left, &img).unwrap();
        assert!(lang_equal(&c, &token_ring::left_closure()).unwrap());
    }

    #[test]
    fn collapse_of_single_state_is_stable() {
        let one = Nfa::universal(token_ring::a().alphabet().clone());
        let e = CriterionExpr::parse("(left+right).(in+out)").unwrap();
        assert_eq!(collapse(&e, &one).unwrap(), one);
    }

    #[test]
    fn token_ring_left_is_safe() {
        let r = fixpoint(
            &token_ring::a(),
            &token_ring::t(),
            &token_ring::bad(),
            &CriterionExpr::Left,
            &FixpointOptions::default(),
        )
        .unwrap();
        assert_eq!(r.outcome, Outcome::Safe);
        assert_eq!(r.equality_step, Some(2));
        let f = r.final_automaton.unwrap();
        assert!(lang_equal(&f, &token_ring::left_closure()).unwrap());
    }

    #[test]
    fn bad_initial_states_are_found_at_step_one() {
        let a = token_ring::a();
        let id = Transducer::identity(a.alphabet().clone());
        let r = fixpoint(&a, &id, &a, &CriterionExpr::In, &FixpointOptions::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Inconclusive);
        assert_eq!(r.bad_step, Some(1));
        assert_eq!(r.witness.as_deref(), Some("b"));
    }

    #[test]
    fn step_bound_is_reported() {
        let opts = FixpointOptions {
            max_steps: 1,
            ..Default::default()
        };
        let r = fixpoint(
            &token_ring::a(),
            &token_ring::t(),
            &token_ring::bad(),
            &CriterionExpr::In,
            &opts,
        )
        .unwrap();
        assert_eq!(r.outcome, Outcome::BoundExceeded);
        assert_eq!(r.steps.len(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn collapse_strictly_shrinks(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_nfa(&mut rng, 8, 2, 0.2);
            for e in ["left", "right", "in", "out", "left.right", "(left+right).(in+out)"] {
                let rounds = collapse_trace(&e.parse().unwrap(), &a).unwrap();
                prop_assert!(rounds.len() <= a.num_states() + 1);
                for w in rounds.windows(2) {
                    prop_assert!(w[1].num_states() < w[0].num_states());
                    prop_assert!(includes(&w[1], &w[0]).unwrap());
                }
            }
        }

        #[test]
        fn safe_results_are_inductive(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_nfa(&mut rng, 3, 2, 0.3);
            let t = ensure_identity(&random_transducer(&mut rng, 3, 2, 0.3));
            let bad = random_nfa(&mut rng, 3, 2, 0.3);
            let opts = FixpointOptions { max_steps: 8, ..Default::default() };
            for e in ["left", "right", "in.out"] {
                let e: CriterionExpr = e.parse().unwrap();
                let r = fixpoint(&a, &t, &bad, &e, &opts).unwrap();
                if r.outcome == Outcome::Safe {
                    let f = r.final_automaton.unwrap();
                    prop_assert!(includes(&f, &apply(&t, &f).unwrap()).unwrap());
                    prop_assert!(intersect_empty(&f, &bad).unwrap());
                    prop_assert!(includes(&f, &a).unwrap());
                }
            }
        }
    }
}
