use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::split;
use crate::automata::{intersect_empty, merge_classes, product, witness_word, Nfa, StateId, Symbol};
use crate::classifier::{Classifier, RawImage};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// One application of the split operation during refinement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitRecord {
    pub p: String,
    pub q: String,
    pub alpha: String,
    pub beta: String,
    pub fresh: String,
}

/// An accepting run of `m` on `w`: the smallest initial state from which
/// `w` is accepted, then the smallest successor that still accepts the
/// remaining suffix.
fn accepting_path(m: &Nfa, w: &[Symbol]) -> Vec<StateId> {
    let n = w.len();
    let mut live: Vec<BTreeSet<StateId>> = vec![BTreeSet::new(); n + 1];
    live[n] = m.finals().clone();
    for i in (0..n).rev() {
        live[i] = m
            .transitions()
            .filter(|&(_, x, q)| x == w[i] && live[i + 1].contains(&q))
            .map(|(p, _, _)| p)
            .collect();
    }
    let mut path = vec![*m
        .initials()
        .iter()
        .find(|q| live[0].contains(q))
        .expect("word is accepted")];
    for i in 0..n {
        let here = path[i];
        let next = m
            .transitions()
            .find(|&(p, x, q)| p == here && x == w[i] && live[i + 1].contains(&q))
            .map(|(_, _, q)| q)
            .expect("live successor");
        path.push(next);
    }
    path
}

/// A coarse `≡ ⊆ simc` on the states of `x` such that merging by it keeps
/// the language disjoint from `bad`.
///
/// Starts from `simc`. While the merged automaton accepts a bad word, the
/// shortest such word is followed along an accepting run of the merged
/// automaton while tracking the raw states that really realise the prefix
/// inside each visited class. The first class where that set cannot
/// continue (or, at the end, contains no final state) is split into the
/// tracked states and the rest. Every round strictly refines `≡`.
pub fn compute_equiv(x: &Nfa, simc: &Partition, bad: &Nfa) -> Result<Partition> {
    if simc.domain() != x.num_states() {
        return Err(Error::PartitionDomainMismatch {
            expected: x.num_states(),
            found: simc.domain(),
        });
    }
    if !intersect_empty(x, bad)? {
        return Err(Error::PreconditionViolated(
            "the unmerged automaton already meets the bad language".into(),
        ));
    }
    let mut equiv = simc.clone();
    loop {
        let m = merge_classes(x, &equiv)?;
        let Some(w) = witness_word(&product(&m, bad)?) else {
            return Ok(equiv);
        };
        let path = accepting_path(&m, &w);
        let mut tracked: BTreeSet<StateId> = x
            .initials()
            .iter()
            .copied()
            .filter(|&q| equiv.class_of(q) == path[0])
            .collect();
        let mut cut = None;
        for (i, &sym) in w.iter().enumerate() {
            let next: BTreeSet<StateId> = x
                .post(&tracked, sym)
                .into_iter()
                .filter(|&q| equiv.class_of(q) == path[i + 1])
                .collect();
            if next.is_empty() {
                cut = Some((path[i], std::mem::take(&mut tracked)));
                break;
            }
            tracked = next;
        }
        let (class, members) = match cut {
            Some(c) => c,
            None => {
                debug_assert!(tracked.iter().all(|q| !x.is_final(*q)));
                (path[w.len()], tracked)
            }
        };
        let members: Vec<StateId> = members.into_iter().collect();
        equiv = equiv.split_class(class, &members);
    }
}

/// Splits `c` until `∼_C` on the states of `raw` is contained in `equiv`.
/// Among the offending pairs the smallest one in
/// `(origin, classifier state, transducer state)` order is handled first.
pub fn refine(c: &Classifier, raw: &RawImage, equiv: &Partition) -> Result<(Classifier, Vec<SplitRecord>)> {
    let n = raw.nfa.num_states();
    if equiv.domain() != n {
        return Err(Error::PartitionDomainMismatch {
            expected: n,
            found: equiv.domain(),
        });
    }
    if !equiv.refines(&raw.sim(c))? {
        return Err(Error::PreconditionViolated("≡ is not contained in ∼_C".into()));
    }
    let mut order: Vec<StateId> = (0..n).collect();
    order.sort_by_key(|&q| raw.triple(q));
    let budget = (10 * c.num_states()).max(n);
    let mut c = c.clone();
    let mut splits = Vec::new();
    loop {
        let sim = raw.sim(&c);
        if sim.refines(equiv)? {
            return Ok((c, splits));
        }
        if splits.len() >= budget {
            return Err(Error::RefinementDiverged { splits: splits.len() });
        }
        let (u, v) = order
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| order[i + 1..].iter().map(move |&v| (u, v)))
            .find(|&(u, v)| sim.same(u, v) && !equiv.same(u, v))
            .expect("some pair violates containment");
        let (_, q1, a1) = raw.triple(u);
        let (_, q2, a2) = raw.triple(v);
        let next = split(&c, q1, q2, a1, a2)?;
        let fresh = next.num_states() - 1;
        splits.push(SplitRecord {
            p: c.label(q1).to_owned(),
            q: c.label(q2).to_owned(),
            alpha: c.letters()[a1].clone(),
            beta: c.letters()[a2].clone(),
            fresh: next.label(fresh).to_owned(),
        });
        c = next;
    }
}
