use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Nfa, StateId};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// States reachable from `start` following `edges`.
pub(crate) fn reach(n: usize, start: impl IntoIterator<Item = StateId>, edges: &[Vec<(usize, StateId)>]) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue: VecDeque<StateId> = VecDeque::new();
    for q in start {
        if !seen[q] {
            seen[q] = true;
            queue.push_back(q);
        }
    }
    while let Some(p) = queue.pop_front() {
        for &(_, q) in &edges[p] {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    seen
}

/// States that are both accessible and co-accessible, in increasing order.
pub(crate) fn useful_states(a: &Nfa) -> Vec<StateId> {
    let n = a.num_states();
    let fwd = reach(n, a.initials().iter().copied(), &a.successors());
    let bwd = reach(n, a.finals().iter().copied(), &a.predecessors());
    (0..n).filter(|&q| fwd[q] && bwd[q]).collect()
}

/// Keeps `keep` (given in increasing order) and the transitions among them.
pub(crate) fn induced(a: &Nfa, keep: &[StateId]) -> (Nfa, Vec<Option<StateId>>) {
    let mut map = vec![None; a.num_states()];
    let mut out = Nfa::new(a.alphabet().clone());
    for &q in keep {
        map[q] = Some(out.add_state(a.label(q)));
    }
    for (p, x, q) in a.transitions() {
        if let (Some(p), Some(q)) = (map[p], map[q]) {
            out.add_transition(p, x, q);
        }
    }
    for &q in a.initials() {
        if let Some(q) = map[q] {
            out.set_initial(q);
        }
    }
    for &q in a.finals() {
        if let Some(q) = map[q] {
            out.set_final(q);
        }
    }
    (out, map)
}

/// Trims `a` and returns the old→new state map alongside.
pub fn trim_with_map(a: &Nfa) -> (Nfa, Vec<Option<StateId>>) {
    induced(a, &useful_states(a))
}

/// Removes every state that is not both accessible and co-accessible.
pub fn trim(a: &Nfa) -> Nfa {
    trim_with_map(a).0
}

/// Synchronous product. State `(p, q)` gets id `p * |Q_b| + q` and the label
/// `"lp,lq"`.
pub fn product(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.alphabet().ensure_same(b.alphabet())?;
    let nb = b.num_states();
    let mut out = Nfa::new(a.alphabet().clone());
    for p in a.states() {
        for q in b.states() {
            out.add_state(format!("{},{}", a.label(p), b.label(q)));
        }
    }
    let db = b.delta();
    for (p, x, p2) in a.transitions() {
        for q in b.states() {
            for &q2 in &db[q][x] {
                out.add_transition(p * nb + q, x, p2 * nb + q2);
            }
        }
    }
    for &p in a.initials() {
        for &q in b.initials() {
            out.set_initial(p * nb + q);
        }
    }
    for &p in a.finals() {
        for &q in b.finals() {
            out.set_final(p * nb + q);
        }
    }
    Ok(out)
}

/// Merges the classes of `p` without trimming. Class `i` becomes state `i`;
/// a multi-member class is labelled `{l1|l2|...}`.
pub fn merge_classes(a: &Nfa, p: &Partition) -> Result<Nfa> {
    if p.domain() != a.num_states() {
        return Err(Error::PartitionDomainMismatch {
            expected: a.num_states(),
            found: p.domain(),
        });
    }
    let mut out = Nfa::new(a.alphabet().clone());
    for members in p.classes() {
        let label = if members.len() == 1 {
            a.label(members[0]).to_owned()
        } else {
            let names: Vec<&str> = members.iter().map(|&q| a.label(q)).collect();
            format!("{{{}}}", names.join("|"))
        };
        out.add_state(label);
    }
    for (s, x, t) in a.transitions() {
        out.add_transition(p.class_of(s), x, p.class_of(t));
    }
    for &q in a.initials() {
        out.set_initial(p.class_of(q));
    }
    for &q in a.finals() {
        out.set_final(p.class_of(q));
    }
    Ok(out)
}

/// `A/∼` computed on the trimmed automaton. `p` ranges over the states of
/// `a`; it is restricted to the useful ones before merging.
pub fn quotient(a: &Nfa, p: &Partition) -> Result<Nfa> {
    if p.domain() != a.num_states() {
        return Err(Error::PartitionDomainMismatch {
            expected: a.num_states(),
            found: p.domain(),
        });
    }
    let keep = useful_states(a);
    let (trimmed, _) = induced(a, &keep);
    merge_classes(&trimmed, &p.restrict(&keep))
}

/// Groups states by a key and merges each group. Used where equal tags must
/// collapse into one state.
pub(crate) fn merge_by_key<K: Ord + Clone>(a: &Nfa, keys: &[K]) -> (Nfa, Vec<K>) {
    let p = Partition::from_keys(keys);
    let mut class_keys: BTreeMap<usize, K> = BTreeMap::new();
    for (q, k) in keys.iter().enumerate() {
        class_keys.entry(p.class_of(q)).or_insert_with(|| k.clone());
    }
    let merged = merge_classes(a, &p).expect("partition built over the same states");
    (merged, class_keys.into_values().collect())
}

/// Sets of states as bit vectors; used by the inclusion check and the
/// subset construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct StateSet(Vec<u64>);

impl StateSet {
    pub fn empty(n: usize) -> Self {
        StateSet(vec![0; n.div_ceil(64)])
    }

    pub fn from_iter(n: usize, it: impl IntoIterator<Item = StateId>) -> Self {
        let mut s = Self::empty(n);
        for q in it {
            s.insert(q);
        }
        s
    }

    pub fn insert(&mut self, q: StateId) {
        self.0[q / 64] |= 1 << (q % 64);
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }

    /// Successors under one symbol.
    pub fn post(&self, delta: &[Vec<Vec<StateId>>], x: usize, n: usize) -> StateSet {
        let mut out = StateSet::empty(n);
        for p in self.iter() {
            for &q in &delta[p][x] {
                out.insert(q);
            }
        }
        out
    }
}

pub(crate) fn set_of(n: usize, s: &BTreeSet<StateId>) -> StateSet {
    StateSet::from_iter(n, s.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{includes, isomorphic, lang_equal, Alphabet};
    use crate::fixtures::{chain, swap, token_ring};
    use crate::test_support::random_nfa;
    use proptest::prelude::*;
    use rand::{rngs::StdRng, SeedableRng};

    #[test]
    fn trim_drops_useless_states() {
        let a = Nfa::from_names(
            &["a"],
            &["0", "1", "2", "3"],
            &[("0", "a", "1"), ("0", "a", "2"), ("3", "a", "1")],
            &["0"],
            &["1"],
        )
        .unwrap();
        let (t, map) = trim_with_map(&a);
        assert_eq!(t.num_states(), 2);
        assert_eq!(map, vec![Some(0), Some(1), None, None]);
        assert_eq!(t.labels(), &["0".to_string(), "1".to_string()]);
    }

    #[test]
    fn trim_is_idempotent_on_fixture() {
        let t = trim(&chain::a());
        assert_eq!(trim(&t), t);
    }

    #[test]
    fn empty_language_trims_to_nothing() {
        let a = Nfa::from_names(&["a"], &["0"], &[("0", "a", "0")], &["0"], &[]).unwrap();
        assert_eq!(trim(&a).num_states(), 0);
    }

    #[test]
    fn product_with_universal_is_neutral() {
        let a = chain::a();
        let u = Nfa::universal(a.alphabet().clone());
        assert!(lang_equal(&product(&a, &u).unwrap(), &a).unwrap());
    }

    #[test]
    fn self_product_of_token_ring_start() {
        let a = token_ring::a();
        let p = product(&a, &a).unwrap();
        assert!(lang_equal(&p, &a).unwrap());
        assert_eq!(p.label(0), "1,1");
    }

    #[test]
    fn product_rejects_other_alphabets() {
        let a = Nfa::new(Alphabet::new(["a"]));
        let b = Nfa::new(Alphabet::new(["b"]));
        assert!(matches!(product(&a, &b), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn quotient_by_execution_classes() {
        let img = swap::image();
        let cls: Vec<Vec<usize>> = [["1,4", "2,4", "1,3"].as_slice(), ["2,3"].as_slice()]
            .iter()
            .map(|c| c.iter().map(|l| img.state_by_label(l).unwrap()).collect())
            .collect();
        let p = Partition::from_classes(img.num_states(), &cls).unwrap();
        assert!(isomorphic(&merge_classes(&img, &p).unwrap(), &swap::merged()).unwrap());
        // trimming first drops 2,4 and the edge from 2,3, not the language
        let q = quotient(&img, &p).unwrap();
        assert_eq!(q.num_states(), 2);
        assert!(lang_equal(&q, &swap::merged()).unwrap());
    }

    #[test]
    fn identity_quotient_is_trim() {
        let a = chain::a();
        let q = quotient(&a, &Partition::identity(a.num_states())).unwrap();
        assert!(isomorphic(&q, &trim(&a)).unwrap());
    }

    #[test]
    fn quotient_checks_domain() {
        let a = chain::a();
        assert!(matches!(
            quotient(&a, &Partition::identity(2)),
            Err(Error::PartitionDomainMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn quotient_over_approximates(seed in any::<u64>(), pairs in prop::collection::vec((0..8usize, 0..8usize), 0..6)) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_nfa(&mut rng, 8, 2, 0.2);
            let p = Partition::from_pairs(8, pairs);
            let q = quotient(&a, &p).unwrap();
            prop_assert!(includes(&q, &a).unwrap());
            prop_assert!(q.num_states() <= trim(&a).num_states());
        }

        #[test]
        fn trim_preserves_language(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_nfa(&mut rng, 8, 2, 0.15);
            let t = trim(&a);
            let da = crate::automata::determinize(&a).unwrap();
            let dt = crate::automata::determinize(&t).unwrap();
            prop_assert!(da.included_in(&dt) && dt.included_in(&da));
            prop_assert!(isomorphic(&trim(&t), &t).unwrap());
        }
    }
}
