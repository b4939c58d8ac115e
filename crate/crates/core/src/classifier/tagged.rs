use std::collections::BTreeMap;

use super::Classifier;
use crate::automata::ops::merge_by_key;
use crate::automata::{apply_traced, trim, Nfa, StateId, Transducer};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Origin state in the initial automaton and classifier state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag {
    pub origin: StateId,
    pub cls: StateId,
}

/// An iterate of the classifier quotient: a trim automaton whose states
/// carry pairwise distinct tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedNfa {
    nfa: Nfa,
    tags: Vec<Tag>,
    origin_labels: Vec<String>,
}

impl TaggedNfa {
    /// `trim(a)` with every state tagged by itself and the classifier's
    /// initial state.
    pub fn initial(a: &Nfa, c: &Classifier) -> Self {
        let base = trim(a);
        let origin_labels = base.labels().to_vec();
        let tags = base
            .states()
            .map(|q| Tag {
                origin: q,
                cls: c.initial(),
            })
            .collect();
        Self::labelled(base, tags, origin_labels, c)
    }

    fn labelled(mut nfa: Nfa, tags: Vec<Tag>, origin_labels: Vec<String>, c: &Classifier) -> Self {
        for q in nfa.states() {
            let Tag { origin, cls } = tags[q];
            nfa.set_label(q, format!("{},{}", origin_labels[origin], c.label(cls)));
        }
        TaggedNfa {
            nfa,
            tags,
            origin_labels,
        }
    }

    /// Merges the states of `raw` carrying equal keys.
    fn merge(raw: &Nfa, keys: &[Tag], origin_labels: Vec<String>, c: &Classifier) -> Self {
        let (nfa, tags) = merge_by_key(raw, keys);
        Self::labelled(nfa, tags, origin_labels, c)
    }

    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn into_nfa(self) -> Nfa {
        self.nfa
    }

    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }

    pub fn tag(&self, q: StateId) -> Tag {
        self.tags[q]
    }

    pub fn state_by_tag(&self, tag: Tag) -> Option<StateId> {
        self.tags.iter().position(|&t| t == tag)
    }

    /// Labels of the trimmed initial automaton, indexed by origin.
    pub fn origin_labels(&self) -> &[String] {
        &self.origin_labels
    }
}

/// `T(S)` before merging: every state is a pair (state of `S`, transducer
/// state).
#[derive(Clone, Debug)]
pub struct RawImage {
    pub nfa: Nfa,
    /// Pair behind every state; the first component indexes `base`.
    pub origins: Vec<(StateId, StateId)>,
    /// Tags of the states of the automaton the image was taken of.
    pub base: Vec<Tag>,
}

impl RawImage {
    /// The tag each raw state would receive under `c`.
    pub fn tags(&self, c: &Classifier) -> Vec<Tag> {
        self.origins
            .iter()
            .map(|&(q, tau)| {
                let Tag { origin, cls } = self.base[q];
                Tag {
                    origin,
                    cls: c.step(cls, tau),
                }
            })
            .collect()
    }

    /// `∼_C` over the raw states.
    pub fn sim(&self, c: &Classifier) -> Partition {
        Partition::from_keys(&self.tags(c))
    }

    /// The raw state as `(origin, classifier state, transducer state)`.
    pub fn triple(&self, q: StateId) -> (StateId, StateId, StateId) {
        let (sq, tau) = self.origins[q];
        let tag = self.base[sq];
        (tag.origin, tag.cls, tau)
    }
}

fn check(s: &TaggedNfa, t: &Transducer, c: &Classifier) -> Result<()> {
    if c.num_letters() != t.num_states() {
        return Err(Error::Validation(format!(
            "classifier reads {} letters but the transducer has {} states",
            c.num_letters(),
            t.num_states()
        )));
    }
    if s.tags.iter().any(|tag| tag.cls >= c.num_states()) {
        return Err(Error::Validation("tag refers to an unknown classifier state".into()));
    }
    Ok(())
}

/// The trimmed image `T(S)` with its pair provenance.
pub fn raw_image(s: &TaggedNfa, t: &Transducer) -> Result<RawImage> {
    let (nfa, origins) = apply_traced(t, &s.nfa)?;
    Ok(RawImage {
        nfa,
        origins,
        base: s.tags.clone(),
    })
}

/// One application of `t` followed by merging equal tags. The tag of
/// `((origin, cls), τ)` is `(origin, cls · τ)`.
pub fn step_tc(s: &TaggedNfa, t: &Transducer, c: &Classifier) -> Result<TaggedNfa> {
    check(s, t, c)?;
    let raw = raw_image(s, t)?;
    Ok(TaggedNfa::merge(&raw.nfa, &raw.tags(c), s.origin_labels.clone(), c))
}

/// `k` incremental steps from the tagged `trim(a)`.
pub fn iterate_tc(a: &Nfa, t: &Transducer, c: &Classifier, k: usize) -> Result<TaggedNfa> {
    let mut s = TaggedNfa::initial(a, c);
    for _ in 0..k {
        s = step_tc(&s, t, c)?;
    }
    Ok(s)
}

/// Builds `T^k(a)` with the full word of transducer states behind every
/// state, then merges states with equal origin and equal `q_init · w`.
/// Exponential in `k`; fails once an intermediate image exceeds `budget`
/// states.
pub fn explicit_tkc(a: &Nfa, t: &Transducer, c: &Classifier, k: usize, budget: usize) -> Result<TaggedNfa> {
    let base = trim(a);
    let origin_labels = base.labels().to_vec();
    let mut current = base;
    let mut prov: Vec<(StateId, Vec<StateId>)> = current.states().map(|q| (q, Vec::new())).collect();
    for _ in 0..k {
        let (img, origins) = apply_traced(t, &current)?;
        if img.num_states() > budget {
            return Err(Error::StateBudgetExceeded { limit: budget });
        }
        prov = origins
            .iter()
            .map(|&(q, tau)| {
                let (p0, ref w) = prov[q];
                let mut w = w.clone();
                w.push(tau);
                (p0, w)
            })
            .collect();
        current = img;
    }
    let mut memo: BTreeMap<&[StateId], StateId> = BTreeMap::new();
    let keys: Vec<Tag> = prov
        .iter()
        .map(|(p0, w)| Tag {
            origin: *p0,
            cls: *memo.entry(w.as_slice()).or_insert_with(|| c.classify(w)),
        })
        .collect();
    Ok(TaggedNfa::merge(&current, &keys, origin_labels, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{ensure_identity, includes, isomorphic, lang_equal};
    use crate::fixtures::token_ring;
    use crate::test_support::{random_classifier, random_nfa, random_transducer};
    use proptest::prelude::*;
    use rand::{rngs::StdRng, SeedableRng};

    fn ring() -> (Nfa, Transducer, Classifier) {
        (token_ring::a(), token_ring::t(), token_ring::classifier())
    }

    #[test]
    fn first_step_matches_expected_quotient() {
        let (a, t, c) = ring();
        let s1 = iterate_tc(&a, &t, &c, 1).unwrap();
        assert!(isomorphic(s1.nfa(), &token_ring::step1()).unwrap());
        let mut labels: Vec<&str> = s1.nfa().labels().iter().map(String::as_str).collect();
        labels.sort();
        assert_eq!(labels, ["1,□", "1,○", "2,□"]);
    }

    #[test]
    fn second_step_merges_both_orders() {
        let (a, t, c) = ring();
        let s2 = iterate_tc(&a, &t, &c, 2).unwrap();
        assert!(isomorphic(s2.nfa(), &token_ring::step2()).unwrap());
        let mut labels: Vec<&str> = s2.nfa().labels().iter().map(String::as_str).collect();
        labels.sort();
        assert_eq!(labels, ["1,q_init", "1,▽", "2,q_init"]);

        // raw states 1,3,4 and 1,4,3 both exist and classify alike
        let img2 = crate::automata::apply(&t, &crate::automata::apply(&t, &a).unwrap()).unwrap();
        assert!(isomorphic(&img2, &token_ring::image2()).unwrap());
        assert!(img2.state_by_label("1,3,4").is_some() && img2.state_by_label("1,4,3").is_some());
        assert_eq!(c.classify(&[0, 1]), c.classify(&[1, 0]));
        let explicit = explicit_tkc(&a, &t, &c, 2, 1000).unwrap();
        let tri = explicit.state_by_tag(Tag { origin: 0, cls: 3 }).unwrap();
        assert_eq!(explicit.nfa().label(tri), "1,▽");
        assert!(isomorphic(explicit.nfa(), s2.nfa()).unwrap());
    }

    #[test]
    fn zero_steps_is_trimmed_input() {
        let (a, t, c) = ring();
        let s0 = iterate_tc(&a, &t, &c, 0).unwrap();
        assert!(isomorphic(s0.nfa(), &trim(&a)).unwrap());
        assert!(s0.tags().iter().all(|tag| tag.cls == c.initial()));
        assert_eq!(explicit_tkc(&a, &t, &c, 0, 10).unwrap(), s0);
    }

    #[test]
    fn one_state_classifier_merges_by_origin() {
        let (a, t, _) = ring();
        let c = Classifier::one_state(&t);
        for k in 0..5 {
            let s = iterate_tc(&a, &t, &c, k).unwrap();
            assert!(s.nfa().num_states() <= 2);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let (a, t, c) = ring();
        assert_eq!(
            explicit_tkc(&a, &t, &c, 3, 2),
            Err(Error::StateBudgetExceeded { limit: 2 })
        );
    }

    /// Trimming every level before merging can keep a merged path that the
    /// trimmed `k`-fold image does not have; the result is still an
    /// over-approximation of the explicit quotient.
    #[test]
    fn incremental_can_exceed_explicit_quotient() {
        let a = Nfa::from_names(&["a", "b"], &["0"], &[("0", "b", "0")], &["0"], &["0"]).unwrap();
        let t = Transducer::from_names(
            &["a", "b"],
            &["t0", "t1", "id"],
            &[
                ("t0", "b", "a", "t1"),
                ("t1", "a", "b", "t0"),
                ("id", "a", "a", "id"),
                ("id", "b", "b", "id"),
            ],
            &["t0", "id"],
            &["t0", "t1", "id"],
        )
        .unwrap();
        let c = Classifier::from_names(
            &t,
            &["c0", "c1", "c2"],
            &[
                ("c0", "t0", "c2"),
                ("c0", "t1", "c1"),
                ("c0", "id", "c2"),
                ("c1", "t0", "c2"),
                ("c1", "t1", "c0"),
                ("c1", "id", "c1"),
                ("c2", "t0", "c2"),
                ("c2", "t1", "c1"),
                ("c2", "id", "c0"),
            ],
            "c0",
        )
        .unwrap();
        let inc = iterate_tc(&a, &t, &c, 2).unwrap();
        let lit = explicit_tkc(&a, &t, &c, 2, 100).unwrap();
        assert!(includes(inc.nfa(), lit.nfa()).unwrap());
        assert!(inc.nfa().accepts_str("ab"));
        assert!(!lit.nfa().accepts_str("ab"));
        let exact = crate::automata::apply(&t, &crate::automata::apply(&t, &a).unwrap()).unwrap();
        assert!(!exact.accepts_str("ab"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn incremental_over_approximates_and_is_bounded(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_nfa(&mut rng, 3, 2, 0.3);
            let t = ensure_identity(&random_transducer(&mut rng, 2, 2, 0.3));
            let c = random_classifier(&mut rng, &t, 3);
            let mut exact = trim(&a);
            let mut s = TaggedNfa::initial(&a, &c);
            for _ in 1..=3 {
                s = step_tc(&s, &t, &c).unwrap();
                exact = crate::automata::apply(&t, &exact).unwrap();
                prop_assert!(includes(s.nfa(), &exact).unwrap());
                prop_assert!(s.nfa().num_states() <= trim(&a).num_states() * c.num_states());
                let mut tags = s.tags().to_vec();
                tags.sort();
                tags.dedup();
                prop_assert_eq!(tags.len(), s.tags().len());
            }
        }

        #[test]
        fn one_state_step_is_merge_by_origin(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_nfa(&mut rng, 3, 2, 0.3);
            let t = random_transducer(&mut rng, 3, 2, 0.3);
            let c = Classifier::one_state(&t);
            let s = TaggedNfa::initial(&a, &c);
            let next = step_tc(&s, &t, &c).unwrap();
            let (img, origins) = apply_traced(&t, s.nfa()).unwrap();
            let by_origin = Partition::from_keys(&origins.iter().map(|o| o.0).collect::<Vec<_>>());
            let expected = crate::automata::merge_classes(&img, &by_origin).unwrap();
            prop_assert!(lang_equal(next.nfa(), &expected).unwrap());
        }
    }
}
