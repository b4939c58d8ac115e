use crate::automata::StateId;
use crate::classifier::Classifier;
use crate::error::{Error, Result};

/// Redirects `(q, beta)` to a fresh copy of `p · alpha`.
///
/// The fresh state copies the outgoing transitions of `p · alpha` as they
/// were before the redirection, with its self-loops becoming self-loops of
/// the copy. Returns the new classifier; the fresh state is its last state.
pub fn split(c: &Classifier, p: StateId, q: StateId, alpha: StateId, beta: StateId) -> Result<Classifier> {
    let n = c.num_states();
    let k = c.num_letters();
    if p >= n || q >= n || alpha >= k || beta >= k {
        return Err(Error::PreconditionViolated("state or letter out of range".into()));
    }
    let target = c.step(p, alpha);
    if c.step(q, beta) != target {
        return Err(Error::PreconditionViolated(format!(
            "`{}`·{} and `{}`·{} lead to different states",
            c.label(p),
            c.letters()[alpha],
            c.label(q),
            c.letters()[beta]
        )));
    }
    if (q, beta) == (p, alpha) {
        return Err(Error::PreconditionViolated("cannot split a transition from itself".into()));
    }
    let fresh = n;
    let row: Vec<StateId> = (0..k)
        .map(|a| {
            let s = c.step(target, a);
            if s == target {
                fresh
            } else {
                s
            }
        })
        .collect();
    let label = if c.state_by_label("r").is_none() {
        "r".to_owned()
    } else {
        c.fresh_label("r")
    };
    let mut out = c.clone();
    out.add_state(label, row);
    out.set_step(q, beta, fresh);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::token_ring;
    use crate::test_support::{all_words, random_classifier, random_transducer};
    use proptest::prelude::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn split_of_position_classifier() {
        let c = token_ring::classifier();
        let circle = c.state_by_label("○").unwrap();
        let square = c.state_by_label("□").unwrap();
        let c2 = split(&c, circle, square, 0, 1).unwrap();
        assert_eq!(c2.num_states(), 5);
        let r = 4;
        assert_eq!(c2.label(r), "r");
        assert_eq!(c2.step(square, 1), r);
        assert_eq!((c2.step(r, 0), c2.step(r, 1)), (r, r));
        let tri = c.state_by_label("▽").unwrap();
        assert_eq!((c2.step(tri, 0), c2.step(tri, 1)), (tri, tri));
        assert!(c2.is_deterministic_complete());
        assert_eq!(c2, token_ring::split_classifier());
    }

    #[test]
    fn preconditions() {
        let c = token_ring::classifier();
        let circle = c.state_by_label("○").unwrap();
        let square = c.state_by_label("□").unwrap();
        assert!(matches!(split(&c, circle, square, 0, 0), Err(Error::PreconditionViolated(_))));
        assert!(matches!(split(&c, circle, circle, 0, 0), Err(Error::PreconditionViolated(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn split_keeps_other_routes(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let t = random_transducer(&mut rng, 3, 2, 0.3);
            let c = random_classifier(&mut rng, &t, 4);
            let candidates: Vec<(usize, usize, usize, usize)> = (0..c.num_states())
                .flat_map(|p| (0..3).map(move |a| (p, a)))
                .flat_map(|(p, a)| (0..c.num_states()).flat_map(move |q| (0..3).map(move |b| (p, a, q, b))))
                .filter(|&(p, a, q, b)| (p, a) != (q, b) && c.step(p, a) == c.step(q, b))
                .collect();
            prop_assume!(!candidates.is_empty());
            let (p, a, q, b) = candidates[rng.gen_range(0..candidates.len())];
            let c2 = split(&c, p, q, a, b).unwrap();
            prop_assert!(c2.is_deterministic_complete());
            prop_assert_eq!(c2.num_states(), c.num_states() + 1);
            for n in 0..=4 {
                for w in all_words(3, n) {
                    let mut s = c.initial();
                    let mut used = false;
                    for &x in &w {
                        used |= (s, x) == (q, b);
                        s = c.step(s, x);
                    }
                    if !used {
                        prop_assert_eq!(c2.classify(&w), c.classify(&w));
                    }
                }
            }
        }
    }
}
