use rand::Rng;

use crate::automata::{Alphabet, Nfa, Symbol, Transducer};
use crate::classifier::Classifier;

fn alphabet(nsym: usize) -> Alphabet {
    Alphabet::new((0..nsym).map(|i| char::from(b'a' + i as u8).to_string()))
}

/// Each possible transition is present with probability `density`; state 0
/// is initial and every state is final with probability one half.
pub fn random_nfa<R: Rng>(rng: &mut R, n: usize, nsym: usize, density: f64) -> Nfa {
    let mut a = Nfa::new(alphabet(nsym));
    for i in 0..n {
        a.add_state(i.to_string());
    }
    for p in 0..n {
        for x in 0..nsym {
            for q in 0..n {
                if rng.gen_bool(density) {
                    a.add_transition(p, x, q);
                }
            }
        }
        if rng.gen_bool(0.5) {
            a.set_final(p);
        }
    }
    if n > 0 {
        a.set_initial(0);
        if rng.gen_bool(0.3) {
            a.set_initial(rng.gen_range(0..n));
        }
    }
    a
}

pub fn random_transducer<R: Rng>(rng: &mut R, n: usize, nsym: usize, density: f64) -> Transducer {
    let mut t = Transducer::new(alphabet(nsym));
    for i in 0..n {
        t.add_state(format!("t{i}"));
    }
    for p in 0..n {
        for x in 0..nsym {
            for y in 0..nsym {
                for q in 0..n {
                    if rng.gen_bool(density / nsym as f64) {
                        t.add_transition(p, x, y, q);
                    }
                }
            }
        }
        if rng.gen_bool(0.5) {
            t.set_final(p);
        }
    }
    if n > 0 {
        t.set_initial(0);
    }
    t
}

pub fn random_classifier<R: Rng>(rng: &mut R, t: &Transducer, n: usize) -> Classifier {
    let letters = t.labels().to_vec();
    let labels = (0..n).map(|i| format!("c{i}")).collect();
    let delta = (0..n)
        .map(|_| (0..letters.len()).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    Classifier::new(letters, labels, delta, 0).expect("valid table")
}

/// All words of length `n` over `k` symbols, in lexicographic order.
pub fn all_words(k: usize, n: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = k.checked_pow(n as u32).expect("small enumeration");
    (0..total).map(move |mut i| {
        let mut w = vec![0; n];
        for slot in w.iter_mut().rev() {
            *slot = i % k;
            i /= k;
        }
        w
    })
}

/// Membership by depth-first search over runs.
pub fn accepts_by_paths(a: &Nfa, w: &[Symbol]) -> bool {
    fn go(a: &Nfa, q: usize, w: &[Symbol]) -> bool {
        match w.split_first() {
            None => a.is_final(q),
            Some((&x, rest)) => a.states().any(|r| a.has_transition(q, x, r) && go(a, r, rest)),
        }
    }
    a.initials().iter().any(|&q| go(a, q, w))
}
