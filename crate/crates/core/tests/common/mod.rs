#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::Rng;
use rmc_core::automata::{Alphabet, Nfa, Symbol, Transducer};
use rmc_core::Classifier;

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

/// Determinization oracle: whether `L(sub) ⊆ L(sup)`, by exploring pairs of
/// subsets reachable on the same word.
pub fn subset_includes(sup: &Nfa, sub: &Nfa) -> bool {
    type Macro = BTreeSet<usize>;
    let post = |a: &Nfa, s: &Macro, x: Symbol| -> Macro {
        a.transitions()
            .filter(|&(p, y, _)| y == x && s.contains(&p))
            .map(|(_, _, q)| q)
            .collect()
    };
    let accepting = |a: &Nfa, s: &Macro| s.iter().any(|&q| a.is_final(q));
    let start = (sub.initials().clone(), sup.initials().clone());
    let mut seen: HashSet<(Macro, Macro)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((s, p)) = queue.pop_front() {
        if accepting(sub, &s) && !accepting(sup, &p) {
            return false;
        }
        for x in sub.alphabet().symbols() {
            let next = (post(sub, &s, x), post(sup, &p, x));
            if !next.0.is_empty() && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    true
}

/// The automaton accepting exactly `w`.
pub fn word_automaton(alphabet: &Alphabet, w: &[Symbol]) -> Nfa {
    let mut a = Nfa::new(alphabet.clone());
    for i in 0..=w.len() {
        a.add_state(i.to_string());
    }
    for (i, &x) in w.iter().enumerate() {
        a.add_transition(i, x, i + 1);
    }
    a.set_initial(0);
    a.set_final(w.len());
    a
}
