//! Small hand-entered automata used by examples and tests.

use crate::automata::{Nfa, Transducer};
use crate::classifier::Classifier;

const AB: &[&str] = &["a", "b"];

fn nfa(states: &[&str], edges: &[(&str, &str, &str)], init: &[&str], fin: &[&str]) -> Nfa {
    Nfa::from_names(AB, states, edges, init, fin).expect("fixture is well formed")
}

fn tdc(states: &[&str], edges: &[(&str, &str, &str, &str)], init: &[&str], fin: &[&str]) -> Transducer {
    Transducer::from_names(AB, states, edges, init, fin).expect("fixture is well formed")
}

/// A transducer exchanging `a` and `b` under a two-state control.
pub mod swap {
    use super::*;

    pub fn a1() -> Nfa {
        nfa(
            &["1", "2"],
            &[("1", "a", "2"), ("1", "a", "1"), ("1", "b", "1"), ("2", "b", "2")],
            &["1", "2"],
            &["2"],
        )
    }

    pub fn t() -> Transducer {
        tdc(
            &["4", "3"],
            &[("4", "a", "b", "3"), ("4", "b", "a", "4"), ("3", "b", "a", "4"), ("3", "a", "b", "3")],
            &["4"],
            &["3"],
        )
    }

    /// The accessible product for `t` and `a1`, untrimmed.
    pub fn image() -> Nfa {
        nfa(
            &["1,4", "2,4", "1,3", "2,3"],
            &[
                ("1,4", "b", "2,3"),
                ("1,4", "b", "1,3"),
                ("2,3", "a", "2,4"),
                ("1,3", "b", "2,3"),
                ("1,3", "a", "1,4"),
                ("1,4", "a", "1,4"),
                ("2,4", "a", "2,4"),
                ("1,3", "b", "1,3"),
            ],
            &["1,4", "2,4"],
            &["2,3"],
        )
    }

    /// `image` with everything except `2,3` merged.
    pub fn merged() -> Nfa {
        nfa(
            &["x", "2,3"],
            &[("x", "b", "2,3"), ("2,3", "a", "x"), ("x", "a", "x"), ("x", "b", "x")],
            &["x"],
            &["2,3"],
        )
    }
}

/// One token passed to the left neighbour.
pub mod token_ring {
    use super::*;

    /// `a*b`
    pub fn a() -> Nfa {
        nfa(&["1", "2"], &[("1", "a", "1"), ("1", "b", "2")], &["1"], &["2"])
    }

    pub fn t() -> Transducer {
        tdc(
            &["3", "4"],
            &[("3", "a", "a", "3"), ("3", "b", "b", "3"), ("3", "a", "b", "4"), ("4", "b", "a", "3")],
            &["3"],
            &["3"],
        )
    }

    /// At least two tokens.
    pub fn bad() -> Nfa {
        nfa(
            &["0", "1", "2"],
            &[
                ("0", "a", "0"),
                ("0", "b", "1"),
                ("1", "a", "1"),
                ("1", "b", "2"),
                ("2", "a", "2"),
                ("2", "b", "2"),
            ],
            &["0"],
            &["2"],
        )
    }

    /// `a*ba*`
    pub fn left_closure() -> Nfa {
        nfa(&["1", "2"], &[("1", "a", "1"), ("1", "b", "2"), ("2", "a", "2")], &["1"], &["2"])
    }

    /// Trimmed `T(A)`.
    pub fn image() -> Nfa {
        nfa(
            &["1,3", "1,4", "2,3"],
            &[("1,3", "a", "1,3"), ("1,3", "b", "1,4"), ("1,3", "b", "2,3"), ("1,4", "a", "2,3")],
            &["1,3"],
            &["2,3"],
        )
    }

    /// Trimmed `T(T(A))`.
    pub fn image2() -> Nfa {
        nfa(
            &["1,3,3", "2,3,3", "1,3,4", "1,4,3"],
            &[
                ("1,3,3", "a", "1,3,3"),
                ("1,3,3", "b", "1,3,4"),
                ("1,3,3", "b", "1,4,3"),
                ("1,3,3", "b", "2,3,3"),
                ("1,3,4", "a", "2,3,3"),
                ("1,3,4", "a", "1,4,3"),
                ("1,4,3", "a", "2,3,3"),
            ],
            &["1,3,3"],
            &["2,3,3"],
        )
    }

    /// Classifies transducer words by the position of the first moves.
    pub fn classifier() -> Classifier {
        Classifier::from_names(
            &t(),
            &["q_init", "○", "□", "▽"],
            &[
                ("q_init", "4", "○"),
                ("q_init", "3", "□"),
                ("□", "3", "q_init"),
                ("○", "3", "▽"),
                ("○", "4", "▽"),
                ("□", "4", "▽"),
                ("▽", "3", "▽"),
                ("▽", "4", "▽"),
            ],
            "q_init",
        )
        .expect("fixture is well formed")
    }

    /// `classifier` with the `□`-`4` edge moved to a fresh sink `r`.
    pub fn split_classifier() -> Classifier {
        Classifier::from_names(
            &t(),
            &["q_init", "○", "□", "▽", "r"],
            &[
                ("q_init", "4", "○"),
                ("q_init", "3", "□"),
                ("□", "3", "q_init"),
                ("○", "3", "▽"),
                ("○", "4", "▽"),
                ("□", "4", "r"),
                ("▽", "3", "▽"),
                ("▽", "4", "▽"),
                ("r", "3", "r"),
                ("r", "4", "r"),
            ],
            "q_init",
        )
        .expect("fixture is well formed")
    }

    /// One quotient step under `classifier`.
    pub fn step1() -> Nfa {
        nfa(
            &["1,□", "1,○", "2,□"],
            &[("1,□", "a", "1,□"), ("1,□", "b", "1,○"), ("1,□", "b", "2,□"), ("1,○", "a", "2,□")],
            &["1,□"],
            &["2,□"],
        )
    }

    /// Two quotient steps under `classifier`.
    pub fn step2() -> Nfa {
        nfa(
            &["1,q_init", "1,▽", "2,q_init"],
            &[
                ("1,q_init", "a", "1,q_init"),
                ("1,▽", "a", "1,▽"),
                ("1,q_init", "b", "1,▽"),
                ("1,q_init", "b", "2,q_init"),
                ("1,▽", "a", "2,q_init"),
            ],
            &["1,q_init"],
            &["2,q_init"],
        )
    }

    /// `ba*`, the initial words read right to left.
    pub fn mirror_a() -> Nfa {
        nfa(&["1", "2"], &[("1", "b", "2"), ("2", "a", "2")], &["1"], &["2"])
    }

    /// Rewrites one `ba` factor to `ab`.
    pub fn mirror_t() -> Transducer {
        tdc(
            &["3", "4"],
            &[("3", "a", "a", "3"), ("3", "b", "b", "3"), ("3", "b", "a", "4"), ("4", "a", "b", "3")],
            &["3"],
            &["3"],
        )
    }
}

/// A six-state automaton whose right-language collapse takes two rounds.
pub mod chain {
    use super::*;

    pub fn a() -> Nfa {
        nfa(
            &["1", "2", "3", "4", "5", "6"],
            &[
                ("1", "a", "2"),
                ("1", "a", "4"),
                ("2", "b", "3"),
                ("2", "b", "6"),
                ("4", "b", "5"),
                ("5", "b", "6"),
                ("6", "b", "3"),
            ],
            &["1"],
            &["3"],
        )
    }

    pub fn right1() -> Nfa {
        nfa(
            &["1", "3", "4", "256"],
            &[
                ("1", "a", "256"),
                ("1", "a", "4"),
                ("256", "b", "3"),
                ("256", "b", "256"),
                ("4", "b", "256"),
            ],
            &["1"],
            &["3"],
        )
    }

    pub fn right2() -> Nfa {
        nfa(
            &["1", "3", "2456"],
            &[("1", "a", "2456"), ("2456", "b", "3"), ("2456", "b", "2456")],
            &["1"],
            &["3"],
        )
    }
}
