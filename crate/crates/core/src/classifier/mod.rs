//! Classifier automata and the approximation they induce on iterated images.

pub(crate) mod fixpoint;
mod tagged;

use std::collections::BTreeMap;

pub use fixpoint::{fixpoint_t, FixpointTOptions};
pub use tagged::{explicit_tkc, iterate_tc, raw_image, step_tc, RawImage, Tag, TaggedNfa};

use crate::automata::{StateId, Transducer};
use crate::error::{Error, Result};

/// A deterministic complete automaton reading transducer states. Its final
/// set is always empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classifier {
    letters: Vec<String>,
    labels: Vec<String>,
    delta: Vec<Vec<StateId>>,
    initial: StateId,
}

impl Classifier {
    /// Checks shape and ranges of a transition table.
    pub fn new(letters: Vec<String>, labels: Vec<String>, delta: Vec<Vec<StateId>>, initial: StateId) -> Result<Self> {
        let n = labels.len();
        if delta.len() != n {
            return Err(Error::Validation(format!("{} table rows for {n} states", delta.len())));
        }
        if initial >= n {
            return Err(Error::Validation("initial state out of range".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != letters.len() {
                return Err(Error::Validation(format!(
                    "state `{}` has {} successors, expected {}",
                    labels[q],
                    row.len(),
                    letters.len()
                )));
            }
            if row.iter().any(|&r| r >= n) {
                return Err(Error::Validation(format!("state `{}` has a target out of range", labels[q])));
            }
        }
        Ok(Classifier { letters, labels, delta, initial })
    }

    /// Builds a classifier from named transitions, rejecting missing and
    /// conflicting entries.
    pub fn from_names(t: &Transducer, states: &[&str], transitions: &[(&str, &str, &str)], initial: &str) -> Result<Self> {
        let labels: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let state = |name: &str| {
            labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::UnknownName(name.to_owned()))
        };
        let mut table: BTreeMap<(StateId, StateId), StateId> = BTreeMap::new();
        for &(p, letter, q) in transitions {
            let a = t
                .state_by_label(letter)
                .ok_or_else(|| Error::UnknownTransducerState(letter.to_owned()))?;
            let (p, q) = (state(p)?, state(q)?);
            if let Some(old) = table.insert((p, a), q) {
                if old != q {
                    return Err(Error::Validation(format!(
                        "nondeterministic: `{}` has two successors on `{letter}`",
                        labels[p]
                    )));
                }
            }
        }
        let mut delta = Vec::with_capacity(labels.len());
        for (p, label) in labels.iter().enumerate() {
            let mut row = Vec::with_capacity(t.num_states());
            for a in t.states() {
                match table.get(&(p, a)) {
                    Some(&q) => row.push(q),
                    None => {
                        return Err(Error::Validation(format!(
                            "incomplete: `{label}` has no successor on `{}`",
                            t.label(a)
                        )))
                    }
                }
            }
            delta.push(row);
        }
        let initial = state(initial)?;
        Classifier::new(t.labels().to_vec(), labels, delta, initial)
    }

    /// The single state `i` looping on every transducer state.
    pub fn one_state(t: &Transducer) -> Self {
        Classifier {
            letters: t.labels().to_vec(),
            labels: vec!["i".into()],
            delta: vec![vec![0; t.num_states()]],
            initial: 0,
        }
    }

    /// Remembers which of the transducer states `p` and `q` was visited last.
    pub fn mutual_exclusion(t: &Transducer, p: &str, q: &str) -> Result<Self> {
        let p = t
            .state_by_label(p)
            .ok_or_else(|| Error::UnknownTransducerState(p.to_owned()))?;
        let q = t
            .state_by_label(q)
            .ok_or_else(|| Error::UnknownTransducerState(q.to_owned()))?;
        if p == q {
            return Err(Error::PreconditionViolated("the two watched states must differ".into()));
        }
        // states: 0 = i, 1 = b_p, 2 = b_q
        let row = |own: StateId| -> Vec<StateId> {
            t.states()
                .map(|a| if a == p { 1 } else if a == q { 2 } else { own })
                .collect()
        };
        Ok(Classifier {
            letters: t.labels().to_vec(),
            labels: vec!["i".into(), format!("b_{}", t.label(p)), format!("b_{}", t.label(q))],
            delta: vec![row(0), row(1), row(2)],
            initial: 0,
        })
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    /// `|Q| + |E|`.
    pub fn size(&self) -> usize {
        self.num_states() * (1 + self.num_letters())
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn label(&self, q: StateId) -> &str {
        &self.labels[q]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn state_by_label(&self, label: &str) -> Option<StateId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn step(&self, q: StateId, letter: StateId) -> StateId {
        self.delta[q][letter]
    }

    /// `q_init · w`.
    pub fn classify(&self, word: &[StateId]) -> StateId {
        word.iter().fold(self.initial, |q, &a| self.delta[q][a])
    }

    /// All transitions in `(state, letter)` order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, StateId, StateId)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().enumerate().map(move |(a, &q)| (p, a, q)))
    }

    /// Whether the table is deterministic and complete over the letters.
    /// Holds by construction; exposed for audits.
    pub fn is_deterministic_complete(&self) -> bool {
        self.delta
            .iter()
            .all(|row| row.len() == self.letters.len() && row.iter().all(|&q| q < self.num_states()))
            && self.initial < self.num_states()
    }

    /// Rejects a classifier whose letters are not the states of `t`.
    pub fn check_compatible(&self, t: &Transducer) -> Result<()> {
        if self.letters == t.labels() {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "classifier reads {:?} but the transducer has states {:?}",
                self.letters,
                t.labels()
            )))
        }
    }

    pub(crate) fn add_state(&mut self, label: String, row: Vec<StateId>) -> StateId {
        self.labels.push(label);
        self.delta.push(row);
        self.labels.len() - 1
    }

    pub(crate) fn set_step(&mut self, q: StateId, letter: StateId, target: StateId) {
        self.delta[q][letter] = target;
    }

    pub(crate) fn fresh_label(&self, base: &str) -> String {
        let mut i = 1;
        loop {
            let name = format!("{base}{i}");
            if self.state_by_label(&name).is_none() {
                return name;
            }
            i += 1;
        }
    }
}
