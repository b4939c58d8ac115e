use std::collections::{BTreeMap, VecDeque};

use super::ops::{set_of, StateSet};
use super::{Alphabet, Nfa, StateId, Symbol};
use crate::error::{Error, Result};

pub const DEFAULT_MACROSTATE_CAP: usize = 1 << 16;

/// A deterministic complete automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<StateId>>,
    initial: StateId,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from its table. Panics if a row has the wrong width or a
    /// target is out of range.
    pub fn new(alphabet: Alphabet, delta: Vec<Vec<StateId>>, initial: StateId, finals: Vec<bool>) -> Self {
        let n = delta.len();
        assert!(initial < n && finals.len() == n);
        for row in &delta {
            assert_eq!(row.len(), alphabet.len());
            assert!(row.iter().all(|&q| q < n));
        }
        Dfa { alphabet, delta, initial, finals }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn step(&self, q: StateId, x: Symbol) -> StateId {
        self.delta[q][x]
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn run(&self, word: &[Symbol]) -> StateId {
        word.iter().fold(self.initial, |q, &x| self.delta[q][x])
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.finals[self.run(word)]
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            if self.finals[q] {
                return false;
            }
            for &r in &self.delta[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        true
    }

    /// Whether `L(self) ⊆ L(other)`, by exploring the pair automaton.
    pub fn included_in(&self, other: &Dfa) -> bool {
        assert_eq!(self.alphabet, other.alphabet);
        let mut seen = vec![vec![false; other.num_states()]; self.num_states()];
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        seen[self.initial][other.initial] = true;
        while let Some((p, q)) = queue.pop_front() {
            if self.finals[p] && !other.finals[q] {
                return false;
            }
            for x in self.alphabet.symbols() {
                let (p2, q2) = (self.delta[p][x], other.delta[q][x]);
                if !seen[p2][q2] {
                    seen[p2][q2] = true;
                    queue.push_back((p2, q2));
                }
            }
        }
        true
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut a = Nfa::new(self.alphabet.clone());
        for q in 0..self.num_states() {
            a.add_state(q.to_string());
        }
        for (q, row) in self.delta.iter().enumerate() {
            for (x, &r) in row.iter().enumerate() {
                a.add_transition(q, x, r);
            }
            if self.finals[q] {
                a.set_final(q);
            }
        }
        a.set_initial(self.initial);
        a
    }
}

pub fn determinize(a: &Nfa) -> Result<Dfa> {
    determinize_with_cap(a, DEFAULT_MACROSTATE_CAP)
}

/// Subset construction. The empty macrostate, when reached, is the sink.
pub fn determinize_with_cap(a: &Nfa, cap: usize) -> Result<Dfa> {
    let n = a.num_states();
    let delta = a.delta();
    let finals = set_of(n, a.finals());
    let mut ids: BTreeMap<StateSet, StateId> = BTreeMap::new();
    let mut sets: Vec<StateSet> = Vec::new();
    let mut table: Vec<Vec<StateId>> = Vec::new();
    let start = set_of(n, a.initials());
    ids.insert(start.clone(), 0);
    sets.push(start);
    let mut i = 0;
    while i < sets.len() {
        let mut row = Vec::with_capacity(a.alphabet().len());
        for x in a.alphabet().symbols() {
            let next = sets[i].post(&delta, x, n);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if sets.len() >= cap {
                        return Err(Error::StateBudgetExceeded { limit: cap });
                    }
                    ids.insert(next.clone(), sets.len());
                    sets.push(next);
                    sets.len() - 1
                }
            };
            row.push(id);
        }
        table.push(row);
        i += 1;
    }
    let fin = sets.iter().map(|s| s.intersects(&finals)).collect();
    Ok(Dfa::new(a.alphabet().clone(), table, 0, fin))
}
