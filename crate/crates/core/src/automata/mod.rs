//! Finite automata over interned string symbols.
//!
//! States are dense integers `0..n`. Every state carries a provenance label
//! (its original name, or the pair/class history produced by products and
//! quotients). Transition, initial and final sets are ordered sets, so every
//! iteration over them happens in canonical `(state, symbol)` order and runs
//! are reproducible bit for bit.

mod dfa;
mod iso;
pub(crate) mod lang;
pub(crate) mod ops;
pub(crate) mod transducer;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use dfa::{determinize, determinize_with_cap, Dfa, DEFAULT_MACROSTATE_CAP};
pub use iso::{isomorphic, ISOMORPHISM_STATE_CAP};
pub use lang::{
    includes, inclusion_witness, intersect_empty, is_empty, lang_equal, language_difference,
    witness_word,
};
pub use ops::{merge_classes, product, quotient, trim, trim_with_map};
pub use transducer::{
    accessible_image, apply, apply_traced, contains_identity, ensure_identity, inverse, Transducer,
};

use crate::error::{Error, Result};

pub type StateId = usize;
/// Index of a symbol inside an [`Alphabet`].
pub type Symbol = usize;
pub type Word = Vec<Symbol>;

/// An ordered set of symbol names. Symbol ids follow the lexicographic order
/// of the names, so two alphabets with the same names agree on every id.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = symbols.into_iter().map(Into::into).collect();
        Alphabet(set.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, symbol: Symbol) -> &str {
        &self.0[symbol]
    }

    pub fn index_of(&self, name: &str) -> Option<Symbol> {
        self.0.binary_search_by(|s| s.as_str().cmp(name)).ok()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn symbols(&self) -> std::ops::Range<Symbol> {
        0..self.0.len()
    }

    /// Converts a word to symbol names.
    pub fn spell(&self, word: &[Symbol]) -> Vec<String> {
        word.iter().map(|&s| self.0[s].clone()).collect()
    }

    /// Renders a word: concatenated when all symbols are one character long,
    /// space separated otherwise.
    pub fn render(&self, word: &[Symbol]) -> String {
        if self.0.iter().all(|s| s.chars().count() == 1) {
            word.iter().map(|&s| self.0[s].as_str()).collect()
        } else {
            self.spell(word).join(" ")
        }
    }

    /// Parses a word written the way [`Alphabet::render`] writes it.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<String> = if text.contains(char::is_whitespace) {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| self.index_of(t).ok_or_else(|| Error::UnknownName(t.clone())))
            .collect()
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.0.to_vec(),
                right: other.0.to_vec(),
            })
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A nondeterministic finite automaton without epsilon transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    labels: Vec<String>,
    transitions: BTreeSet<(StateId, Symbol, StateId)>,
    initials: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
}

impl Nfa {
    /// An automaton with no states over `alphabet`.
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            labels: Vec::new(),
            transitions: BTreeSet::new(),
            initials: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    /// One initial and final state looping on every symbol.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut a = Nfa::new(alphabet);
        let q = a.add_state("*");
        for s in a.alphabet.symbols() {
            a.add_transition(q, s, q);
        }
        a.set_initial(q);
        a.set_final(q);
        a
    }

    /// Builds an automaton from state names. Handy for hand-entered automata.
    pub fn from_names(
        alphabet: &[&str],
        states: &[&str],
        transitions: &[(&str, &str, &str)],
        initials: &[&str],
        finals: &[&str],
    ) -> Result<Self> {
        let mut a = Nfa::new(Alphabet::new(alphabet.iter().copied()));
        for s in states {
            a.add_state(*s);
        }
        let state = |a: &Nfa, name: &str| {
            a.state_by_label(name)
                .ok_or_else(|| Error::UnknownName(name.to_owned()))
        };
        for &(p, x, q) in transitions {
            let p = state(&a, p)?;
            let q = state(&a, q)?;
            let x = a
                .alphabet
                .index_of(x)
                .ok_or_else(|| Error::UnknownName(x.to_owned()))?;
            a.add_transition(p, x, q);
        }
        for name in initials {
            let q = state(&a, name)?;
            a.set_initial(q);
        }
        for name in finals {
            let q = state(&a, name)?;
            a.set_final(q);
        }
        Ok(a)
    }

    pub fn add_state(&mut self, label: impl Into<String>) -> StateId {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    /// Adds a transition; returns false if it was already present.
    ///
    /// Panics if a state or the symbol is out of range.
    pub fn add_transition(&mut self, from: StateId, symbol: Symbol, to: StateId) -> bool {
        assert!(from < self.num_states() && to < self.num_states(), "state out of range");
        assert!(symbol < self.alphabet.len(), "symbol out of range");
        self.transitions.insert((from, symbol, to))
    }

    pub fn set_initial(&mut self, q: StateId) {
        assert!(q < self.num_states(), "state out of range");
        self.initials.insert(q);
    }

    pub fn set_final(&mut self, q: StateId) {
        assert!(q < self.num_states(), "state out of range");
        self.finals.insert(q);
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    /// `|Q| + |E|`.
    pub fn size(&self) -> usize {
        self.num_states() + self.num_transitions()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.num_states()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.transitions.iter().copied()
    }

    pub fn has_transition(&self, from: StateId, symbol: Symbol, to: StateId) -> bool {
        self.transitions.contains(&(from, symbol, to))
    }

    pub fn initials(&self) -> &BTreeSet<StateId> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_initial(&self, q: StateId) -> bool {
        self.initials.contains(&q)
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn label(&self, q: StateId) -> &str {
        &self.labels[q]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_label(&mut self, q: StateId, label: impl Into<String>) {
        self.labels[q] = label.into();
    }

    pub fn state_by_label(&self, label: &str) -> Option<StateId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Outgoing transitions grouped by source state, in canonical order.
    pub fn successors(&self) -> Vec<Vec<(Symbol, StateId)>> {
        let mut out = vec![Vec::new(); self.num_states()];
        for (p, x, q) in self.transitions() {
            out[p].push((x, q));
        }
        out
    }

    /// Incoming transitions grouped by target state.
    pub fn predecessors(&self) -> Vec<Vec<(Symbol, StateId)>> {
        let mut inc = vec![Vec::new(); self.num_states()];
        for (p, x, q) in self.transitions() {
            inc[q].push((x, p));
        }
        inc
    }

    /// `delta[state][symbol]` as a list of targets.
    pub(crate) fn delta(&self) -> Vec<Vec<Vec<StateId>>> {
        let mut d = vec![vec![Vec::new(); self.alphabet.len()]; self.num_states()];
        for (p, x, q) in self.transitions() {
            d[p][x].push(q);
        }
        d
    }

    /// The set of states reached from `from` by reading `symbol`.
    pub fn post(&self, from: &BTreeSet<StateId>, symbol: Symbol) -> BTreeSet<StateId> {
        from.iter()
            .flat_map(|&p| {
                self.transitions
                    .range((p, symbol, 0)..=(p, symbol, usize::MAX))
                    .map(|&(_, _, q)| q)
            })
            .collect()
    }

    /// Direct simulation.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut current = self.initials.clone();
        for &x in word {
            current = self.post(&current, x);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|q| self.finals.contains(q))
    }

    /// Simulation on a word given as text (see [`Alphabet::parse_word`]).
    /// Unknown symbols make the word rejected.
    pub fn accepts_str(&self, text: &str) -> bool {
        self.alphabet
            .parse_word(text)
            .map(|w| self.accepts(&w))
            .unwrap_or(false)
    }

    /// Renames states: state `q` becomes `perm[q]`.
    pub fn permute(&self, perm: &[StateId]) -> Nfa {
        assert_eq!(perm.len(), self.num_states());
        let mut labels = vec![String::new(); self.num_states()];
        for (q, &to) in perm.iter().enumerate() {
            labels[to] = self.labels[q].clone();
        }
        Nfa {
            alphabet: self.alphabet.clone(),
            labels,
            transitions: self
                .transitions()
                .map(|(p, x, q)| (perm[p], x, perm[q]))
                .collect(),
            initials: self.initials.iter().map(|&q| perm[q]).collect(),
            finals: self.finals.iter().map(|&q| perm[q]).collect(),
        }
    }

    /// Same automaton over a larger alphabet (symbol names must be kept).
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Nfa> {
        let mut out = Nfa::new(alphabet);
        for l in &self.labels {
            out.add_state(l.clone());
        }
        for (p, x, q) in self.transitions() {
            let name = self.alphabet.name(x);
            let y = out
                .alphabet
                .index_of(name)
                .ok_or_else(|| Error::UnknownName(name.to_owned()))?;
            out.add_transition(p, y, q);
        }
        out.initials = self.initials.clone();
        out.finals = self.finals.clone();
        Ok(out)
    }
}
