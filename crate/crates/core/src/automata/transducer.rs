use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::ops::trim_with_map;
use super::{includes, Alphabet, Nfa, StateId, Symbol};
use crate::error::{Error, Result};

/// A letter-to-letter transducer over a base alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    alphabet: Alphabet,
    labels: Vec<String>,
    transitions: BTreeSet<(StateId, Symbol, Symbol, StateId)>,
    initials: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
}

impl Transducer {
    pub fn new(alphabet: Alphabet) -> Self {
        Transducer {
            alphabet,
            labels: Vec::new(),
            transitions: BTreeSet::new(),
            initials: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    /// One state relating every word to itself.
    pub fn identity(alphabet: Alphabet) -> Self {
        let mut t = Transducer::new(alphabet);
        t.add_identity_state("id");
        t
    }

    /// Builds a transducer from state names; transitions are
    /// `(source, input, output, target)`.
    pub fn from_names(
        alphabet: &[&str],
        states: &[&str],
        transitions: &[(&str, &str, &str, &str)],
        initials: &[&str],
        finals: &[&str],
    ) -> Result<Self> {
        let mut t = Transducer::new(Alphabet::new(alphabet.iter().copied()));
        for s in states {
            t.add_state(*s);
        }
        let state = |t: &Transducer, name: &str| {
            t.state_by_label(name)
                .ok_or_else(|| Error::UnknownTransducerState(name.to_owned()))
        };
        let symbol = |t: &Transducer, name: &str| {
            t.alphabet
                .index_of(name)
                .ok_or_else(|| Error::UnknownName(name.to_owned()))
        };
        for &(p, a, b, q) in transitions {
            let (p, q) = (state(&t, p)?, state(&t, q)?);
            let (a, b) = (symbol(&t, a)?, symbol(&t, b)?);
            t.add_transition(p, a, b, q);
        }
        for name in initials {
            let q = state(&t, name)?;
            t.set_initial(q);
        }
        for name in finals {
            let q = state(&t, name)?;
            t.set_final(q);
        }
        Ok(t)
    }

    pub fn add_state(&mut self, label: impl Into<String>) -> StateId {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    pub fn add_transition(&mut self, from: StateId, input: Symbol, output: Symbol, to: StateId) -> bool {
        assert!(from < self.num_states() && to < self.num_states(), "state out of range");
        assert!(input < self.alphabet.len() && output < self.alphabet.len(), "symbol out of range");
        self.transitions.insert((from, input, output, to))
    }

    pub fn set_initial(&mut self, q: StateId) {
        assert!(q < self.num_states(), "state out of range");
        self.initials.insert(q);
    }

    pub fn set_final(&mut self, q: StateId) {
        assert!(q < self.num_states(), "state out of range");
        self.finals.insert(q);
    }

    fn add_identity_state(&mut self, label: &str) -> StateId {
        let q = self.add_state(label);
        for a in self.alphabet.symbols() {
            self.add_transition(q, a, a, q);
        }
        self.set_initial(q);
        self.set_final(q);
        q
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

    pub fn size(&self) -> usize {
        self.num_states() + self.num_transitions()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.num_states()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, Symbol, StateId)> + '_ {
        self.transitions.iter().copied()
    }

    pub fn initials(&self) -> &BTreeSet<StateId> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
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

    /// The pair alphabet `{a/b}` in which [`Transducer::as_nfa`] is written.
    pub fn pair_alphabet(&self) -> Alphabet {
        let names = self.alphabet.names();
        Alphabet::new(
            names
                .iter()
                .flat_map(|a| names.iter().map(move |b| format!("{a}/{b}"))),
        )
    }

    /// The underlying automaton over pair symbols.
    pub fn as_nfa(&self) -> Nfa {
        let pairs = self.pair_alphabet();
        let mut a = Nfa::new(pairs.clone());
        for l in &self.labels {
            a.add_state(l.clone());
        }
        for (p, x, y, q) in self.transitions() {
            let name = format!("{}/{}", self.alphabet.name(x), self.alphabet.name(y));
            a.add_transition(p, pairs.index_of(&name).expect("pair symbol"), q);
        }
        for &q in &self.initials {
            a.set_initial(q);
        }
        for &q in &self.finals {
            a.set_final(q);
        }
        a
    }

    /// Whether `(u, v)` belongs to the relation.
    pub fn relates(&self, u: &[Symbol], v: &[Symbol]) -> bool {
        if u.len() != v.len() {
            return false;
        }
        let mut current = self.initials.clone();
        for (&a, &b) in u.iter().zip(v) {
            current = self
                .transitions
                .iter()
                .filter(|&&(p, x, y, _)| x == a && y == b && current.contains(&p))
                .map(|&(_, _, _, q)| q)
                .collect();
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|q| self.finals.contains(q))
    }

    /// `delta[state][input]` as `(output, target)` lists.
    pub(crate) fn delta(&self) -> Vec<Vec<Vec<(Symbol, StateId)>>> {
        let mut d = vec![vec![Vec::new(); self.alphabet.len()]; self.num_states()];
        for (p, a, b, q) in self.transitions() {
            d[p][a].push((b, q));
        }
        d
    }
}

/// The accessible part of the product construction for `T(A)`, before
/// trimming. States are numbered in lexicographic order of their origin
/// pairs and labelled `"la,lt"`.
pub fn accessible_image(t: &Transducer, a: &Nfa) -> Result<(Nfa, Vec<(StateId, StateId)>)> {
    t.alphabet().ensure_same(a.alphabet())?;
    let da = a.delta();
    let dt = t.delta();
    type Pair = (StateId, StateId);
    let mut edges: BTreeSet<(Pair, Symbol, Pair)> = BTreeSet::new();
    let mut seen: BTreeSet<(StateId, StateId)> = BTreeSet::new();
    let mut queue: VecDeque<(StateId, StateId)> = VecDeque::new();
    for &p in a.initials() {
        for &q in t.initials() {
            if seen.insert((p, q)) {
                queue.push_back((p, q));
            }
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        for x in a.alphabet().symbols() {
            for &p2 in &da[p][x] {
                for &(y, q2) in &dt[q][x] {
                    edges.insert(((p, q), y, (p2, q2)));
                    if seen.insert((p2, q2)) {
                        queue.push_back((p2, q2));
                    }
                }
            }
        }
    }
    let origins: Vec<(StateId, StateId)> = seen.into_iter().collect();
    let index: BTreeMap<(StateId, StateId), StateId> =
        origins.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut raw = Nfa::new(a.alphabet().clone());
    for &(p, q) in &origins {
        raw.add_state(format!("{},{}", a.label(p), t.label(q)));
    }
    for (s, y, d) in edges {
        raw.add_transition(index[&s], y, index[&d]);
    }
    for (i, &(p, q)) in origins.iter().enumerate() {
        if a.is_initial(p) && t.initials().contains(&q) {
            raw.set_initial(i);
        }
        if a.is_final(p) && t.finals().contains(&q) {
            raw.set_final(i);
        }
    }
    Ok((raw, origins))
}

/// `T(A)` together with the `(A-state, T-state)` origin of every state of the
/// trimmed result, in the order of [`accessible_image`].
pub fn apply_traced(t: &Transducer, a: &Nfa) -> Result<(Nfa, Vec<(StateId, StateId)>)> {
    let (raw, origins) = accessible_image(t, a)?;
    let (trimmed, map) = trim_with_map(&raw);
    let mut kept = vec![(0, 0); trimmed.num_states()];
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            kept[*new] = origins[old];
        }
    }
    Ok((trimmed, kept))
}

/// The image `T(A)`, trimmed.
pub fn apply(t: &Transducer, a: &Nfa) -> Result<Nfa> {
    Ok(apply_traced(t, a)?.0)
}

/// Swaps input and output on every transition.
pub fn inverse(t: &Transducer) -> Transducer {
    let mut out = t.clone();
    out.transitions = t.transitions().map(|(p, a, b, q)| (p, b, a, q)).collect();
    out
}

/// Whether some state that is both initial and final loops on `(a, a)` for
/// every symbol.
fn has_identity_component(t: &Transducer) -> bool {
    t.initials().iter().any(|&q| {
        t.finals().contains(&q)
            && t.alphabet()
                .symbols()
                .all(|a| t.transitions.contains(&(q, a, a, q)))
    })
}

/// Adds a fresh identity state unless one is already present.
pub fn ensure_identity(t: &Transducer) -> Transducer {
    if has_identity_component(t) {
        return t.clone();
    }
    let mut out = t.clone();
    let mut name = String::from("id");
    while out.state_by_label(&name).is_some() {
        name.push('\'');
    }
    out.add_identity_state(&name);
    out
}

/// Whether the relation contains the identity on all words.
pub fn contains_identity(t: &Transducer) -> bool {
    if has_identity_component(t) {
        return true;
    }
    let id = Transducer::identity(t.alphabet().clone()).as_nfa();
    includes(&t.as_nfa(), &id).expect("same pair alphabet")
}
