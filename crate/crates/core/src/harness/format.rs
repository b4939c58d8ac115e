//! Line-oriented text format for automata, transducers and classifiers.
//!
//! ```text
//! # comment
//! automaton token_ring
//! alphabet: a b
//! states: 1 2
//! initial: 1
//! final: 2
//! transitions:
//! 1 a 1
//! 1 b 2
//! ```
//!
//! Transducer symbols are written `in/out`. A classifier uses the states of
//! its transducer as alphabet and must have an empty `final:` line. Tokens
//! containing blanks, `#` or `"` are written in double quotes with `\"` and
//! `\\` escapes.

use std::collections::{BTreeMap, BTreeSet};

use crate::automata::{Alphabet, Nfa, StateId, Transducer};
use crate::classifier::Classifier;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token {
    text: String,
    quoted: bool,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    let col = |byte: usize| line[..byte].chars().count() + 1;
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            break;
        } else if c == '"' {
            chars.next();
            let mut text = String::new();
            let mut closed = false;
            while let Some((_, c)) = chars.next() {
                match c {
                    '"' => {
                        closed = true;
                        break;
                    }
                    '\\' => match chars.next() {
                        Some((_, e @ ('"' | '\\'))) => text.push(e),
                        Some((j, e)) => return Err(err(lineno, col(j), format!("unknown escape `\\{e}`"))),
                        None => break,
                    },
                    c => text.push(c),
                }
            }
            if !closed {
                return Err(err(lineno, col(i), "unterminated quoted token"));
            }
            out.push(Token {
                text,
                quoted: true,
                column: col(i),
            });
        } else {
            let mut text = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() || c == '#' || c == '"' {
                    break;
                }
                text.push(c);
                chars.next();
            }
            out.push(Token {
                text,
                quoted: false,
                column: col(i),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Alphabet,
    States,
    Initial,
    Final,
    Transitions,
}

impl Key {
    fn parse(tok: &Token) -> Option<Key> {
        if tok.quoted {
            return None;
        }
        Some(match tok.text.as_str() {
            "alphabet:" => Key::Alphabet,
            "states:" => Key::States,
            "initial:" => Key::Initial,
            "final:" => Key::Final,
            "transitions:" => Key::Transitions,
            _ => return None,
        })
    }
}

/// The sections of a file before any interpretation of names.
#[derive(Debug, Default)]
struct Raw {
    name: String,
    sections: BTreeMap<Key, (usize, Vec<Token>)>,
    transitions: Vec<(usize, Vec<Token>)>,
}

impl Raw {
    fn section(&self, key: Key) -> Option<&(usize, Vec<Token>)> {
        self.sections.get(&key)
    }

    fn require(&self, key: Key, what: &str) -> Result<&(usize, Vec<Token>)> {
        self.section(key)
            .ok_or_else(|| err(1, 1, format!("missing `{what}:` line")))
    }
}

fn parse_raw(text: &str, headers: &[&str]) -> Result<Raw> {
    let mut raw = Raw::default();
    let mut header_seen = false;
    let mut in_transitions = false;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokenize(line, lineno)?;
        let Some(first) = toks.first() else {
            continue;
        };
        if !header_seen {
            if first.quoted || !headers.contains(&first.text.as_str()) {
                return Err(err(
                    lineno,
                    first.column,
                    format!("expected a `{}` header", headers.join("` or `")),
                ));
            }
            if toks.len() > 2 {
                return Err(err(lineno, toks[2].column, "header takes a single name"));
            }
            raw.name = toks.get(1).map(|t| t.text.clone()).unwrap_or_default();
            header_seen = true;
            continue;
        }
        if let Some(key) = Key::parse(first) {
            if raw.sections.contains_key(&key) {
                return Err(err(lineno, first.column, format!("duplicate `{}` line", first.text)));
            }
            if key == Key::Transitions && toks.len() > 1 {
                return Err(err(lineno, toks[1].column, "transitions start on the next line"));
            }
            in_transitions = key == Key::Transitions;
            raw.sections.insert(key, (lineno, toks[1..].to_vec()));
        } else if in_transitions {
            raw.transitions.push((lineno, toks));
        } else {
            return Err(err(lineno, first.column, format!("unexpected `{}`", first.text)));
        }
    }
    if !header_seen {
        return Err(err(1, 1, "empty input"));
    }
    Ok(raw)
}

fn alphabet(raw: &Raw) -> Result<(Alphabet, usize)> {
    let (line, toks) = raw.require(Key::Alphabet, "alphabet")?;
    let mut seen = BTreeSet::new();
    for t in toks {
        if !seen.insert(t.text.as_str()) {
            return Err(err(*line, t.column, format!("duplicate symbol `{}`", t.text)));
        }
    }
    Ok((Alphabet::new(toks.iter().map(|t| t.text.clone())), *line))
}

/// State names in declaration order, with their indices.
fn states(raw: &Raw) -> Result<(Vec<String>, BTreeMap<String, StateId>)> {
    let (line, toks) = raw.require(Key::States, "states")?;
    let mut index = BTreeMap::new();
    for (i, t) in toks.iter().enumerate() {
        if index.insert(t.text.clone(), i).is_some() {
            return Err(err(*line, t.column, format!("duplicate state `{}`", t.text)));
        }
    }
    Ok((toks.iter().map(|t| t.text.clone()).collect(), index))
}

fn lookup(index: &BTreeMap<String, StateId>, line: usize, tok: &Token) -> Result<StateId> {
    index
        .get(&tok.text)
        .copied()
        .ok_or_else(|| err(line, tok.column, format!("unknown state `{}`", tok.text)))
}

fn state_list(raw: &Raw, key: Key, index: &BTreeMap<String, StateId>) -> Result<Vec<StateId>> {
    match raw.section(key) {
        None => Ok(Vec::new()),
        Some((line, toks)) => toks.iter().map(|t| lookup(index, *line, t)).collect(),
    }
}

fn symbol(alpha: &Alphabet, line: usize, column: usize, name: &str) -> Result<usize> {
    alpha
        .index_of(name)
        .ok_or_else(|| err(line, column, format!("unknown symbol `{name}`")))
}

fn expect_arity(line: usize, toks: &[Token]) -> Result<()> {
    if toks.len() != 3 {
        let column = toks.get(3).or(toks.last()).map_or(1, |t| t.column);
        return Err(err(
            line,
            column,
            format!("a transition is `source symbol target`, found {} tokens", toks.len()),
        ));
    }
    Ok(())
}

pub fn parse_automaton(text: &str) -> Result<Nfa> {
    let raw = parse_raw(text, &["automaton"])?;
    let (alpha, _) = alphabet(&raw)?;
    let (names, index) = states(&raw)?;
    let mut a = Nfa::new(alpha.clone());
    for n in names {
        a.add_state(n);
    }
    for q in state_list(&raw, Key::Initial, &index)? {
        a.set_initial(q);
    }
    for q in state_list(&raw, Key::Final, &index)? {
        a.set_final(q);
    }
    for (line, toks) in &raw.transitions {
        expect_arity(*line, toks)?;
        let p = lookup(&index, *line, &toks[0])?;
        let x = symbol(&alpha, *line, toks[1].column, &toks[1].text)?;
        let q = lookup(&index, *line, &toks[2])?;
        a.add_transition(p, x, q);
    }
    Ok(a)
}

pub fn parse_transducer(text: &str) -> Result<Transducer> {
    let raw = parse_raw(text, &["transducer", "automaton"])?;
    let (alpha, line) = alphabet(&raw)?;
    if let Some(s) = alpha.names().iter().find(|s| s.contains('/')) {
        return Err(err(line, 1, format!("transducer symbol `{s}` contains `/`")));
    }
    let (names, index) = states(&raw)?;
    let mut t = Transducer::new(alpha.clone());
    for n in names {
        t.add_state(n);
    }
    for q in state_list(&raw, Key::Initial, &index)? {
        t.set_initial(q);
    }
    for q in state_list(&raw, Key::Final, &index)? {
        t.set_final(q);
    }
    for (line, toks) in &raw.transitions {
        expect_arity(*line, toks)?;
        let p = lookup(&index, *line, &toks[0])?;
        let tok = &toks[1];
        let Some((x, y)) = tok.text.split_once('/') else {
            return Err(err(*line, tok.column, format!("expected `in/out`, found `{}`", tok.text)));
        };
        let x = symbol(&alpha, *line, tok.column, x)?;
        let y = symbol(&alpha, *line, tok.column, y)?;
        let q = lookup(&index, *line, &toks[2])?;
        t.add_transition(p, x, y, q);
    }
    Ok(t)
}

/// Parses a classifier for `t`. The alphabet must list exactly the states
/// of `t`, in any order.
pub fn parse_classifier(text: &str, t: &Transducer) -> Result<Classifier> {
    let raw = parse_raw(text, &["classifier", "automaton"])?;
    let (alpha, line) = alphabet(&raw)?;
    let declared: BTreeSet<&str> = alpha.names().iter().map(String::as_str).collect();
    let expected: BTreeSet<&str> = t.labels().iter().map(String::as_str).collect();
    if declared != expected {
        return Err(Error::Validation(format!(
            "line {line}: classifier alphabet {:?} differs from the transducer states {:?}",
            alpha.names(),
            t.labels()
        )));
    }
    if let Some((line, toks)) = raw.section(Key::Final) {
        if let Some(tok) = toks.first() {
            return Err(err(*line, tok.column, "a classifier has no final states"));
        }
    }
    let (names, index) = states(&raw)?;
    let initial = state_list(&raw, Key::Initial, &index)?;
    if initial.len() != 1 {
        let line = raw.section(Key::Initial).map_or(1, |s| s.0);
        return Err(err(line, 1, format!("exactly one initial state expected, found {}", initial.len())));
    }
    let mut edges = Vec::new();
    for (line, toks) in &raw.transitions {
        expect_arity(*line, toks)?;
        lookup(&index, *line, &toks[0])?;
        lookup(&index, *line, &toks[2])?;
        if !declared.contains(toks[1].text.as_str()) {
            return Err(err(*line, toks[1].column, format!("unknown letter `{}`", toks[1].text)));
        }
        edges.push((toks[0].text.as_str(), toks[1].text.as_str(), toks[2].text.as_str()));
    }
    let states: Vec<&str> = names.iter().map(String::as_str).collect();
    Classifier::from_names(t, &states, &edges, &names[initial[0]])
}

fn quote(s: &str) -> String {
    let plain = !s.is_empty()
        && !s.chars().any(|c| c.is_whitespace() || c == '#' || c == '"' || c == '\\')
        && !s.ends_with(':');
    if plain {
        s.to_owned()
    } else {
        let mut out = String::from("\"");
        for c in s.chars() {
            if c == '"' || c == '\\' {
                out.push('\\');
            }
            out.push(c);
        }
        out.push('"');
        out
    }
}

/// Labels made unique by appending primes.
fn unique(labels: &[String]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    labels
        .iter()
        .map(|l| {
            let mut l = l.clone();
            while !seen.insert(l.clone()) {
                l.push('\'');
            }
            l
        })
        .collect()
}

fn line(key: &str, items: impl IntoIterator<Item = String>) -> String {
    let mut s = key.to_owned();
    for it in items {
        s.push(' ');
        s.push_str(&quote(&it));
    }
    s.push('\n');
    s
}

fn header(kind: &str, name: &str) -> String {
    if name.is_empty() {
        format!("{kind}\n")
    } else {
        format!("{kind} {}\n", quote(name))
    }
}

pub fn print_automaton(a: &Nfa, name: &str) -> String {
    let labels = unique(a.labels());
    let mut out = header("automaton", name);
    out += &line("alphabet:", a.alphabet().names().iter().cloned());
    out += &line("states:", labels.iter().cloned());
    out += &line("initial:", a.initials().iter().map(|&q| labels[q].clone()));
    out += &line("final:", a.finals().iter().map(|&q| labels[q].clone()));
    out += "transitions:\n";
    let mut edges: Vec<_> = a.transitions().collect();
    edges.sort();
    for (p, x, q) in edges {
        out += &format!(
            "{} {} {}\n",
            quote(&labels[p]),
            quote(a.alphabet().name(x)),
            quote(&labels[q])
        );
    }
    out
}

pub fn print_transducer(t: &Transducer, name: &str) -> String {
    let labels = unique(t.labels());
    let alpha = t.alphabet();
    let mut out = header("transducer", name);
    out += &line("alphabet:", alpha.names().iter().cloned());
    out += &line("states:", labels.iter().cloned());
    out += &line("initial:", t.initials().iter().map(|&q| labels[q].clone()));
    out += &line("final:", t.finals().iter().map(|&q| labels[q].clone()));
    out += "transitions:\n";
    let mut edges: Vec<_> = t.transitions().collect();
    edges.sort();
    for (p, x, y, q) in edges {
        let sym = format!("{}/{}", alpha.name(x), alpha.name(y));
        out += &format!("{} {} {}\n", quote(&labels[p]), quote(&sym), quote(&labels[q]));
    }
    out
}

pub fn print_classifier(c: &Classifier, name: &str) -> String {
    let labels = unique(c.labels());
    let mut out = header("classifier", name);
    out += &line("alphabet:", c.letters().iter().cloned());
    out += &line("states:", labels.iter().cloned());
    out += &line("initial:", [labels[c.initial()].clone()]);
    out += "final:\n";
    out += "transitions:\n";
    for (p, a, q) in c.transitions() {
        out += &format!(
            "{} {} {}\n",
            quote(&labels[p]),
            quote(&c.letters()[a]),
            quote(&labels[q])
        );
    }
    out
}
