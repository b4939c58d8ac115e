use std::collections::BTreeMap;
use std::fmt::Write;

use crate::automata::Nfa;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

/// Graphviz rendering. Nodes are `q0, q1, ...` labelled with the state
/// names; parallel edges share one arrow with a comma-separated label.
pub fn export_dot(a: &Nfa) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for q in a.states() {
        let shape = if a.is_final(q) { ", shape=doublecircle" } else { "" };
        let _ = writeln!(out, "  q{q} [label=\"{}\"{shape}];", escape(a.label(q)));
    }
    for &q in a.initials() {
        let _ = writeln!(out, "  start{q} [shape=point, label=\"\"];");
        let _ = writeln!(out, "  start{q} -> q{q};");
    }
    let mut edges: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (p, x, q) in a.transitions() {
        edges.entry((p, q)).or_default().push(x);
    }
    for ((p, q), mut syms) in edges {
        syms.sort_unstable();
        let label: Vec<&str> = syms.iter().map(|&x| a.alphabet().name(x)).collect();
        let _ = writeln!(out, "  q{p} -> q{q} [label=\"{}\"];", escape(&label.join(",")));
    }
    out.push_str("}\n");
    out
}
