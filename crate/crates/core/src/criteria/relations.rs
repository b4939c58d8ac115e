use std::collections::{BTreeSet, VecDeque};

use super::CriterionExpr;
use crate::automata::ops::useful_states;
use crate::automata::{Nfa, StateId, Symbol};
use crate::error::{Error, Result};
use crate::partition::Partition;

fn require_trim(a: &Nfa) -> Result<()> {
    let useful: BTreeSet<StateId> = useful_states(a).into_iter().collect();
    match a.states().find(|q| !useful.contains(q)) {
        Some(state) => Err(Error::NotTrim { state }),
        None => Ok(()),
    }
}

/// Pairs `{p, q}` reachable in the self-product from `start`, following
/// `edges` (grouped per state as `(symbol, state)`).
fn pair_closure(n: usize, start: &BTreeSet<StateId>, edges: &[Vec<(Symbol, StateId)>]) -> Partition {
    let mut seen = vec![vec![false; n]; n];
    let mut queue: VecDeque<(StateId, StateId)> = VecDeque::new();
    let mut pairs = Vec::new();
    for &p in start {
        for &q in start.range(p..) {
            seen[p][q] = true;
            queue.push_back((p, q));
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        pairs.push((p, q));
        for &(x, p2) in &edges[p] {
            for &(y, q2) in &edges[q] {
                if x != y {
                    continue;
                }
                let (lo, hi) = if p2 <= q2 { (p2, q2) } else { (q2, p2) };
                if !seen[lo][hi] {
                    seen[lo][hi] = true;
                    queue.push_back((lo, hi));
                }
            }
        }
    }
    Partition::from_pairs(n, pairs)
}

/// States reachable from the initial states by a common word.
pub fn rel_left(a: &Nfa) -> Result<Partition> {
    require_trim(a)?;
    Ok(pair_closure(a.num_states(), a.initials(), &a.successors()))
}

/// States from which a common word leads to final states.
pub fn rel_right(a: &Nfa) -> Result<Partition> {
    require_trim(a)?;
    Ok(pair_closure(a.num_states(), a.finals(), &a.predecessors()))
}

/// States with the same set of incoming symbols.
pub fn rel_in(a: &Nfa) -> Result<Partition> {
    require_trim(a)?;
    let mut sig = vec![BTreeSet::new(); a.num_states()];
    for (_, x, q) in a.transitions() {
        sig[q].insert(x);
    }
    Ok(Partition::from_keys(&sig))
}

/// States with the same set of outgoing symbols.
pub fn rel_out(a: &Nfa) -> Result<Partition> {
    require_trim(a)?;
    let mut sig = vec![BTreeSet::new(); a.num_states()];
    for (p, x, _) in a.transitions() {
        sig[p].insert(x);
    }
    Ok(Partition::from_keys(&sig))
}

/// Evaluates a criterion on a trim automaton.
pub fn eval(e: &CriterionExpr, a: &Nfa) -> Result<Partition> {
    match e {
        CriterionExpr::Left => rel_left(a),
        CriterionExpr::Right => rel_right(a),
        CriterionExpr::In => rel_in(a),
        CriterionExpr::Out => rel_out(a),
        CriterionExpr::Meet(l, r) => eval(l, a)?.meet(&eval(r, a)?),
        CriterionExpr::Join(l, r) => eval(l, a)?.join(&eval(r, a)?),
    }
}
