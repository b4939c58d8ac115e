use std::collections::VecDeque;

use super::ops::{product, reach, set_of, StateSet};
use super::{Nfa, StateId, Word};
use crate::error::Result;

pub fn is_empty(a: &Nfa) -> bool {
    let seen = reach(a.num_states(), a.initials().iter().copied(), &a.successors());
    !a.finals().iter().any(|&q| seen[q])
}

/// Whether `L(a) ∩ L(b) = ∅`.
pub fn intersect_empty(a: &Nfa, b: &Nfa) -> Result<bool> {
    Ok(is_empty(&product(a, b)?))
}

/// A shortest accepted word, lexicographically least among the shortest.
pub fn witness_word(a: &Nfa) -> Option<Word> {
    let n = a.num_states();
    let mut dist = vec![usize::MAX; n];
    let mut queue: VecDeque<StateId> = VecDeque::new();
    for &q in a.finals() {
        dist[q] = 0;
        queue.push_back(q);
    }
    let pred = a.predecessors();
    while let Some(q) = queue.pop_front() {
        for &(_, p) in &pred[q] {
            if dist[p] == usize::MAX {
                dist[p] = dist[q] + 1;
                queue.push_back(p);
            }
        }
    }
    let len = a.initials().iter().map(|&q| dist[q]).min()?;
    if len == usize::MAX {
        return None;
    }
    let mut current: Vec<StateId> = a.initials().iter().copied().filter(|&q| dist[q] == len).collect();
    let delta = a.delta();
    let mut word = Vec::with_capacity(len);
    for remaining in (0..len).rev() {
        let (x, next) = a
            .alphabet()
            .symbols()
            .find_map(|x| {
                let mut next: Vec<StateId> = current
                    .iter()
                    .flat_map(|&p| delta[p][x].iter().copied())
                    .filter(|&q| dist[q] == remaining)
                    .collect();
                next.sort_unstable();
                next.dedup();
                (!next.is_empty()).then_some((x, next))
            })
            .expect("distance labelling guarantees a successor");
        word.push(x);
        current = next;
    }
    Some(word)
}

/// A shortest word of `L(sub) \ L(sup)`, or `None` if `L(sub) ⊆ L(sup)`.
///
/// Forward antichain search over pairs (state of `sub`, set of states of
/// `sup`). A pair is dropped when a pair with the same `sub` state and a
/// subset of its macrostate has already been seen; breadth-first order keeps
/// the witness shortest.
pub fn inclusion_witness(sup: &Nfa, sub: &Nfa) -> Result<Option<Word>> {
    sup.alphabet().ensure_same(sub.alphabet())?;
    let ns = sup.num_states();
    let sup_delta = sup.delta();
    let sub_delta = sub.delta();
    let sup_finals = set_of(ns, sup.finals());
    // Each node: (sub state, macrostate, parent node, symbol read).
    let mut nodes: Vec<(StateId, StateSet, usize, usize)> = Vec::new();
    let mut antichain: Vec<Vec<usize>> = vec![Vec::new(); sub.num_states()];
    let mut queue: VecDeque<usize> = VecDeque::new();

    let subsumed = |nodes: &Vec<(StateId, StateSet, usize, usize)>, chain: &[usize], s: &StateSet| {
        chain.iter().any(|&i| nodes[i].1.is_subset(s))
    };

    let start = set_of(ns, sup.initials());
    for &q in sub.initials() {
        if subsumed(&nodes, &antichain[q], &start) {
            continue;
        }
        nodes.push((q, start.clone(), usize::MAX, usize::MAX));
        antichain[q].push(nodes.len() - 1);
        queue.push_back(nodes.len() - 1);
    }
    while let Some(i) = queue.pop_front() {
        let (q, ref s, _, _) = nodes[i];
        if sub.is_final(q) && !s.intersects(&sup_finals) {
            let mut word = Vec::new();
            let mut j = i;
            while nodes[j].2 != usize::MAX {
                word.push(nodes[j].3);
                j = nodes[j].2;
            }
            word.reverse();
            return Ok(Some(word));
        }
        let s = s.clone();
        for x in sub.alphabet().symbols() {
            if sub_delta[q][x].is_empty() {
                continue;
            }
            let next = s.post(&sup_delta, x, ns);
            for &q2 in &sub_delta[q][x] {
                if subsumed(&nodes, &antichain[q2], &next) {
                    continue;
                }
                nodes.push((q2, next.clone(), i, x));
                antichain[q2].push(nodes.len() - 1);
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    Ok(None)
}

/// Whether `L(sub) ⊆ L(sup)`.
pub fn includes(sup: &Nfa, sub: &Nfa) -> Result<bool> {
    Ok(inclusion_witness(sup, sub)?.is_none())
}

/// A shortest word accepted by exactly one of the automata, if any.
pub fn language_difference(a: &Nfa, b: &Nfa) -> Result<Option<Word>> {
    let ab = inclusion_witness(b, a)?;
    let ba = inclusion_witness(a, b)?;
    Ok(match (ab, ba) {
        (Some(u), Some(v)) => Some(if v.len() < u.len() { v } else { u }),
        (u, v) => u.or(v),
    })
}

pub fn lang_equal(a: &Nfa, b: &Nfa) -> Result<bool> {
    Ok(includes(a, b)? && includes(b, a)?)
}
