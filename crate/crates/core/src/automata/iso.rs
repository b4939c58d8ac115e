use std::collections::BTreeSet;

use super::{Nfa, StateId, Symbol};
use crate::error::{Error, Result};

pub const ISOMORPHISM_STATE_CAP: usize = 64;

type Signature = (bool, bool, Vec<usize>, Vec<usize>, BTreeSet<Symbol>);

fn signatures(a: &Nfa) -> Vec<Signature> {
    let k = a.alphabet().len();
    let mut sig: Vec<Signature> = a
        .states()
        .map(|q| (a.is_initial(q), a.is_final(q), vec![0; k], vec![0; k], BTreeSet::new()))
        .collect();
    for (p, x, q) in a.transitions() {
        sig[p].2[x] += 1;
        sig[q].3[x] += 1;
        if p == q {
            sig[p].4.insert(x);
        }
    }
    sig
}

/// Whether the automata are equal up to renaming of states. Labels are
/// ignored.
pub fn isomorphic(a: &Nfa, b: &Nfa) -> Result<bool> {
    let cap = ISOMORPHISM_STATE_CAP;
    if a.num_states() > cap || b.num_states() > cap {
        return Err(Error::StateBudgetExceeded { limit: cap });
    }
    if a.alphabet() != b.alphabet()
        || a.num_states() != b.num_states()
        || a.num_transitions() != b.num_transitions()
        || a.initials().len() != b.initials().len()
        || a.finals().len() != b.finals().len()
    {
        return Ok(false);
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return Ok(false);
    }
    let n = a.num_states();
    let mut map: Vec<Option<StateId>> = vec![None; n];
    let mut used = vec![false; n];
    Ok(extend(a, b, &sa, &sb, &mut map, &mut used, 0))
}

fn consistent(a: &Nfa, b: &Nfa, map: &[Option<StateId>], v: StateId, w: StateId) -> bool {
    let image = |q: StateId| if q == v { Some(w) } else { map[q] };
    for x in a.alphabet().symbols() {
        for u in a.states() {
            let Some(mu) = image(u) else { continue };
            if a.has_transition(v, x, u) != b.has_transition(w, x, mu)
                || a.has_transition(u, x, v) != b.has_transition(mu, x, w)
            {
                return false;
            }
        }
    }
    true
}

fn extend(
    a: &Nfa,
    b: &Nfa,
    sa: &[Signature],
    sb: &[Signature],
    map: &mut Vec<Option<StateId>>,
    used: &mut Vec<bool>,
    v: StateId,
) -> bool {
    if v == a.num_states() {
        return true;
    }
    for w in b.states() {
        if used[w] || sa[v] != sb[w] || !consistent(a, b, map, v, w) {
            continue;
        }
        map[v] = Some(w);
        used[w] = true;
        if extend(a, b, sa, sb, map, used, v + 1) {
            return true;
        }
        map[v] = None;
        used[w] = false;
    }
    false
}
