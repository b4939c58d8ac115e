use std::time::Duration;

use super::{step_tc, Classifier, TaggedNfa};
use crate::automata::{contains_identity, intersect_empty, lang_equal, product, witness_word, Nfa, Transducer};
use crate::error::{Error, Result};
use crate::report::{Clock, Outcome, Report};

#[derive(Clone, Debug)]
pub struct FixpointTOptions {
    pub max_steps: usize,
    /// Also stop as soon as any iterate meets the bad language.
    pub early_bad_check: bool,
    pub timeout: Option<Duration>,
}

impl Default for FixpointTOptions {
    fn default() -> Self {
        FixpointTOptions {
            max_steps: 20,
            early_bad_check: false,
            timeout: None,
        }
    }
}

pub(crate) fn require_identity(t: &Transducer) -> Result<()> {
    if contains_identity(t) {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(
            "the transducer relation must contain the identity".into(),
        ))
    }
}

/// Increments `k` until `T^{k+1}_C(A)` and `T^k_C(A)` have equal languages,
/// then tests the last iterate against `bad`.
pub fn fixpoint_t(a: &Nfa, t: &Transducer, bad: &Nfa, c: &Classifier, opts: &FixpointTOptions) -> Result<Report> {
    let clock = Clock::start(opts.timeout);
    a.alphabet().ensure_same(t.alphabet())?;
    a.alphabet().ensure_same(bad.alphabet())?;
    c.check_compatible(t)?;
    require_identity(t)?;
    let mut report = Report::new("fixpoint-t");
    let mut current = TaggedNfa::initial(a, c);
    let hit0 = !intersect_empty(current.nfa(), bad)?;
    report.record(0, current.nfa(), hit0, None);
    if opts.early_bad_check && hit0 {
        return inconclusive(report, current.into_nfa(), bad, 0, &clock);
    }
    for step in 1..=opts.max_steps {
        if clock.expired() {
            report.notes.push("timeout".into());
            return Ok(report.finish(Outcome::BoundExceeded, &clock));
        }
        let next = step_tc(&current, t, c)?;
        let hit = !intersect_empty(next.nfa(), bad)?;
        report.record(step, next.nfa(), hit, None);
        if opts.early_bad_check && hit {
            return inconclusive(report, next.into_nfa(), bad, step, &clock);
        }
        if lang_equal(next.nfa(), current.nfa())? {
            report.equality_step = Some(step);
            if hit {
                return inconclusive(report, next.into_nfa(), bad, step, &clock);
            }
            report.final_size = Some(next.nfa().size());
            report.final_automaton = Some(next.into_nfa());
            return Ok(report.finish(Outcome::Safe, &clock));
        }
        current = next;
    }
    Ok(report.finish(Outcome::BoundExceeded, &clock))
}

fn inconclusive(mut report: Report, f: Nfa, bad: &Nfa, step: usize, clock: &Clock) -> Result<Report> {
    let w = witness_word(&product(&f, bad)?).expect("non-empty intersection");
    report.bad_step = Some(step);
    report.set_witness(&f, w);
    report.final_size = Some(f.size());
    report.final_automaton = Some(f);
    Ok(report.finish(Outcome::Inconclusive, clock))
}
