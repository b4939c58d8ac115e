//! Outcome of a verification run.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::automata::{Nfa, Word};
use crate::cegar::RefinementTrace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Safe,
    Unsafe,
    Inconclusive,
    BoundExceeded,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Safe => 0,
            Outcome::Unsafe => 1,
            Outcome::Inconclusive => 2,
            Outcome::BoundExceeded => 3,
        }
    }
}

/// One iterate of an engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub step: usize,
    pub states: usize,
    pub size: usize,
    pub bad_intersection: bool,
    /// Refinement round (counterexample-guided engine only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub round: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub engine: String,
    pub outcome: Outcome,
    pub steps: Vec<StepRecord>,
    /// Step at which two consecutive iterates had equal languages.
    pub equality_step: Option<usize>,
    /// Step at which an iterate first met the bad language.
    pub bad_step: Option<usize>,
    pub final_size: Option<usize>,
    pub max_intermediate_size: usize,
    /// Shortest witness word, rendered over the system alphabet.
    pub witness: Option<String>,
    /// Number of transducer applications after which the witness of an
    /// `Unsafe` outcome reaches the original bad language.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_depth: Option<usize>,
    /// Cumulative step count across refinement rounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refinement: Option<RefinementTrace>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timings: Timings,
    #[serde(skip)]
    pub final_automaton: Option<Nfa>,
    #[serde(skip)]
    pub witness_word: Option<Word>,
}

impl Report {
    pub(crate) fn new(engine: &str) -> Self {
        Report {
            engine: engine.to_owned(),
            outcome: Outcome::BoundExceeded,
            steps: Vec::new(),
            equality_step: None,
            bad_step: None,
            final_size: None,
            max_intermediate_size: 0,
            witness: None,
            witness_depth: None,
            depth: None,
            refinement: None,
            notes: Vec::new(),
            timings: Timings::default(),
            final_automaton: None,
            witness_word: None,
        }
    }

    pub(crate) fn record(&mut self, step: usize, a: &Nfa, bad_intersection: bool, round: Option<usize>) {
        self.max_intermediate_size = self.max_intermediate_size.max(a.size());
        self.steps.push(StepRecord {
            step,
            states: a.num_states(),
            size: a.size(),
            bad_intersection,
            round,
        });
    }

    pub(crate) fn set_witness(&mut self, a: &Nfa, word: Word) {
        self.witness = Some(a.alphabet().render(&word));
        self.witness_word = Some(word);
    }

    pub(crate) fn finish(mut self, outcome: Outcome, clock: &Clock) -> Self {
        self.outcome = outcome;
        self.timings.total_ms = clock.elapsed().as_secs_f64() * 1000.0;
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    /// JSON rendering; the timing sub-object is the only nondeterministic
    /// part.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Wall-clock budget shared by the engines.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Clock {
    start: Instant,
    timeout: Option<Duration>,
}

impl Clock {
    pub fn start(timeout: Option<Duration>) -> Self {
        Clock {
            start: Instant::now(),
            timeout,
        }
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn expired(&self) -> bool {
        self.timeout.is_some_and(|t| self.start.elapsed() >= t)
    }
}
