//! Regular model checking with quotient-based over-approximations.
//!
//! Systems are word automata, transitions are letter-to-letter transducers.
//! Reachability of a bad set is decided (when possible) by iterating the
//! image operator and collapsing every iterate, either by syntactic state
//! equivalences ([`criteria`]) or by a classifier automaton over transducer
//! runs ([`classifier`]), optionally refined from spurious counterexamples
//! ([`cegar`]).

pub mod automata;
pub mod cegar;
pub mod classifier;
pub mod criteria;
pub mod error;
pub mod fixtures;
pub mod harness;
pub mod partition;
pub mod report;

#[cfg(test)]
pub(crate) mod test_support;

pub use automata::{Alphabet, Nfa, StateId, Symbol, Transducer, Word};
pub use cegar::{reach_cegar, CegarOptions};
pub use classifier::{fixpoint_t, Classifier, FixpointTOptions};
pub use criteria::{fixpoint, CriterionExpr, FixpointOptions, FixpointTest};
pub use error::{Error, Result};
pub use partition::Partition;
pub use report::{Outcome, Report};
