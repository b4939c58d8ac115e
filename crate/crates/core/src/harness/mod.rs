//! File formats, corpus, problem runner and results table.

pub mod corpus;
pub mod dot;
pub mod format;
pub mod problem;
pub mod table;

pub use corpus::{corpus_builtin, load_corpus_dir, CorpusEntry, Meta};
pub use dot::export_dot;
pub use format::{parse_automaton, parse_classifier, parse_transducer, print_automaton, print_classifier, print_transducer};
pub use problem::{run, Bounds, ClassifierSource, Engine, Input, ProblemSpec};
pub use table::{run_table, Cell, Row, Table, TableOptions};
