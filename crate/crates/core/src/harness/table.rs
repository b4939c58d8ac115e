//! Results table over a corpus and a list of criteria.
//!
//! Each cell has three lines: the equality step (`Step k`, `No`, or
//! `T.o(Step N)` when the bound was hit), the first bad step (`Step m` or
//! `∅`), and the size of the last iterate.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::corpus::CorpusEntry;
use crate::criteria::{fixpoint, CriterionExpr, FixpointOptions, FixpointTest};
use crate::report::{Outcome, Report};

pub const NOT_AVAILABLE: &str = "n/a (encoding not shipped)";

/// Iterates may grow to this multiple of `I + T`.
pub const SIZE_FACTOR: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Cell {
    Result {
        outcome: Outcome,
        equality_step: Option<usize>,
        /// Last step computed when the bound was hit.
        timeout_step: Option<usize>,
        bad_step: Option<usize>,
        size: Option<usize>,
        max_intermediate_size: usize,
    },
    Error {
        message: String,
    },
    NotAvailable,
}

impl Cell {
    fn from_report(r: &Report) -> Cell {
        let last = r.steps.last();
        Cell::Result {
            outcome: r.outcome,
            equality_step: r.equality_step,
            timeout_step: (r.outcome == Outcome::BoundExceeded).then(|| last.map_or(0, |s| s.step)),
            bad_step: r.bad_step,
            size: r.final_size.or(last.map(|s| s.size)),
            max_intermediate_size: r.max_intermediate_size,
        }
    }

    /// The three display lines.
    pub fn lines(&self) -> [String; 3] {
        match self {
            Cell::Result {
                equality_step,
                timeout_step,
                bad_step,
                size,
                ..
            } => [
                match (equality_step, timeout_step) {
                    (Some(k), _) => format!("Step {k}"),
                    (None, Some(n)) => format!("T.o(Step {n})"),
                    (None, None) => "No".into(),
                },
                bad_step.map_or_else(|| "∅".into(), |m| format!("Step {m}")),
                size.map_or_else(String::new, |s| s.to_string()),
            ],
            Cell::Error { message } => [format!("error: {message}"), String::new(), String::new()],
            Cell::NotAvailable => [NOT_AVAILABLE.into(), String::new(), String::new()],
        }
    }

    pub fn is_safe(&self) -> bool {
        matches!(self, Cell::Result { outcome: Outcome::Safe, .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub id: String,
    pub name: String,
    pub size_i: usize,
    pub size_t: usize,
    pub cells: Vec<Cell>,
    /// Whether every recorded iterate stayed within `SIZE_FACTOR · (I + T)`.
    pub within_size_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub criteria: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub max_steps: usize,
    pub test: FixpointTest,
    pub timeout: Option<std::time::Duration>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            max_steps: 10,
            test: FixpointTest::Equal,
            timeout: None,
        }
    }
}

/// Runs the quotient engine for every entry and criterion. Failures are
/// reported in their cell and do not stop the run.
pub fn run_table(entries: &[CorpusEntry], criteria: &[String], opts: &TableOptions) -> Table {
    let parsed: Vec<Result<CriterionExpr, String>> = criteria
        .iter()
        .map(|c| CriterionExpr::parse(c).map_err(|e| e.to_string()))
        .collect();
    let fp = FixpointOptions {
        max_steps: opts.max_steps,
        test: opts.test,
        timeout: opts.timeout,
    };
    let rows = entries
        .iter()
        .map(|entry| {
            let mut row = Row {
                id: entry.id.clone(),
                name: entry.meta.name.clone(),
                size_i: entry.meta.size_i,
                size_t: entry.meta.size_t,
                cells: Vec::with_capacity(criteria.len()),
                within_size_bound: true,
            };
            let loaded = match entry.load() {
                Ok(Some(l)) => l,
                Ok(None) => {
                    row.cells = vec![Cell::NotAvailable; criteria.len()];
                    return row;
                }
                Err(e) => {
                    row.cells = vec![Cell::Error { message: e.to_string() }; criteria.len()];
                    return row;
                }
            };
            row.size_i = loaded.a.size();
            row.size_t = loaded.t.size();
            let bound = SIZE_FACTOR * (row.size_i + row.size_t);
            for e in &parsed {
                let cell = match e {
                    Err(message) => Cell::Error { message: message.clone() },
                    Ok(e) => match fixpoint(&loaded.a, &loaded.t, &loaded.b, e, &fp) {
                        Ok(r) => {
                            row.within_size_bound &= r.max_intermediate_size <= bound;
                            Cell::from_report(&r)
                        }
                        Err(err) => Cell::Error { message: err.to_string() },
                    },
                };
                row.cells.push(cell);
            }
            row
        })
        .collect();
    Table {
        criteria: criteria.to_vec(),
        rows,
    }
}

impl Table {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// Plain-text grid; safe cells are marked with `*`.
    pub fn render(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut head = vec![String::new()];
        head.extend(self.criteria.iter().cloned());
        grid.push(head);
        let mut row_starts = Vec::new();
        for row in &self.rows {
            row_starts.push(grid.len());
            let mut lines: [Vec<String>; 3] = [
                vec![row.name.clone()],
                vec![format!("size I : {}", row.size_i)],
                vec![format!("size T : {}", row.size_t)],
            ];
            for cell in &row.cells {
                let mut ls = cell.lines();
                if cell.is_safe() {
                    ls[0].push('*');
                }
                for (dst, src) in lines.iter_mut().zip(ls) {
                    dst.push(src);
                }
            }
            grid.extend(lines);
        }
        let ncols = self.criteria.len() + 1;
        let widths: Vec<usize> = (0..ncols)
            .map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let rule = {
            let mut s = String::from("+");
            for w in &widths {
                s.push_str(&"-".repeat(w + 2));
                s.push('+');
            }
            s.push('\n');
            s
        };
        let mut out = rule.clone();
        for (i, r) in grid.iter().enumerate() {
            if row_starts.contains(&i) {
                out.push_str(&rule);
            }
            out.push('|');
            for (cell, w) in r.iter().zip(&widths) {
                let pad = w - cell.chars().count();
                let _ = write!(out, " {cell}{} |", " ".repeat(pad));
            }
            out.push('\n');
        }
        out.push_str(&rule);
        out
    }
}
