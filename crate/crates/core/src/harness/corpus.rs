//! Protocol corpus: built-in entries and directories on disk.
//!
//! An entry is a directory holding `meta.toml` and, unless it is a
//! placeholder, `A.aut`, `T.tdc`, `B.aut` and optionally `C.cla`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::format::{parse_automaton, parse_classifier, parse_transducer};
use crate::automata::{Nfa, Transducer};
use crate::classifier::Classifier;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub name: String,
    #[serde(default)]
    pub description: String,
    /// `|Q|+|E|` of the initial automaton.
    pub size_i: usize,
    /// `|Q|+|E|` of the transducer.
    pub size_t: usize,
    /// The encoding is not shipped; only the metadata is.
    #[serde(default)]
    pub placeholder: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

/// Source texts of one protocol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub a: String,
    pub t: String,
    pub b: String,
    pub c: Option<String>,
}

/// A protocol whose texts have been parsed.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub a: Nfa,
    pub t: Transducer,
    pub b: Nfa,
    pub c: Option<Classifier>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    /// Directory name.
    pub id: String,
    pub meta: Meta,
    pub encoding: Option<Encoding>,
}

impl CorpusEntry {
    pub fn load(&self) -> Result<Option<Loaded>> {
        let Some(e) = &self.encoding else {
            return Ok(None);
        };
        let ctx = |file: &str| {
            let id = self.id.clone();
            let file = file.to_owned();
            move |err: Error| Error::Io(format!("{id}/{file}: {err}"))
        };
        let a = parse_automaton(&e.a).map_err(ctx("A.aut"))?;
        let t = parse_transducer(&e.t).map_err(ctx("T.tdc"))?;
        let b = parse_automaton(&e.b).map_err(ctx("B.aut"))?;
        let c = match &e.c {
            Some(text) => Some(parse_classifier(text, &t).map_err(ctx("C.cla"))?),
            None => None,
        };
        Ok(Some(Loaded { a, t, b, c }))
    }
}

fn parse_meta(id: &str, text: &str) -> Result<Meta> {
    toml::from_str(text).map_err(|e| Error::Io(format!("{id}/meta.toml: {e}")))
}

fn entry(id: &str, meta: &str, encoding: Option<Encoding>) -> CorpusEntry {
    CorpusEntry {
        id: id.to_owned(),
        meta: parse_meta(id, meta).expect("built-in metadata is valid"),
        encoding,
    }
}

macro_rules! shipped {
    ($dir:literal) => {
        Encoding {
            a: include_str!(concat!("../../corpus/", $dir, "/A.aut")).to_owned(),
            t: include_str!(concat!("../../corpus/", $dir, "/T.tdc")).to_owned(),
            b: include_str!(concat!("../../corpus/", $dir, "/B.aut")).to_owned(),
            c: None,
        }
    };
}

macro_rules! meta {
    ($dir:literal) => {
        include_str!(concat!("../../corpus/", $dir, "/meta.toml"))
    };
}

/// The corpus compiled into the library, in table order.
pub fn corpus_builtin() -> Vec<CorpusEntry> {
    let mut tr = shipped!("token_ring");
    tr.c = Some(include_str!("../../corpus/token_ring/C.cla").to_owned());
    vec![
        entry("token_ring", meta!("token_ring"), Some(tr)),
        entry("token_ring_mirror", meta!("token_ring_mirror"), Some(shipped!("token_ring_mirror"))),
        entry("token_ring_2", meta!("token_ring_2"), None),
        entry("dijkstra", meta!("dijkstra"), None),
        entry("bakery", meta!("bakery"), None),
        entry("burns", meta!("burns"), None),
    ]
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_optional(path: &Path) -> Result<Option<String>> {
    if path.exists() {
        read(path).map(Some)
    } else {
        Ok(None)
    }
}

/// Reads every subdirectory of `dir` that has a `meta.toml`, sorted by name.
///
/// A placeholder may be completed by adding the encoding files next to its
/// metadata; a non-placeholder entry must provide them.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let listing = fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut dirs: Vec<_> = listing
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.join("meta.toml").is_file())
        .collect();
    dirs.sort();
    let mut out = Vec::with_capacity(dirs.len());
    for d in dirs {
        let id = d.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let mut meta = parse_meta(&id, &read(&d.join("meta.toml"))?)?;
        let files = (
            read_optional(&d.join("A.aut"))?,
            read_optional(&d.join("T.tdc"))?,
            read_optional(&d.join("B.aut"))?,
        );
        let encoding = match files {
            (Some(a), Some(t), Some(b)) => {
                meta.placeholder = false;
                Some(Encoding {
                    a,
                    t,
                    b,
                    c: read_optional(&d.join("C.cla"))?,
                })
            }
            (None, None, None) if meta.placeholder => None,
            _ => {
                return Err(Error::Io(format!(
                    "{}: needs A.aut, T.tdc and B.aut",
                    d.display()
                )))
            }
        };
        out.push(CorpusEntry { id, meta, encoding });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::isomorphic;
    use crate::fixtures::token_ring;

    #[test]
    fn token_ring_entry() {
        let all = corpus_builtin();
        let tr = &all[0];
        assert_eq!((tr.meta.size_i, tr.meta.size_t), (4, 6));
        let l = tr.load().unwrap().unwrap();
        assert_eq!((l.a.size(), l.t.size()), (4, 6));
        assert!(isomorphic(&l.a, &token_ring::a()).unwrap());
        assert!(isomorphic(&l.b, &token_ring::bad()).unwrap());
        assert_eq!(l.c.unwrap(), token_ring::classifier());
        assert!(l.b.accepts_str("bb"));
        assert!(!l.b.accepts_str("ab"));
    }

    #[test]
    fn sizes_match_metadata() {
        for e in corpus_builtin() {
            if let Some(l) = e.load().unwrap() {
                assert_eq!((l.a.size(), l.t.size()), (e.meta.size_i, e.meta.size_t), "{}", e.id);
            }
        }
    }

    #[test]
    fn placeholders_carry_metadata_only() {
        let all = corpus_builtin();
        let sizes: Vec<(&str, usize, usize)> = all
            .iter()
            .filter(|e| e.meta.placeholder)
            .map(|e| (e.id.as_str(), e.meta.size_i, e.meta.size_t))
            .collect();
        assert_eq!(
            sizes,
            [("token_ring_2", 4, 9), ("dijkstra", 5, 62), ("bakery", 2, 24), ("burns", 2, 22)]
        );
        let dijkstra = all.iter().find(|e| e.id == "dijkstra").unwrap();
        assert!(dijkstra.encoding.is_none());
        assert!(dijkstra.meta.expected.as_deref().unwrap().contains("15 steps"));
    }

    #[test]
    fn directory_matches_builtin() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let mut from_disk = load_corpus_dir(&dir).unwrap();
        let mut builtin = corpus_builtin();
        from_disk.sort_by(|a, b| a.id.cmp(&b.id));
        builtin.sort_by(|a, b| a.id.cmp(&b.id));
        assert_eq!(from_disk, builtin);
    }
}
