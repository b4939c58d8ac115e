//! Equivalence relations over the states of one automaton.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

/// An equivalence relation over `0..domain`.
///
/// Classes are numbered in order of their smallest member, so two equal
/// relations always have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    class_of: Vec<usize>,
    num_classes: usize,
}

impl Partition {
    pub fn identity(domain: usize) -> Self {
        Partition {
            class_of: (0..domain).collect(),
            num_classes: domain,
        }
    }

    /// Everything in one class.
    pub fn universal(domain: usize) -> Self {
        Partition {
            class_of: vec![0; domain],
            num_classes: usize::from(domain > 0),
        }
    }

    /// Smallest equivalence containing every pair.
    pub fn from_pairs(domain: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::<usize>::new(domain);
        for (x, y) in pairs {
            uf.union(x, y);
        }
        Self::normalize(uf.into_labeling())
    }

    /// Groups elements carrying equal keys.
    pub fn from_keys<K: Ord>(keys: &[K]) -> Self {
        let mut ids: BTreeMap<&K, usize> = BTreeMap::new();
        let raw: Vec<usize> = keys
            .iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            })
            .collect();
        Self::normalize(raw)
    }

    /// Builds a partition from explicit classes. Elements not listed become
    /// singletons; an element listed twice is an error.
    pub fn from_classes(domain: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut raw: Vec<Option<usize>> = vec![None; domain];
        for (c, members) in classes.iter().enumerate() {
            for &x in members {
                if x >= domain {
                    return Err(Error::PartitionDomainMismatch {
                        expected: domain,
                        found: x + 1,
                    });
                }
                if raw[x].replace(c).is_some() {
                    return Err(Error::Validation(format!("element {x} listed twice")));
                }
            }
        }
        let base = classes.len();
        Ok(Self::normalize(
            raw.into_iter()
                .enumerate()
                .map(|(x, c)| c.unwrap_or(base + x))
                .collect(),
        ))
    }

    fn normalize(raw: Vec<usize>) -> Self {
        let mut renum: BTreeMap<usize, usize> = BTreeMap::new();
        let class_of: Vec<usize> = raw
            .into_iter()
            .map(|r| {
                let next = renum.len();
                *renum.entry(r).or_insert(next)
            })
            .collect();
        Partition {
            num_classes: renum.len(),
            class_of,
        }
    }

    pub fn domain(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes == self.domain()
    }

    /// Classes as sorted member lists, in class-number order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    fn check_domain(&self, other: &Partition) -> Result<()> {
        if self.domain() == other.domain() {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.domain(),
                right: other.domain(),
            })
        }
    }

    /// Whether `self ⊆ other` as relations (every class of `self` lies inside
    /// one class of `other`).
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.check_domain(other)?;
        let mut image: Vec<Option<usize>> = vec![None; self.num_classes];
        for x in 0..self.domain() {
            let slot = &mut image[self.class_of[x]];
            match *slot {
                None => *slot = Some(other.class_of[x]),
                Some(c) if c != other.class_of[x] => return Ok(false),
                Some(_) => {}
            }
        }
        Ok(true)
    }

    /// Intersection of the two relations.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_domain(other)?;
        let keys: Vec<(usize, usize)> = (0..self.domain())
            .map(|x| (self.class_of[x], other.class_of[x]))
            .collect();
        Ok(Partition::from_keys(&keys))
    }

    /// Smallest equivalence containing both relations.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_domain(other)?;
        let mut uf = UnionFind::<usize>::new(self.domain());
        for p in [self, other] {
            let mut first: Vec<Option<usize>> = vec![None; p.num_classes];
            for x in 0..p.domain() {
                match first[p.class_of[x]] {
                    None => first[p.class_of[x]] = Some(x),
                    Some(r) => {
                        uf.union(r, x);
                    }
                }
            }
        }
        Ok(Self::normalize(uf.into_labeling()))
    }

    /// The induced relation on `keep` (re-indexed `0..keep.len()`).
    pub fn restrict(&self, keep: &[usize]) -> Partition {
        let keys: Vec<usize> = keep.iter().map(|&x| self.class_of[x]).collect();
        Partition::from_keys(&keys)
    }

    /// Splits class `class` into `members` and the rest.
    pub fn split_class(&self, class: usize, members: &[usize]) -> Partition {
        let mut keys: Vec<(usize, bool)> = self.class_of.iter().map(|&c| (c, false)).collect();
        for &x in members {
            debug_assert_eq!(self.class_of[x], class);
            keys[x].1 = true;
        }
        Partition::from_keys(&keys)
    }
}
