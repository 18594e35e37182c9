//! Scanning a permutation set for allowed mesh patterns.
//!
//! For every subword of every input permutation we record the maximal shading
//! its occurrence admits, keeping per-pattern antichains of maximal shadings.
//! A pattern key with an empty antichain never occurred at all, which is
//! different from a key whose antichain holds the empty shading.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::mesh::{maximal_shading, Shading};
use crate::perm::{all_of_length, Permutation};

/// Largest pattern-length bound accepted by [`mine`]; keys are enumerated
/// eagerly per length, so the bound also limits table width.
pub const MAX_PATTERN_BOUND: usize = 6;

/// A set of shadings none of which contains another, kept sorted by
/// (cardinality, mask).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShadingAntichain {
    members: Vec<Shading>,
}

impl ShadingAntichain {
    pub fn new() -> Self {
        ShadingAntichain::default()
    }

    /// Inserts a shading: a no-op when a superset is already present,
    /// otherwise the shading replaces all of its subsets. Returns whether the
    /// antichain changed.
    pub fn insert(&mut self, shading: Shading) -> bool {
        if self.contains_superset_of(&shading) {
            return false;
        }
        self.members.retain(|t| !t.is_subset_of(&shading));
        match self.members.binary_search(&shading) {
            Ok(_) => unreachable!("superset check covers equality"),
            Err(pos) => self.members.insert(pos, shading),
        }
        true
    }

    pub fn contains_superset_of(&self, shading: &Shading) -> bool {
        self.members.iter().any(|t| shading.is_subset_of(t))
    }

    pub fn merge(&mut self, other: &ShadingAntichain) {
        for &s in &other.members {
            self.insert(s);
        }
    }

    /// Members sorted by (cardinality, mask).
    pub fn members(&self) -> &[Shading] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = &Shading> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Output of [`mine`]: for every classical pattern of length at most `m`, the
/// antichain of maximal shadings witnessed in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinedTable {
    max_pattern_len: usize,
    source_max_len: usize,
    entries: BTreeMap<Permutation, ShadingAntichain>,
}

impl MinedTable {
    /// Pattern-length bound the table was mined with.
    pub fn max_pattern_len(&self) -> usize {
        self.max_pattern_len
    }

    /// Longest input permutation seen while mining.
    pub fn source_max_len(&self) -> usize {
        self.source_max_len
    }

    pub fn allowed(&self, pattern: &Permutation) -> Option<&ShadingAntichain> {
        self.entries.get(pattern)
    }

    /// Entries in (length, lexicographic) pattern order.
    pub fn entries(&self) -> impl Iterator<Item = (&Permutation, &ShadingAntichain)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Builds a table from explicit per-pattern shading sets. Keys for every
    /// pattern of length at most `max_pattern_len` are filled in; listed
    /// shadings are antichain-reduced.
    pub fn from_allowed<I>(
        max_pattern_len: usize,
        source_max_len: usize,
        allowed: I,
    ) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Permutation, Vec<Shading>)>,
    {
        if max_pattern_len > MAX_PATTERN_BOUND {
            return Err(Error::PatternBoundTooLarge {
                bound: max_pattern_len,
                max: MAX_PATTERN_BOUND,
            });
        }
        let mut entries = all_pattern_keys(max_pattern_len);
        for (pattern, shadings) in allowed {
            let entry = entries
                .get_mut(&pattern)
                .ok_or_else(|| Error::PatternTooLong {
                    len: pattern.len(),
                    max: max_pattern_len,
                })?;
            for s in shadings {
                if s.pattern_len() != pattern.len() {
                    return Err(Error::ShadingMismatch {
                        pattern_len: pattern.len(),
                        shading_len: s.pattern_len(),
                    });
                }
                entry.insert(s);
            }
        }
        Ok(MinedTable {
            max_pattern_len,
            source_max_len,
            entries,
        })
    }

    /// Serializes to the table JSON document; entries in pattern order,
    /// shadings by (cardinality, mask), cells col-major.
    pub fn to_json(&self) -> String {
        let doc = TableDoc {
            m: self.max_pattern_len,
            entries: self
                .entries
                .iter()
                .map(|(p, sh)| EntryDoc {
                    pattern: p.to_string(),
                    shadings: sh.iter().map(shading_cells).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("table serialization cannot fail")
    }

    /// Parses the document produced by [`MinedTable::to_json`]. The source
    /// length is not part of the schema and comes back as 0.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let doc: TableDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut allowed = Vec::new();
        for entry in doc.entries {
            let pattern: Permutation = entry.pattern.parse()?;
            let shadings = entry
                .shadings
                .iter()
                .map(|cells| Shading::from_cells(pattern.len(), cells))
                .collect::<Result<Vec<_>, _>>()?;
            allowed.push((pattern, shadings));
        }
        MinedTable::from_allowed(doc.m, 0, allowed)
    }
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    m: usize,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    pattern: String,
    shadings: Vec<Vec<(u8, u8)>>,
}

fn shading_cells(s: &Shading) -> Vec<(u8, u8)> {
    s.cells().iter().map(|c| (c.col, c.row)).collect()
}

fn all_pattern_keys(max_len: usize) -> BTreeMap<Permutation, ShadingAntichain> {
    let mut entries = BTreeMap::new();
    for len in 0..=max_len {
        for p in all_of_length(len) {
            entries.insert(p, ShadingAntichain::new());
        }
    }
    entries
}

fn scan_host(table: &mut BTreeMap<Permutation, ShadingAntichain>, host: &Permutation, m: usize) {
    for (occ, word) in host.subwords_up_to(m) {
        let pattern = Permutation::flatten(&word).expect("subword letters are distinct");
        let shading = maximal_shading(host, &occ);
        table.entry(pattern).or_default().insert(shading);
    }
}

fn finish(
    input: &BTreeSet<Permutation>,
    m: usize,
    mined: BTreeMap<Permutation, ShadingAntichain>,
) -> MinedTable {
    let mut entries = all_pattern_keys(m);
    for (pattern, antichain) in mined {
        entries.insert(pattern, antichain);
    }
    MinedTable {
        max_pattern_len: m,
        source_max_len: input.iter().map(|p| p.len()).max().unwrap_or(0),
        entries,
    }
}

fn check_bound(m: usize) -> Result<(), Error> {
    if m > MAX_PATTERN_BOUND {
        return Err(Error::PatternBoundTooLarge {
            bound: m,
            max: MAX_PATTERN_BOUND,
        });
    }
    Ok(())
}

/// Records, for every classical pattern of length at most `m`, the maximal
/// shadings witnessed by subword occurrences in the input. The result is
/// independent of input and subword processing order.
#[cfg(feature = "parallel")]
pub fn mine(input: &BTreeSet<Permutation>, m: usize) -> Result<MinedTable, Error> {
    use rayon::prelude::*;

    check_bound(m)?;
    let hosts: Vec<&Permutation> = input.iter().collect();
    let mined = hosts
        .par_iter()
        .fold(BTreeMap::new, |mut table, host| {
            scan_host(&mut table, host, m);
            table
        })
        .reduce(BTreeMap::new, |mut left, right| {
            for (pattern, antichain) in right {
                left.entry(pattern)
                    .or_insert_with(ShadingAntichain::new)
                    .merge(&antichain);
            }
            left
        });
    Ok(finish(input, m, mined))
}

/// See the parallel [`mine`]; this build runs the sequential scan.
#[cfg(not(feature = "parallel"))]
pub fn mine(input: &BTreeSet<Permutation>, m: usize) -> Result<MinedTable, Error> {
    mine_sequential(input, m)
}

/// Single-threaded mining pass; the result equals [`mine`] on any input.
pub fn mine_sequential(input: &BTreeSet<Permutation>, m: usize) -> Result<MinedTable, Error> {
    check_bound(m)?;
    let mut mined = BTreeMap::new();
    for host in input {
        scan_host(&mut mined, host, m);
    }
    Ok(finish(input, m, mined))
}
