//! Turning allowed-shading antichains into minimal forbidden shadings.
//!
//! A shading is forbidden when it is contained in no allowed shading, so the
//! minimal forbidden shadings are exactly the minimal hitting sets of the
//! allowed shadings' complements. Candidates implied by a forbidden shading
//! of a strictly shorter pattern are dropped afterwards, in pattern-length
//! order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::mesh::{mesh_implies, MeshPattern, Shading};
use crate::mine::{MinedTable, ShadingAntichain};
use crate::perm::Permutation;

/// The inclusion-minimal shadings not contained in any allowed shading. A
/// never-witnessed pattern (empty antichain) yields the empty shading, i.e.
/// the classical pattern is forbidden; a full allowed shading yields nothing.
pub fn minimal_forbidden(pattern_len: usize, allowed: &ShadingAntichain) -> Vec<Shading> {
    if allowed.is_empty() {
        return vec![Shading::empty(pattern_len)];
    }
    let complements: Vec<u64> = allowed.iter().map(|s| s.complement().bits()).collect();
    minimal_hitting_sets(&complements)
        .into_iter()
        .map(|bits| Shading::from_bits(pattern_len, bits))
        .collect()
}

/// All inclusion-minimal sets intersecting every member of `sets`, built by
/// extending the transversals of each prefix. Returns sorted masks; empty
/// when some member is empty.
fn minimal_hitting_sets(sets: &[u64]) -> Vec<u64> {
    if sets.iter().any(|&s| s == 0) {
        return Vec::new();
    }
    let mut transversals: Vec<u64> = vec![0];
    for &set in sets {
        let mut next = Vec::with_capacity(transversals.len());
        for &t in &transversals {
            if t & set != 0 {
                next.push(t);
            } else {
                let mut rest = set;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    next.push(t | bit);
                    rest ^= bit;
                }
            }
        }
        transversals = keep_minimal(next);
    }
    transversals
}

/// Sorts by (cardinality, mask) and drops every set containing a kept one.
fn keep_minimal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by_key(|&s| (s.count_ones(), s));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    'next: for s in sets {
        for &k in &kept {
            if k & s == k {
                continue 'next;
            }
        }
        kept.push(s);
    }
    kept
}

/// Removes each candidate shading that is a consequence of a forbidden
/// shading of a strictly shorter pattern. The map must hold the minimal
/// forbidden shadings per pattern; shorter patterns are finalized before
/// longer ones consult them.
pub fn eliminate_consequences(candidates: &mut BTreeMap<Permutation, Vec<Shading>>) {
    let mut finalized: Vec<MeshPattern> = Vec::new();
    let max_len = candidates.keys().map(|p| p.len()).max().unwrap_or(0);
    for len in 0..=max_len {
        let group: Vec<Permutation> = candidates
            .keys()
            .filter(|p| p.len() == len)
            .cloned()
            .collect();
        let surviving = filter_group(candidates, &group, &finalized);
        for (pattern, kept) in surviving {
            for &s in &kept {
                finalized.push(
                    MeshPattern::new(pattern.clone(), s).expect("table shadings match patterns"),
                );
            }
            candidates.insert(pattern, kept);
        }
    }
}

#[cfg(feature = "parallel")]
fn filter_group(
    candidates: &BTreeMap<Permutation, Vec<Shading>>,
    group: &[Permutation],
    finalized: &[MeshPattern],
) -> Vec<(Permutation, Vec<Shading>)> {
    use rayon::prelude::*;
    group
        .par_iter()
        .map(|pattern| {
            (
                pattern.clone(),
                retained(pattern, &candidates[pattern], finalized),
            )
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn filter_group(
    candidates: &BTreeMap<Permutation, Vec<Shading>>,
    group: &[Permutation],
    finalized: &[MeshPattern],
) -> Vec<(Permutation, Vec<Shading>)> {
    group
        .iter()
        .map(|pattern| {
            (
                pattern.clone(),
                retained(pattern, &candidates[pattern], finalized),
            )
        })
        .collect()
}

fn retained(
    pattern: &Permutation,
    shadings: &[Shading],
    finalized: &[MeshPattern],
) -> Vec<Shading> {
    shadings
        .iter()
        .filter(|&&s| {
            let candidate =
                MeshPattern::new(pattern.clone(), s).expect("table shadings match patterns");
            !finalized
                .iter()
                .any(|shorter| mesh_implies(shorter, &candidate))
        })
        .copied()
        .collect()
}

/// Per-pattern minimal forbidden shadings, consequence-eliminated; the
/// second half of the mining pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenTable {
    max_pattern_len: usize,
    source_max_len: usize,
    entries: BTreeMap<Permutation, Vec<Shading>>,
}

impl ForbiddenTable {
    /// Derives the forbidden table from a mined table: minimal forbidden
    /// shadings per pattern, then consequence elimination in length order.
    pub fn from_mined(mined: &MinedTable) -> ForbiddenTable {
        let mut candidates = compute_candidates(mined);
        eliminate_consequences(&mut candidates);
        ForbiddenTable {
            max_pattern_len: mined.max_pattern_len(),
            source_max_len: mined.source_max_len(),
            entries: candidates,
        }
    }

    pub fn max_pattern_len(&self) -> usize {
        self.max_pattern_len
    }

    pub fn source_max_len(&self) -> usize {
        self.source_max_len
    }

    pub fn forbidden(&self, pattern: &Permutation) -> Option<&[Shading]> {
        self.entries.get(pattern).map(|v| v.as_slice())
    }

    /// Entries in (length, lexicographic) pattern order.
    pub fn entries(&self) -> impl Iterator<Item = (&Permutation, &[Shading])> {
        self.entries.iter().map(|(p, v)| (p, v.as_slice()))
    }

    /// Serializes to the same document shape as the mined table, with
    /// `forbidden` in place of `shadings`.
    pub fn to_json(&self) -> String {
        let doc = ForbiddenDoc {
            m: self.max_pattern_len,
            entries: self
                .entries
                .iter()
                .map(|(p, shadings)| ForbiddenEntryDoc {
                    pattern: p.to_string(),
                    forbidden: shadings
                        .iter()
                        .map(|s| s.cells().iter().map(|c| (c.col, c.row)).collect())
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("table serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let doc: ForbiddenDoc =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for entry in doc.entries {
            let pattern: Permutation = entry.pattern.parse()?;
            let mut shadings = entry
                .forbidden
                .iter()
                .map(|cells| Shading::from_cells(pattern.len(), cells))
                .collect::<Result<Vec<_>, _>>()?;
            shadings.sort_unstable();
            entries.insert(pattern, shadings);
        }
        Ok(ForbiddenTable {
            max_pattern_len: doc.m,
            source_max_len: 0,
            entries,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ForbiddenDoc {
    m: usize,
    entries: Vec<ForbiddenEntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct ForbiddenEntryDoc {
    pattern: String,
    forbidden: Vec<Vec<(u8, u8)>>,
}

#[cfg(feature = "parallel")]
fn compute_candidates(mined: &MinedTable) -> BTreeMap<Permutation, Vec<Shading>> {
    use rayon::prelude::*;
    let entries: Vec<(&Permutation, &ShadingAntichain)> = mined.entries().collect();
    entries
        .par_iter()
        .map(|(pattern, allowed)| {
            (
                (*pattern).clone(),
                minimal_forbidden(pattern.len(), allowed),
            )
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn compute_candidates(mined: &MinedTable) -> BTreeMap<Permutation, Vec<Shading>> {
    mined
        .entries()
        .map(|(pattern, allowed)| (pattern.clone(), minimal_forbidden(pattern.len(), allowed)))
        .collect()
}
