//! The end-to-end pipeline: mine a permutation set, generate the forbidden
//! patterns, list avoiders, verify a conjectured description, and prune
//! redundant patterns.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::forbid::ForbiddenTable;
use crate::mesh::MeshPattern;
use crate::mine::mine;
use crate::perm::{factorial, nth_of_length, select_of_length_sequential, Permutation};

/// Default bound on the avoider-listing horizon; listing length n scans all
/// n! permutations.
pub const DEFAULT_LENGTH_CAP: usize = 10;

/// An ordered list of forbidden mesh patterns with the run metadata needed to
/// interpret it: the pattern-length bound, the longest input permutation, and
/// whether the list was pruned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    patterns: Vec<MeshPattern>,
    max_pattern_len: usize,
    source_max_len: usize,
    pruned: bool,
}

impl Basis {
    /// Flattens a forbidden table into the pattern list, ordered by
    /// (length, pattern, shading).
    pub fn from_forbidden(table: &ForbiddenTable) -> Basis {
        let mut patterns = Vec::new();
        for (pattern, shadings) in table.entries() {
            for &s in shadings {
                patterns.push(
                    MeshPattern::new(pattern.clone(), s).expect("table shadings match patterns"),
                );
            }
        }
        Basis {
            patterns,
            max_pattern_len: table.max_pattern_len(),
            source_max_len: table.source_max_len(),
            pruned: false,
        }
    }

    /// Wraps an explicit pattern list, deduplicated and sorted.
    pub fn from_patterns(mut patterns: Vec<MeshPattern>) -> Basis {
        patterns.sort();
        patterns.dedup();
        let max_pattern_len = patterns.iter().map(|p| p.pattern().len()).max().unwrap_or(0);
        Basis {
            patterns,
            max_pattern_len,
            source_max_len: 0,
            pruned: false,
        }
    }

    pub fn patterns(&self) -> &[MeshPattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn max_pattern_len(&self) -> usize {
        self.max_pattern_len
    }

    pub fn source_max_len(&self) -> usize {
        self.source_max_len
    }

    pub fn pruned(&self) -> bool {
        self.pruned
    }

    /// One pattern per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.patterns {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses one pattern per line; blank lines and `#` comments are
    /// ignored. Metadata is not part of the text form.
    pub fn from_text(text: &str) -> Result<Basis, Error> {
        let mut patterns = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let p: MeshPattern = line.parse().map_err(|e: Error| Error::ParseLine {
                line: idx + 1,
                message: e.to_string(),
            })?;
            patterns.push(p);
        }
        Ok(Basis::from_patterns(patterns))
    }

    pub fn to_json(&self) -> String {
        let doc = BasisDoc {
            m: self.max_pattern_len,
            n: self.source_max_len,
            pruned: self.pruned,
            patterns: self
                .patterns
                .iter()
                .map(|p| PatternDoc {
                    pattern: p.pattern().to_string(),
                    shading: p.shading().cells().iter().map(|c| (c.col, c.row)).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("basis serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Basis, Error> {
        let doc: BasisDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut patterns = Vec::new();
        for p in doc.patterns {
            let pattern: Permutation = p.pattern.parse()?;
            let shading = crate::mesh::Shading::from_cells(pattern.len(), &p.shading)?;
            patterns.push(MeshPattern::new(pattern, shading)?);
        }
        patterns.sort();
        patterns.dedup();
        Ok(Basis {
            patterns,
            max_pattern_len: doc.m,
            source_max_len: doc.n,
            pruned: doc.pruned,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct BasisDoc {
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    pruned: bool,
    patterns: Vec<PatternDoc>,
}

#[derive(Serialize, Deserialize)]
struct PatternDoc {
    pattern: String,
    shading: Vec<(u8, u8)>,
}

/// Conjectures a forbidden-pattern description of a finite permutation set,
/// searching patterns of length at most `m`.
pub fn bisc(input: &BTreeSet<Permutation>, m: usize) -> Result<Basis, Error> {
    let mined = mine(input, m)?;
    Ok(Basis::from_forbidden(&ForbiddenTable::from_mined(&mined)))
}

/// The avoiders of a basis, listed exhaustively by length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceSet {
    by_length: Vec<Vec<Permutation>>,
}

impl AvoidanceSet {
    /// Largest listed length.
    pub fn max_length(&self) -> usize {
        self.by_length.len() - 1
    }

    /// Members of one length, lexicographically sorted.
    pub fn of_length(&self, len: usize) -> &[Permutation] {
        &self.by_length[len]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.by_length.iter().flatten()
    }

    pub fn total(&self) -> usize {
        self.by_length.iter().map(|v| v.len()).sum()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.len() < self.by_length.len() && self.by_length[p.len()].binary_search(p).is_ok()
    }

    pub fn to_set(&self) -> BTreeSet<Permutation> {
        self.iter().cloned().collect()
    }
}

fn avoids_all(patterns: &[MeshPattern], q: &Permutation) -> bool {
    patterns.iter().all(|mp| !mp.occurs_in(q))
}

/// Brute-force filter of every length up to `n` against the basis, guarded by
/// [`DEFAULT_LENGTH_CAP`].
pub fn avoiders(basis: &Basis, n: usize) -> Result<AvoidanceSet, Error> {
    avoiders_with_cap(basis, n, DEFAULT_LENGTH_CAP)
}

/// As [`avoiders`] with an explicit cap.
pub fn avoiders_with_cap(basis: &Basis, n: usize, cap: usize) -> Result<AvoidanceSet, Error> {
    if n > cap {
        return Err(Error::LengthCap { n, cap });
    }
    let by_length = (0..=n)
        .map(|len| crate::perm::select_of_length(len, |q| avoids_all(basis.patterns(), q)))
        .collect();
    Ok(AvoidanceSet { by_length })
}

/// Single-threaded avoider listing; the result equals [`avoiders_with_cap`].
pub fn avoiders_sequential(basis: &Basis, n: usize, cap: usize) -> Result<AvoidanceSet, Error> {
    if n > cap {
        return Err(Error::LengthCap { n, cap });
    }
    let by_length = (0..=n)
        .map(|len| select_of_length_sequential(len, |q| avoids_all(basis.patterns(), q)))
        .collect();
    Ok(AvoidanceSet { by_length })
}

/// Checks that every input permutation of length at most `n` avoids every
/// basis pattern. This must hold whenever the basis was conjectured from the
/// same input; a failure signals an implementation bug.
pub fn verify_subset(input: &BTreeSet<Permutation>, basis: &Basis, n: usize) -> bool {
    let members: Vec<&Permutation> = input.iter().filter(|p| p.len() <= n).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        members.par_iter().all(|p| avoids_all(basis.patterns(), p))
    }
    #[cfg(not(feature = "parallel"))]
    {
        members.iter().all(|p| avoids_all(basis.patterns(), p))
    }
}

/// Outcome of comparing the input with the avoiders of a basis up to a
/// horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualityCheck {
    Equal,
    /// Shortest (then lexicographically first) member of the symmetric
    /// difference; `in_input` tells which side it came from.
    Unequal {
        counterexample: Permutation,
        in_input: bool,
    },
}

impl EqualityCheck {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqualityCheck::Equal)
    }
}

fn input_by_length(input: &BTreeSet<Permutation>, n: usize) -> Vec<Vec<Permutation>> {
    let mut by_length = vec![Vec::new(); n + 1];
    for p in input {
        if p.len() <= n {
            by_length[p.len()].push(p.clone());
        }
    }
    // BTreeSet iteration is already (length, lex) ordered
    by_length
}

/// Compares the input with the basis avoiders length by length up to `n`.
pub fn verify_equality(input: &BTreeSet<Permutation>, basis: &Basis, n: usize) -> EqualityCheck {
    let members = input_by_length(input, n);
    for len in 0..=n {
        let avoiding = crate::perm::select_of_length(len, |q| avoids_all(basis.patterns(), q));
        if avoiding == members[len] {
            continue;
        }
        // first mismatch, lexicographically
        let mut a = avoiding.iter();
        let mut b = members[len].iter();
        let (mut x, mut y) = (a.next(), b.next());
        loop {
            match (x, y) {
                (Some(av), Some(inp)) => {
                    if av == inp {
                        x = a.next();
                        y = b.next();
                    } else if av < inp {
                        return EqualityCheck::Unequal {
                            counterexample: av.clone(),
                            in_input: false,
                        };
                    } else {
                        return EqualityCheck::Unequal {
                            counterexample: inp.clone(),
                            in_input: true,
                        };
                    }
                }
                (Some(av), None) => {
                    return EqualityCheck::Unequal {
                        counterexample: av.clone(),
                        in_input: false,
                    }
                }
                (None, Some(inp)) => {
                    return EqualityCheck::Unequal {
                        counterexample: inp.clone(),
                        in_input: true,
                    }
                }
                (None, None) => unreachable!("unequal lists cannot agree throughout"),
            }
        }
    }
    EqualityCheck::Equal
}

/// Does the pattern list describe exactly the given members at every length
/// up to `n`?
fn describes_exactly(patterns: &[MeshPattern], members: &[Vec<Permutation>], n: usize) -> bool {
    for len in 0..=n {
        let target = &members[len];
        let ok = {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..factorial(len)).into_par_iter().all(|rank| {
                    let q = nth_of_length(len, rank);
                    avoids_all(patterns, &q) == target.binary_search(&q).is_ok()
                })
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..factorial(len)).all(|rank| {
                    let q = nth_of_length(len, rank);
                    avoids_all(patterns, &q) == target.binary_search(&q).is_ok()
                })
            }
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Greedily removes patterns (longest first, then reverse lexicographic)
/// whose removal keeps the avoiders equal to the input at horizon `n`.
/// Requires the basis to describe the input exactly at that horizon.
pub fn prune(basis: &Basis, input: &BTreeSet<Permutation>, n: usize) -> Result<Basis, Error> {
    match verify_equality(input, basis, n) {
        EqualityCheck::Equal => {}
        EqualityCheck::Unequal { counterexample, .. } => {
            return Err(Error::NotABasis {
                horizon: n,
                counterexample: counterexample.to_string(),
            });
        }
    }
    let members = input_by_length(input, n);
    let mut current = basis.patterns.clone();
    let mut order = current.clone();
    order.reverse();
    for candidate in &order {
        let reduced: Vec<MeshPattern> =
            current.iter().filter(|p| *p != candidate).cloned().collect();
        if describes_exactly(&reduced, &members, n) {
            current = reduced;
        }
    }
    Ok(Basis {
        patterns: current,
        max_pattern_len: basis.max_pattern_len,
        source_max_len: basis.source_max_len,
        pruned: true,
    })
}
