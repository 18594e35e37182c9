//! Generators for the permutation sets the pipeline is exercised on: sorting
//! machines, symmetric-group subgroups, tableau-shape classes, and named
//! avoidance classes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::mesh::MeshPattern;
use crate::perm::{select_up_to, word_contains, Permutation};
use crate::pipeline::{avoiders_with_cap, Basis};

/// One pass through a last-in-first-out stack: before each push, pop while
/// the stack top is smaller than the next input; flush at the end.
pub fn stack_sort(pi: &Permutation) -> Permutation {
    Permutation::new(stack_sort_word(pi.values())).expect("stack pass permutes the letters")
}

fn stack_sort_word(word: &[u8]) -> Vec<u8> {
    let mut stack: Vec<u8> = Vec::new();
    let mut out = Vec::with_capacity(word.len());
    for &x in word {
        while stack.last().is_some_and(|&top| top < x) {
            out.push(stack.pop().unwrap());
        }
        stack.push(x);
    }
    while let Some(top) = stack.pop() {
        out.push(top);
    }
    out
}

/// Permutations sorted by one stack pass, up to length `n`.
pub fn stack_sortable(n: usize) -> BTreeSet<Permutation> {
    select_up_to(n, |q| stack_sort(q).is_identity())
}

/// Permutations sorted by two consecutive stack passes, up to length `n`.
pub fn west_2_stack_sortable(n: usize) -> BTreeSet<Permutation> {
    select_up_to(n, |q| stack_sort(&stack_sort(q)).is_identity())
}

/// One quicksort pass. Blocks separated by strong fixed points are handled
/// recursively; a block without one gets a single partition step (letters
/// below its first letter move to the front, in order) and nothing more.
pub fn quicksort_pass(pi: &Permutation) -> Permutation {
    Permutation::new(quicksort_pass_word(pi.values())).expect("pass permutes the letters")
}

fn quicksort_pass_word(word: &[u8]) -> Vec<u8> {
    if word.len() <= 1 {
        return word.to_vec();
    }
    if let Some(i) = rightmost_strong_fixed_point(word) {
        let mut out = quicksort_pass_word(&word[..i]);
        out.push(word[i]);
        out.extend(quicksort_pass_word(&word[i + 1..]));
        return out;
    }
    let pivot = word[0];
    let mut out: Vec<u8> = word.iter().copied().filter(|&x| x < pivot).collect();
    out.extend(word.iter().copied().filter(|&x| x >= pivot));
    out
}

/// Index of the rightmost letter with every earlier letter smaller and every
/// later letter larger, relative to this block.
fn rightmost_strong_fixed_point(word: &[u8]) -> Option<usize> {
    let n = word.len();
    let mut suffix_min = word[n - 1];
    let mut best = None;
    let mut prefix_max = vec![0u8; n];
    let mut running = 0u8;
    for (i, &x) in word.iter().enumerate() {
        prefix_max[i] = running;
        running = running.max(x);
    }
    for i in (0..n).rev() {
        if prefix_max[i] < word[i] && (i == n - 1 || word[i] < suffix_min) {
            best = Some(i);
            break;
        }
        suffix_min = suffix_min.min(word[i]);
    }
    best
}

/// Permutations sorted by at most one quicksort pass, up to length `n`.
pub fn quicksortable(n: usize) -> BTreeSet<Permutation> {
    select_up_to(n, |q| quicksort_pass(q).is_identity())
}

/// Union of the dihedral subgroups up to length `n`: rotations and
/// reflections of the cyclically labeled `l`-gon, in one-line notation.
pub fn dihedral(n: usize) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    out.insert(Permutation::empty());
    for l in 1..=n {
        for k in 0..l as i64 {
            let rotation: Vec<u8> = (1..=l as i64)
                .map(|i| ((i - 1 + k).rem_euclid(l as i64) + 1) as u8)
                .collect();
            let reflection: Vec<u8> = (1..=l as i64)
                .map(|i| ((k - i).rem_euclid(l as i64) + 1) as u8)
                .collect();
            out.insert(Permutation::new(rotation).unwrap());
            out.insert(Permutation::new(reflection).unwrap());
        }
    }
    out
}

fn inversions(q: &Permutation) -> usize {
    let v = q.values();
    let mut count = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                count += 1;
            }
        }
    }
    count
}

/// Union of the alternating subgroups up to length `n`: even inversion count.
pub fn alternating(n: usize) -> BTreeSet<Permutation> {
    select_up_to(n, |q| inversions(q) % 2 == 0)
}

/// A partition written as weakly decreasing positive row lengths.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YoungShape {
    rows: Vec<usize>,
}

impl YoungShape {
    pub fn new(rows: Vec<usize>) -> Result<Self, Error> {
        if rows.iter().any(|&r| r == 0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape);
        }
        Ok(YoungShape { rows })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Containment of diagrams: every row at least as long.
    pub fn contains(&self, other: &YoungShape) -> bool {
        other.rows.len() <= self.rows.len()
            && other.rows.iter().zip(&self.rows).all(|(o, s)| o <= s)
    }
}

impl fmt::Display for YoungShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for r in &self.rows {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for YoungShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let rows = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad row length `{tok}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        YoungShape::new(rows)
    }
}

/// Shape of the insertion tableau under row-insertion.
pub fn rsk_shape(pi: &Permutation) -> YoungShape {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for &x in pi.values() {
        let mut carry = x;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![carry]);
                break;
            }
            match rows[r].iter().position(|&y| y > carry) {
                Some(idx) => {
                    std::mem::swap(&mut rows[r][idx], &mut carry);
                    r += 1;
                }
                None => {
                    rows[r].push(carry);
                    break;
                }
            }
        }
    }
    YoungShape::new(rows.iter().map(|r| r.len()).collect()).expect("insertion keeps a partition")
}

/// Permutations whose insertion-tableau shape avoids `shape`, up to length
/// `n`.
pub fn rsk_shape_avoiders(shape: &YoungShape, n: usize) -> BTreeSet<Permutation> {
    select_up_to(n, |q| !rsk_shape(q).contains(shape))
}

/// Output of the pattern-restricted first stack fed by the input: pushes
/// greedily, popping only when a push would make the stack content (top to
/// bottom) contain `sigma`.
fn restricted_stack_pass(word: &[u8], sigma: &Permutation) -> Vec<u8> {
    let mut stack: Vec<u8> = Vec::new();
    let mut out = Vec::with_capacity(word.len());
    let mut probe: Vec<u8> = Vec::new();
    for &x in word {
        loop {
            // stack content top-to-bottom with x on top
            probe.clear();
            probe.push(x);
            probe.extend(stack.iter().rev());
            if !word_contains(&probe, sigma.values()) {
                break;
            }
            out.push(stack.pop().expect("a lone letter cannot contain sigma"));
        }
        stack.push(x);
    }
    while let Some(top) = stack.pop() {
        out.push(top);
    }
    out
}

/// Sortable by the two-stacks-in-series machine whose first stack must avoid
/// `sigma` and whose second stack is the classical sorting stack.
pub fn restricted_stack_sortable(pi: &Permutation, sigma: &Permutation) -> bool {
    let first = restricted_stack_pass(pi.values(), sigma);
    stack_sort_word(&first) == Permutation::identity(pi.len()).values()
}

/// The `sigma`-machine-sortable permutations up to length `n`.
pub fn restricted_stack_sortable_up_to(sigma: &Permutation, n: usize) -> BTreeSet<Permutation> {
    select_up_to(n, |q| restricted_stack_sortable(q, sigma))
}

fn named_basis(patterns: &[&str]) -> Vec<MeshPattern> {
    patterns.iter().map(|s| s.parse().unwrap()).collect()
}

/// A registered set generator with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    StackSortable,
    West2,
    Quicksort1,
    Dihedral,
    Alternating,
    RskAvoid(YoungShape),
    RestrictedStack(Permutation),
    Avoid(Vec<MeshPattern>),
    Smooth,
    ForestLike,
    Baxter,
    Simsun,
}

impl ClassSpec {
    /// All members up to length `n`. Generation scans every permutation of
    /// each length, so `n` is held to the same cap as avoider listing.
    pub fn generate(&self, n: usize, cap: usize) -> Result<BTreeSet<Permutation>, Error> {
        if n > cap {
            return Err(Error::LengthCap { n, cap });
        }
        let by_avoidance = |patterns: Vec<MeshPattern>| {
            avoiders_with_cap(&Basis::from_patterns(patterns), n, cap).map(|av| av.to_set())
        };
        match self {
            ClassSpec::StackSortable => Ok(stack_sortable(n)),
            ClassSpec::West2 => Ok(west_2_stack_sortable(n)),
            ClassSpec::Quicksort1 => Ok(quicksortable(n)),
            ClassSpec::Dihedral => Ok(dihedral(n)),
            ClassSpec::Alternating => Ok(alternating(n)),
            ClassSpec::RskAvoid(shape) => Ok(rsk_shape_avoiders(shape, n)),
            ClassSpec::RestrictedStack(sigma) => Ok(restricted_stack_sortable_up_to(sigma, n)),
            ClassSpec::Avoid(patterns) => by_avoidance(patterns.clone()),
            ClassSpec::Smooth => by_avoidance(named_basis(&["1324", "2143"])),
            ClassSpec::ForestLike => by_avoidance(named_basis(&["1324", "(2143, {(2,2)})"])),
            ClassSpec::Baxter => {
                by_avoidance(named_basis(&["(2413, {(2,2)})", "(3142, {(2,2)})"]))
            }
            ClassSpec::Simsun => by_avoidance(named_basis(&["(321, {(1,0),(1,1),(2,2)})"])),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::StackSortable => f.write_str("stack_sortable"),
            ClassSpec::West2 => f.write_str("west2"),
            ClassSpec::Quicksort1 => f.write_str("quicksort1"),
            ClassSpec::Dihedral => f.write_str("dihedral"),
            ClassSpec::Alternating => f.write_str("alternating"),
            ClassSpec::RskAvoid(shape) => write!(f, "rsk_avoid:{shape}"),
            ClassSpec::RestrictedStack(sigma) => write!(f, "restricted_stack:{sigma}"),
            ClassSpec::Avoid(patterns) => {
                f.write_str("avoid:")?;
                let mut first = true;
                for p in patterns {
                    if !first {
                        f.write_str("; ")?;
                    }
                    write!(f, "{p}")?;
                    first = false;
                }
                Ok(())
            }
            ClassSpec::Smooth => f.write_str("smooth"),
            ClassSpec::ForestLike => f.write_str("forestlike"),
            ClassSpec::Baxter => f.write_str("baxter"),
            ClassSpec::Simsun => f.write_str("simsun"),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s {
            "stack_sortable" => return Ok(ClassSpec::StackSortable),
            "west2" => return Ok(ClassSpec::West2),
            "quicksort1" => return Ok(ClassSpec::Quicksort1),
            "dihedral" => return Ok(ClassSpec::Dihedral),
            "alternating" => return Ok(ClassSpec::Alternating),
            "smooth" => return Ok(ClassSpec::Smooth),
            "forestlike" => return Ok(ClassSpec::ForestLike),
            "baxter" => return Ok(ClassSpec::Baxter),
            "simsun" => return Ok(ClassSpec::Simsun),
            _ => {}
        }
        if let Some(shape) = s.strip_prefix("rsk_avoid:") {
            return Ok(ClassSpec::RskAvoid(shape.parse()?));
        }
        if let Some(sigma) = s.strip_prefix("restricted_stack:") {
            let sigma: Permutation = sigma.parse()?;
            if sigma.is_empty() {
                return Err(Error::Parse("restriction pattern must be nonempty".into()));
            }
            return Ok(ClassSpec::RestrictedStack(sigma));
        }
        if let Some(list) = s.strip_prefix("avoid:") {
            return Ok(ClassSpec::Avoid(parse_pattern_list(list)?));
        }
        Err(Error::UnknownClass(s.to_string()))
    }
}

/// Splits a pattern list on `;` or on `,` at nesting depth zero, so both
/// `231, 4312` and `2341; (3241, {(1,4)})` parse.
pub fn parse_pattern_list(text: &str) -> Result<Vec<MeshPattern>, Error> {
    let mut patterns = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced brackets in `{text}`")))?;
            }
            ',' | ';' if depth == 0 => {
                let piece = text[start..i].trim();
                if !piece.is_empty() {
                    patterns.push(piece.parse()?);
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    let piece = text[start..].trim();
    if !piece.is_empty() {
        patterns.push(piece.parse()?);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{text}`")));
    }
    Ok(patterns)
}
