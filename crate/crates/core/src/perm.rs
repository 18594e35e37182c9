//! Permutations in one-line notation, flattening, and classical pattern
//! containment.
//!
//! A [`Permutation`] stores the sequence `pi_1 ... pi_n` with each value in
//! `1..=n`. Values are kept as `u8`, which bounds the length at 255; every
//! construction path validates the bijection property. Permutations order by
//! length first and lexicographically within a length, so sorted containers
//! enumerate them in the order the rest of the crate expects.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::Error;

/// Longest representable permutation.
pub const MAX_LEN: usize = 255;

/// A permutation of `{1, ..., n}` in one-line notation; length 0 is the empty
/// permutation, written `eps`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u8>,
}

impl Permutation {
    /// The empty permutation.
    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    /// The identity permutation `1 2 ... n`.
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_LEN);
        Permutation {
            values: (1..=n as u8).collect(),
        }
    }

    /// Builds a permutation from one-line values, checking that each of
    /// `1..=n` appears exactly once.
    pub fn new(values: Vec<u8>) -> Result<Self, Error> {
        let n = values.len();
        if n > MAX_LEN {
            return Err(Error::WordTooLong { len: n, max: MAX_LEN });
        }
        let mut seen = vec![false; n];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "values must be a bijection on 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Order-isomorphic relabeling of a word of distinct letters: the i-th
    /// smallest letter becomes `i`.
    pub fn flatten<T: Copy + Ord>(word: &[T]) -> Result<Self, Error> {
        if word.len() > MAX_LEN {
            return Err(Error::WordTooLong {
                len: word.len(),
                max: MAX_LEN,
            });
        }
        let mut order: Vec<usize> = (0..word.len()).collect();
        order.sort_by_key(|&i| word[i]);
        if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
            return Err(Error::DuplicateLetters);
        }
        let mut values = vec![0u8; word.len()];
        for (rank, &i) in order.iter().enumerate() {
            values[i] = (rank + 1) as u8;
        }
        Ok(Permutation { values })
    }

    /// The letters selected by an index subset, in position order.
    pub fn subword(&self, positions: &Occurrence) -> Vec<u8> {
        positions
            .positions()
            .iter()
            .map(|&i| self.values[i as usize])
            .collect()
    }

    /// Every index subset of size at most `max_len`, paired with the letters
    /// it selects. Yields the empty subword, then subsets by size and
    /// lexicographic position order.
    pub fn subwords_up_to(&self, max_len: usize) -> Vec<(Occurrence, Vec<u8>)> {
        let n = self.len();
        let mut out = Vec::new();
        out.push((Occurrence::empty(), Vec::new()));
        for size in 1..=max_len.min(n) {
            let mut idx: Vec<u8> = (0..size as u8).collect();
            'combinations: loop {
                let occ = Occurrence {
                    positions: idx.clone(),
                };
                let word = self.subword(&occ);
                out.push((occ, word));
                // advance to the next combination of this size
                let mut i = size;
                loop {
                    if i == 0 {
                        break 'combinations;
                    }
                    i -= 1;
                    if (idx[i] as usize) < n - (size - i) {
                        idx[i] += 1;
                        for j in i + 1..size {
                            idx[j] = idx[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
        out
    }

    /// Classical containment: does some subsequence of `self` flatten to
    /// `pattern`?
    pub fn contains(&self, pattern: &Permutation) -> bool {
        word_contains(&self.values, pattern.values())
    }

    /// All occurrences of a classical pattern, as index subsets in
    /// lexicographic order. An empty result means `self` avoids the pattern.
    pub fn occurrences(&self, pattern: &Permutation) -> Vec<Occurrence> {
        let mut out = Vec::new();
        for_each_occurrence(&self.values, pattern.values(), &mut |positions| {
            out.push(Occurrence {
                positions: positions.to_vec(),
            });
            false
        });
        out
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.values.cmp(&other.values))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return f.write_str("eps");
        }
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let mut first = true;
            for v in &self.values {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses the text form: `eps` for the empty permutation, a digit string
    /// for lengths up to 9, space-separated integers otherwise.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation text".into()));
        }
        if s == "eps" {
            return Ok(Permutation::empty());
        }
        let values: Vec<u8> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|tok| {
                    tok.parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad value `{tok}`")))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad character `{c}`")))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

/// An index subset `j_1 < ... < j_k` (0-based) into a host permutation,
/// witnessing a classical pattern occurrence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    positions: Vec<u8>,
}

impl Occurrence {
    pub fn empty() -> Self {
        Occurrence {
            positions: Vec::new(),
        }
    }

    pub fn new(positions: Vec<u8>) -> Result<Self, Error> {
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidOccurrence);
        }
        Ok(Occurrence { positions })
    }

    pub fn positions(&self) -> &[u8] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Classical containment on an arbitrary word of distinct letters.
pub(crate) fn word_contains(word: &[u8], pattern: &[u8]) -> bool {
    for_each_occurrence(word, pattern, &mut |_| true)
}

/// Visits occurrences of `pattern` in `host` in lexicographic position order.
/// The visitor returns `true` to stop the search; the function reports
/// whether it was stopped.
pub(crate) fn for_each_occurrence<F>(host: &[u8], pattern: &[u8], visit: &mut F) -> bool
where
    F: FnMut(&[u8]) -> bool,
{
    if pattern.len() > host.len() {
        return false;
    }
    let mut buf: Vec<u8> = Vec::with_capacity(pattern.len());
    search(host, pattern, &mut buf, 0, visit)
}

fn search<F>(host: &[u8], pattern: &[u8], buf: &mut Vec<u8>, start: usize, visit: &mut F) -> bool
where
    F: FnMut(&[u8]) -> bool,
{
    let chosen = buf.len();
    if chosen == pattern.len() {
        return visit(buf);
    }
    let slots_left = pattern.len() - chosen;
    for pos in start..=host.len() - slots_left {
        let v = host[pos];
        let consistent = (0..chosen).all(|s| {
            (v > host[buf[s] as usize]) == (pattern[chosen] > pattern[s])
        });
        if consistent {
            buf.push(pos as u8);
            let stopped = search(host, pattern, buf, pos + 1, visit);
            buf.pop();
            if stopped {
                return true;
            }
        }
    }
    false
}

/// `n!` as a `u64`; the number of permutations of length `n`.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The `rank`-th permutation of length `n` in lexicographic order.
pub fn nth_of_length(n: usize, rank: u64) -> Permutation {
    assert!(n <= 20, "factorial unranking limited to length 20");
    assert!(rank < factorial(n));
    let mut available: Vec<u8> = (1..=n as u8).collect();
    let mut rank = rank;
    let mut values = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let d = (rank / f) as usize;
        rank %= f;
        values.push(available.remove(d));
    }
    Permutation { values }
}

/// In-place step to the next permutation in lexicographic order.
fn next_lex(vals: &mut [u8]) -> bool {
    if vals.len() < 2 {
        return false;
    }
    let mut i = vals.len() - 1;
    while i > 0 && vals[i - 1] >= vals[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = vals.len() - 1;
    while vals[j] <= vals[i - 1] {
        j -= 1;
    }
    vals.swap(i - 1, j);
    vals[i..].reverse();
    true
}

/// All permutations of length `n` in lexicographic order.
pub fn all_of_length(n: usize) -> Vec<Permutation> {
    select_of_length(n, |_| true)
}

/// The permutations of length `n` satisfying `pred`, in lexicographic order.
#[cfg(feature = "parallel")]
pub fn select_of_length<F>(n: usize, pred: F) -> Vec<Permutation>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    use rayon::prelude::*;
    (0..factorial(n))
        .into_par_iter()
        .filter_map(|rank| {
            let p = nth_of_length(n, rank);
            pred(&p).then_some(p)
        })
        .collect()
}

/// The permutations of length `n` satisfying `pred`, in lexicographic order.
#[cfg(not(feature = "parallel"))]
pub fn select_of_length<F>(n: usize, pred: F) -> Vec<Permutation>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    select_of_length_sequential(n, pred)
}

/// Sequential scan over `S_n` in lexicographic order.
pub fn select_of_length_sequential<F>(n: usize, pred: F) -> Vec<Permutation>
where
    F: Fn(&Permutation) -> bool,
{
    let mut out = Vec::new();
    if n == 0 {
        let p = Permutation::empty();
        if pred(&p) {
            out.push(p);
        }
        return out;
    }
    let mut vals: Vec<u8> = (1..=n as u8).collect();
    loop {
        let p = Permutation {
            values: vals.clone(),
        };
        if pred(&p) {
            out.push(p);
        }
        if !next_lex(&mut vals) {
            return out;
        }
    }
}

/// The permutations of every length up to `n` satisfying `pred`.
pub fn select_up_to<F>(n: usize, pred: F) -> BTreeSet<Permutation>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    let mut out = BTreeSet::new();
    for len in 0..=n {
        out.extend(select_of_length(len, &pred));
    }
    out
}

/// Reads a permutation set from a text file: one permutation per line, blank
/// lines and `#` comments ignored, `eps` for the empty permutation.
pub fn read_permutation_file(path: &Path) -> Result<BTreeSet<Permutation>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
    parse_permutation_lines(&text)
}

/// Parses the file format of [`read_permutation_file`] from a string.
pub fn parse_permutation_lines(text: &str) -> Result<BTreeSet<Permutation>, Error> {
    let mut out = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let p = line.parse::<Permutation>().map_err(|e| Error::ParseLine {
            line: idx + 1,
            message: e.to_string(),
        })?;
        out.insert(p);
    }
    Ok(out)
}
