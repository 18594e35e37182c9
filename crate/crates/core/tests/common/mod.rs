#![allow(dead_code)]

//! Shared helpers and independent oracles for the integration suites. The
//! oracles re-derive results by exhaustive enumeration and stay independent
//! of the library code paths they check.

use std::collections::BTreeSet;

use bisc_core::{Cell, MeshPattern, Occurrence, Permutation, Shading};

pub fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn mp(s: &str) -> MeshPattern {
    s.parse().unwrap()
}

pub fn basis_set(patterns: &[&str]) -> BTreeSet<MeshPattern> {
    patterns.iter().map(|s| mp(s)).collect()
}

/// Decodes a shading from a plain bitmask in col-major cell order.
pub fn shading_from_mask(pattern_len: usize, mask: u64) -> Shading {
    let side = pattern_len + 1;
    let mut cells = Vec::new();
    for col in 0..side {
        for row in 0..side {
            if mask & (1 << (col * side + row)) != 0 {
                cells.push((col as u8, row as u8));
            }
        }
    }
    Shading::from_cells(pattern_len, &cells).unwrap()
}

/// Brute-force minimal forbidden shadings: enumerate every shading of the
/// grid, keep those inside no allowed shading, filter to inclusion-minimal.
/// Only feasible for small grids.
pub fn brute_minimal_forbidden(pattern_len: usize, allowed: &[Shading]) -> Vec<Shading> {
    let cells = (pattern_len + 1) * (pattern_len + 1);
    assert!(cells <= 16, "oracle limited to tiny grids");
    let mut not_allowed: Vec<Shading> = (0..1u64 << cells)
        .map(|mask| shading_from_mask(pattern_len, mask))
        .filter(|s| !allowed.iter().any(|t| s.is_subset_of(t)))
        .collect();
    not_allowed.sort();
    let mut minimal: Vec<Shading> = Vec::new();
    for s in not_allowed {
        if !minimal.iter().any(|m| m.is_subset_of(&s)) {
            minimal.push(s);
        }
    }
    minimal
}

/// Direct transcription of the region-count definition with 1-based
/// sentinels, independent of the library's counting.
pub fn brute_region_points(host: &Permutation, occ: &Occurrence, cell: Cell) -> usize {
    let n = host.len();
    let k = occ.len();
    let pos1: Vec<usize> = occ.positions().iter().map(|&x| x as usize + 1).collect();
    let mut vals: Vec<usize> = occ
        .positions()
        .iter()
        .map(|&x| host.values()[x as usize] as usize)
        .collect();
    vals.sort_unstable();

    let col = cell.col as usize;
    let row = cell.row as usize;
    let lo_pos = if col == 0 { 0 } else { pos1[col - 1] };
    let hi_pos = if col == k { n + 1 } else { pos1[col] };
    let lo_val = if row == 0 { 0 } else { vals[row - 1] };
    let hi_val = if row == k { n + 1 } else { vals[row] };

    (1..=n)
        .filter(|&x| {
            let v = host.values()[x - 1] as usize;
            x > lo_pos && x < hi_pos && v > lo_val && v < hi_val
        })
        .count()
}

/// All permutations of length at most `n`, in (length, lex) order.
pub fn everything_up_to(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for len in 0..=n {
        out.extend(bisc_core::all_of_length(len));
    }
    out
}

/// Prints one pass/fail line per acceptance criterion and fails the test on
/// a miss.
pub fn report(idx: usize, name: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    if detail.is_empty() {
        println!("criterion {idx:02} {name}: {status}");
    } else {
        println!("criterion {idx:02} {name}: {status} ({detail})");
    }
    assert!(ok, "criterion {idx:02} {name} failed: {detail}");
}
