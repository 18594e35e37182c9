//! Mesh patterns: a classical pattern together with a set of shaded grid
//! cells that an occurrence must keep free of host points.
//!
//! For a pattern of length `k` the grid has `(k+1) x (k+1)` cells. Cell
//! `(i, j)` is the open region strictly between occurrence positions `i` and
//! `i+1` and strictly between the `j`-th and `(j+1)`-th smallest occurrence
//! values, with sentinels at 0 and `n+1`. Shadings are bitmasks in col-major
//! cell order, so subset tests are single mask operations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::perm::{for_each_occurrence, Occurrence, Permutation};

/// Largest pattern length a shading grid can represent: `(7+1)^2 = 64` cells
/// fill the mask exactly.
pub const MAX_PATTERN_LEN: usize = 7;

/// A grid cell `(col, row)` with `0 <= col, row <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub col: u8,
    pub row: u8,
}

impl Cell {
    pub fn new(col: u8, row: u8) -> Self {
        Cell { col, row }
    }
}

/// A set of shaded cells over the grid of a fixed pattern length.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shading {
    side: u8,
    bits: u64,
}

impl Shading {
    pub fn empty(pattern_len: usize) -> Self {
        assert!(pattern_len <= MAX_PATTERN_LEN);
        Shading {
            side: (pattern_len + 1) as u8,
            bits: 0,
        }
    }

    pub fn full(pattern_len: usize) -> Self {
        assert!(pattern_len <= MAX_PATTERN_LEN);
        let side = pattern_len + 1;
        let cells = side * side;
        let bits = if cells == 64 {
            u64::MAX
        } else {
            (1u64 << cells) - 1
        };
        Shading {
            side: side as u8,
            bits,
        }
    }

    /// Builds a shading from `(col, row)` pairs, rejecting out-of-bounds
    /// cells.
    pub fn from_cells(pattern_len: usize, cells: &[(u8, u8)]) -> Result<Self, Error> {
        if pattern_len > MAX_PATTERN_LEN {
            return Err(Error::PatternTooLong {
                len: pattern_len,
                max: MAX_PATTERN_LEN,
            });
        }
        let mut s = Shading::empty(pattern_len);
        for &(col, row) in cells {
            if col as usize > pattern_len || row as usize > pattern_len {
                return Err(Error::CellOutOfBounds {
                    col: col as usize,
                    row: row as usize,
                    pattern_len,
                });
            }
            s.set(col as usize, row as usize);
        }
        Ok(s)
    }

    pub(crate) fn from_bits(pattern_len: usize, bits: u64) -> Self {
        let mut s = Shading::full(pattern_len);
        s.bits &= bits;
        debug_assert_eq!(s.bits, bits);
        s
    }

    pub fn pattern_len(&self) -> usize {
        self.side as usize - 1
    }

    pub(crate) fn bits(&self) -> u64 {
        self.bits
    }

    pub(crate) fn set(&mut self, col: usize, row: usize) {
        self.bits |= 1u64 << (col * self.side as usize + row);
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.contains_pos(cell.col as usize, cell.row as usize)
    }

    pub(crate) fn contains_pos(&self, col: usize, row: usize) -> bool {
        col < self.side as usize
            && row < self.side as usize
            && self.bits & (1u64 << (col * self.side as usize + row)) != 0
    }

    pub fn is_subset_of(&self, other: &Shading) -> bool {
        debug_assert_eq!(self.side, other.side);
        self.bits & !other.bits == 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == Shading::full(self.pattern_len()).bits
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn complement(&self) -> Shading {
        Shading {
            side: self.side,
            bits: Shading::full(self.pattern_len()).bits & !self.bits,
        }
    }

    /// Shaded cells in col-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let side = self.side as usize;
        let mut out = Vec::with_capacity(self.count());
        for col in 0..side {
            for row in 0..side {
                if self.contains_pos(col, row) {
                    out.push(Cell::new(col as u8, row as u8));
                }
            }
        }
        out
    }
}

// Shadings sort by cardinality and then by mask value, the output order used
// for serialized tables.
impl Ord for Shading {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.side, self.bits.count_ones(), self.bits).cmp(&(
            other.side,
            other.bits.count_ones(),
            other.bits,
        ))
    }
}

impl PartialOrd for Shading {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Shading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for cell in self.cells() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "({},{})", cell.col, cell.row)?;
            first = false;
        }
        f.write_str("}")
    }
}

/// A classical pattern with a shading; the empty shading is the classical
/// pattern itself.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeshPattern {
    pattern: Permutation,
    shading: Shading,
}

impl MeshPattern {
    pub fn new(pattern: Permutation, shading: Shading) -> Result<Self, Error> {
        if pattern.len() > MAX_PATTERN_LEN {
            return Err(Error::PatternTooLong {
                len: pattern.len(),
                max: MAX_PATTERN_LEN,
            });
        }
        if shading.pattern_len() != pattern.len() {
            return Err(Error::ShadingMismatch {
                pattern_len: pattern.len(),
                shading_len: shading.pattern_len(),
            });
        }
        Ok(MeshPattern { pattern, shading })
    }

    pub fn classical(pattern: Permutation) -> Result<Self, Error> {
        let shading = Shading::empty(pattern.len());
        MeshPattern::new(pattern, shading)
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn shading(&self) -> &Shading {
        &self.shading
    }

    pub fn is_classical(&self) -> bool {
        self.shading.is_empty()
    }

    pub fn is_fully_shaded(&self) -> bool {
        self.shading.is_full()
    }

    pub fn occurs_in(&self, host: &Permutation) -> bool {
        mesh_contains(host, self)
    }
}

impl fmt::Display for MeshPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_classical() {
            return write!(f, "{}", self.pattern);
        }
        write!(f, "({}, {:?})", self.pattern, self.shading)
    }
}

impl FromStr for MeshPattern {
    type Err = Error;

    /// Parses `(<perm>, {(<col>,<row>),...})`; a bare permutation is the
    /// classical pattern.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if !s.starts_with('(') {
            return MeshPattern::classical(s.parse()?);
        }
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
        }
        let inner = &s[1..s.len() - 1];
        let Some(brace) = inner.find('{') else {
            // parenthesized classical pattern
            return MeshPattern::classical(inner.trim().parse()?);
        };
        let head = inner[..brace].trim_end();
        let head = head
            .strip_suffix(',')
            .ok_or_else(|| Error::Parse(format!("missing `,` before shading in `{s}`")))?;
        let pattern: Permutation = head.trim().parse()?;
        let close = inner
            .rfind('}')
            .ok_or_else(|| Error::Parse(format!("unclosed shading in `{s}`")))?;
        if inner[close + 1..].trim() != "" {
            return Err(Error::Parse(format!("trailing text after shading in `{s}`")));
        }
        let cells = parse_cells(&inner[brace + 1..close])?;
        let shading = Shading::from_cells(pattern.len(), &cells)?;
        MeshPattern::new(pattern, shading)
    }
}

fn parse_cells(text: &str) -> Result<Vec<(u8, u8)>, Error> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let mut cells = Vec::new();
    let mut rest = compact.as_str();
    loop {
        let rest2 = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` in cell list near `{rest}`")))?;
        let end = rest2
            .find(')')
            .ok_or_else(|| Error::Parse("unclosed cell".into()))?;
        let body = &rest2[..end];
        let (a, b) = body
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad cell `({body})`")))?;
        let col = a
            .parse::<u8>()
            .map_err(|_| Error::Parse(format!("bad cell column `{a}`")))?;
        let row = b
            .parse::<u8>()
            .map_err(|_| Error::Parse(format!("bad cell row `{b}`")))?;
        cells.push((col, row));
        rest = &rest2[end + 1..];
        if rest.is_empty() {
            return Ok(cells);
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| Error::Parse(format!("expected `,` between cells near `{rest}`")))?;
    }
}

/// Counts the host points in the open region of one grid cell for a fixed
/// occurrence.
pub fn region_points(host: &Permutation, occ: &Occurrence, cell: Cell) -> Result<usize, Error> {
    let k = occ.len();
    if cell.col as usize > k || cell.row as usize > k {
        return Err(Error::CellOutOfBounds {
            col: cell.col as usize,
            row: cell.row as usize,
            pattern_len: k,
        });
    }
    let positions = occ.positions();
    let mut vals: Vec<u8> = positions.iter().map(|&i| host.values()[i as usize]).collect();
    vals.sort_unstable();

    let col = cell.col as usize;
    let row = cell.row as usize;
    let lo_pos = if col == 0 { 0 } else { positions[col - 1] as usize + 1 };
    let hi_pos = if col == k {
        host.len()
    } else {
        positions[col] as usize
    };
    let lo_val = if row == 0 { 0 } else { vals[row - 1] };
    let hi_val = if row == k {
        host.len() as u8 + 1
    } else {
        vals[row]
    };

    let mut count = 0;
    for x in lo_pos..hi_pos {
        let v = host.values()[x];
        if v > lo_val && v < hi_val {
            count += 1;
        }
    }
    Ok(count)
}

/// Mask of cells whose region holds at least one host point, for a fixed
/// occurrence.
pub(crate) fn occupied_bits(host: &[u8], positions: &[u8]) -> u64 {
    let k = positions.len();
    let side = k + 1;
    let mut vals: Vec<u8> = positions.iter().map(|&i| host[i as usize]).collect();
    vals.sort_unstable();

    let mut bits = 0u64;
    let mut next = 0usize;
    for (x, &v) in host.iter().enumerate() {
        if next < k && positions[next] as usize == x {
            next += 1;
            continue;
        }
        let col = next;
        let row = vals.partition_point(|&u| u < v);
        bits |= 1u64 << (col * side + row);
    }
    bits
}

/// The largest shading for which `occ` still witnesses the pattern: exactly
/// the cells whose region holds no host point.
pub fn maximal_shading(host: &Permutation, occ: &Occurrence) -> Shading {
    let occupied = occupied_bits(host.values(), occ.positions());
    Shading::from_bits(occ.len(), Shading::full(occ.len()).bits() & !occupied)
}

/// Mesh containment: some classical occurrence leaves every shaded cell's
/// region empty.
pub fn mesh_contains(host: &Permutation, mp: &MeshPattern) -> bool {
    let shading = mp.shading().bits();
    for_each_occurrence(host.values(), mp.pattern().values(), &mut |positions| {
        shading & occupied_bits(host.values(), positions) == 0
    })
}

/// Sufficient test that every permutation containing `outer` also contains
/// `inner`: some occurrence of the inner pattern inside the outer pattern
/// lifts each shaded inner cell to a region that is free of outer points and
/// covered by the outer shading. A `false` answer does not refute the
/// implication.
pub fn mesh_implies(inner: &MeshPattern, outer: &MeshPattern) -> bool {
    let host = outer.pattern().values();
    let n = host.len();
    let inner_cells = inner.shading().cells();
    let k = inner.pattern().len();

    for_each_occurrence(host, inner.pattern().values(), &mut |positions| {
        let mut vals: Vec<u8> = positions.iter().map(|&i| host[i as usize]).collect();
        vals.sort_unstable();
        inner_cells.iter().all(|cell| {
            let col = cell.col as usize;
            let row = cell.row as usize;
            let a_lo = if col == 0 { 0 } else { positions[col - 1] as usize + 1 };
            let a_hi = if col == k { n } else { positions[col] as usize };
            let b_lo = if row == 0 { 0 } else { vals[row - 1] as usize };
            let b_hi = if row == k { n } else { vals[row] as usize - 1 };

            for a in a_lo..=a_hi {
                for b in b_lo..=b_hi {
                    if !outer.shading().contains_pos(a, b) {
                        return false;
                    }
                }
            }
            // no outer point strictly inside the lifted region
            for x in a_lo..a_hi {
                let v = host[x] as usize;
                if v > b_lo && v <= b_hi {
                    return false;
                }
            }
            true
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn mp(s: &str) -> MeshPattern {
        s.parse().unwrap()
    }

    fn occ_of_values(host: &Permutation, values: &[u8]) -> Occurrence {
        let positions: Vec<u8> = values
            .iter()
            .map(|v| host.values().iter().position(|x| x == v).unwrap() as u8)
            .collect();
        Occurrence::new(positions).unwrap()
    }

    #[test]
    fn region_counts_around_24_in_1324() {
        let host = p("1324");
        let occ = occ_of_values(&host, &[2, 4]);
        assert_eq!(region_points(&host, &occ, Cell::new(0, 0)).unwrap(), 1);
        assert_eq!(region_points(&host, &occ, Cell::new(1, 1)).unwrap(), 0);
        assert!(matches!(
            region_points(&host, &occ, Cell::new(3, 0)),
            Err(Error::CellOutOfBounds { .. })
        ));
    }

    #[test]
    fn region_counts_for_identity_occurrence() {
        let host = p("3241");
        let occ = Occurrence::new(vec![0, 1, 2, 3]).unwrap();
        for col in 0..=4u8 {
            for row in 0..=4u8 {
                assert_eq!(region_points(&host, &occ, Cell::new(col, row)).unwrap(), 0);
            }
        }
    }

    #[test]
    fn maximal_shading_of_24_in_1324() {
        let host = p("1324");
        let occ = occ_of_values(&host, &[2, 4]);
        let expected = Shading::from_cells(
            2,
            &[(0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)],
        )
        .unwrap();
        assert_eq!(maximal_shading(&host, &occ), expected);
    }

    #[test]
    fn maximal_shading_of_23_in_2341() {
        let host = p("2341");
        let occ = occ_of_values(&host, &[2, 3]);
        let expected = Shading::from_cells(
            2,
            &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 1)],
        )
        .unwrap();
        assert_eq!(maximal_shading(&host, &occ), expected);
    }

    #[test]
    fn maximal_shading_of_pattern_in_itself_is_full() {
        let host = p("3241");
        let occ = Occurrence::new(vec![0, 1, 2, 3]).unwrap();
        assert!(maximal_shading(&host, &occ).is_full());
    }

    #[test]
    fn mesh_containment_west_example() {
        let west = mp("(3241, {(1,4)})");
        assert!(mesh_contains(&p("3241"), &west));
        assert!(!mesh_contains(&p("35241"), &west));
    }

    #[test]
    fn empty_shading_is_classical_containment() {
        let host = p("47318265");
        for pat in ["231", "4321", "12", "321"] {
            let classical = mp(pat);
            assert_eq!(
                mesh_contains(&host, &classical),
                host.contains(classical.pattern())
            );
        }
    }

    #[test]
    fn empty_pattern_containment() {
        let anywhere = MeshPattern::classical(Permutation::empty()).unwrap();
        assert!(mesh_contains(&p("312"), &anywhere));
        assert!(mesh_contains(&Permutation::empty(), &anywhere));

        let nowhere = mp("(eps, {(0,0)})");
        assert!(mesh_contains(&Permutation::empty(), &nowhere));
        assert!(!mesh_contains(&p("1"), &nowhere));
    }

    #[test]
    fn implication_for_nested_shadings() {
        let inner = mp("(12, {(0,0),(2,2)})");
        let outer = mp("(1243, {(0,0),(4,3),(4,4)})");
        assert!(mesh_implies(&inner, &outer));
    }

    #[test]
    fn implication_is_reflexive() {
        for s in ["eps", "1", "12", "231", "(12, {(0,0),(2,2)})", "(321, {(1,1)})"] {
            let m = mp(s);
            assert!(mesh_implies(&m, &m));
        }
    }

    #[test]
    fn implication_requires_shaded_cover() {
        let inner = mp("(12, {(1,1)})");
        let outer = mp("132");
        assert!(!mesh_implies(&inner, &outer));
    }

    #[test]
    fn shading_order_is_cardinality_then_mask() {
        let a = Shading::from_cells(2, &[(2, 0)]).unwrap();
        let b = Shading::from_cells(2, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        let c = Shading::from_cells(2, &[(0, 1)]).unwrap();
        let mut v = vec![b, a, c];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn pattern_text_round_trip() {
        for s in [
            "2341",
            "(3241, {(1,4)})",
            "(12, {(0,0),(1,1),(2,2)})",
            "(eps, {(0,0)})",
            "(321, {(1,0),(1,1),(2,2)})",
        ] {
            let m = mp(s);
            assert_eq!(m.to_string(), s);
            assert_eq!(mp(&m.to_string()), m);
        }
        // whitespace-tolerant
        assert_eq!(mp("( 3241 , { ( 1 , 4 ) } )"), mp("(3241, {(1,4)})"));
        assert_eq!(mp("(231, {})"), mp("231"));
        assert!("(12, {(3,0)})".parse::<MeshPattern>().is_err());
        assert!("(12, {(0,0)".parse::<MeshPattern>().is_err());
    }
}
