//! Grid renderings of mesh patterns: plain-text grids and TikZ snippets.

use crate::mesh::MeshPattern;

/// Text grid: one `.`/`#` glyph per cell, `*` at the lattice points carrying
/// the pattern, top row first.
pub fn ascii_grid(mp: &MeshPattern) -> String {
    let k = mp.pattern().len();
    let width = 2 * (k + 1) - 1;
    let mut out = String::new();
    for line in 0..(2 * k + 1) {
        let mut row = vec![' '; width];
        if line % 2 == 0 {
            let cell_row = k - line / 2;
            for col in 0..=k {
                row[2 * col] = if mp.shading().contains_pos(col, cell_row) {
                    '#'
                } else {
                    '.'
                };
            }
        } else {
            let value = (k - (line - 1) / 2) as u8;
            for (i, &v) in mp.pattern().values().iter().enumerate() {
                if v == value {
                    row[2 * i + 1] = '*';
                }
            }
        }
        out.extend(row.into_iter());
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    out
}

/// TikZ snippet drawing the grid, the shading, and the pattern points.
pub fn tikz(mp: &MeshPattern) -> String {
    let k = mp.pattern().len();
    let side = k + 1;
    let mut out = String::new();
    out.push_str("\\begin{tikzpicture}[scale=0.4]\n");
    for cell in mp.shading().cells() {
        out.push_str(&format!(
            "  \\fill[black!20] ({},{}) rectangle ({},{});\n",
            cell.col,
            cell.row,
            cell.col + 1,
            cell.row + 1
        ));
    }
    out.push_str(&format!("  \\draw (0,0) grid ({side},{side});\n"));
    for (i, &v) in mp.pattern().values().iter().enumerate() {
        out.push_str(&format!("  \\filldraw ({},{v}) circle (4pt);\n", i + 1));
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MeshPattern {
        s.parse().unwrap()
    }

    #[test]
    fn grid_of_a_shaded_ascent() {
        let grid = ascii_grid(&mp("(12, {(2,0)})"));
        assert_eq!(grid, ". . .\n   *\n. . .\n *\n. . #\n");
    }

    #[test]
    fn grid_of_the_empty_pattern() {
        assert_eq!(ascii_grid(&mp("eps")), ".\n");
        assert_eq!(ascii_grid(&mp("(eps, {(0,0)})")), "#\n");
    }

    #[test]
    fn tikz_mentions_every_part() {
        let snippet = tikz(&mp("(3241, {(1,4)})"));
        assert!(snippet.contains("rectangle (2,5)"));
        assert!(snippet.contains("grid (5,5)"));
        assert!(snippet.contains("\\filldraw (1,3) circle"));
    }
}
