//! Committed fixture tables.
//!
//! Each table is followed by the argument for conditions a) (diagonal
//! `cells[j][j] = j`), b) (boundary indices `0..N` appear nowhere else) and
//! c) (the cell graph is connected). The unit tests re-check all of them.

use super::FractalTriple;
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 5] = ["interval", "gasket", "vicsek", "snowflake", "tripod"];

// Unit interval split at its midpoint M = 2.
//   a) cells[0][0] = 0, cells[1][1] = 1.
//   b) 0 and 1 occur once each, on the diagonal.
//   c) both cells contain M.
const INTERVAL: [[usize; 2]; 2] = [[0, 2], [2, 1]];

// Sierpinski gasket. Vertices P1, P2, P3 = 0, 1, 2 and edge midpoints
// Q12 = 3, Q13 = 4, Q23 = 5. Cell i is the corner triangle at P_i with
// ψ_i(P_h) = midpoint of P_i P_h.
//   a) diagonal 0, 1, 2.
//   b) off-diagonal entries are all in 3..6.
//   c) cells 1 and 2 share Q12, cells 1 and 3 share Q13.
const GASKET: [[usize; 3]; 3] = [[0, 3, 4], [3, 1, 5], [4, 5, 2]];

// Vicsek set on the unit square, P1..P4 = (0,0), (1,0), (1,1), (0,1), all
// maps with ratio 1/3. Cells 1..4 are the corner squares fixed at P_j, cell 5
// is the centre square x/3 + (1/3, 1/3). Corner squares are pairwise
// disjoint and each meets the centre square in one point, so
// M = 4 * 4 = 16 and the centre contributes no new vertex.
//   4  = (1/3, 0)    5 = (1/3, 1/3)  6 = (0, 1/3)
//   7  = (2/3, 0)    8 = (1, 1/3)    9 = (2/3, 1/3)
//   10 = (2/3, 2/3) 11 = (1, 2/3)   12 = (2/3, 1)
//   13 = (0, 2/3)   14 = (1/3, 2/3) 15 = (1/3, 1)
//   a) diagonal 0, 1, 2, 3.
//   b) 0..4 appear only on the diagonal.
//   c) the centre cell [5, 9, 10, 14] meets every corner cell.
const VICSEK: [[usize; 4]; 5] = [
    [0, 4, 5, 6],
    [7, 1, 8, 9],
    [10, 11, 2, 12],
    [13, 14, 15, 3],
    [5, 9, 10, 14],
];

// Lindstrøm snowflake: regular hexagon P_l = e^{iπ(l-1)/3}, seven maps of
// ratio 1/3. Outer cell j is ψ_j(x) = P_j + (x - P_j)/3 with vertices
// (2 P_j + P_l)/3; the centre cell is x/3. Outer cell j meets outer cell j+1
// in (2 P_j + P_{j+2})/3 and meets the centre in P_j/3; nothing else is
// shared, so M = 42 - 6 - 6 = 30.
//   a) diagonal 0..6.
//   b) 0..6 appear only on the diagonal.
//   c) every outer cell meets the centre cell [8, 14, 18, 19, 24, 28].
const SNOWFLAKE: [[usize; 6]; 7] = [
    [0, 6, 7, 8, 9, 10],
    [11, 1, 12, 13, 14, 7],
    [13, 15, 2, 16, 17, 18],
    [19, 17, 20, 3, 21, 22],
    [23, 24, 22, 25, 4, 26],
    [27, 9, 28, 23, 29, 5],
    [8, 14, 18, 19, 24, 28],
];

// Tripod: P1, P2, P3 = 0, 1, 2, a hub C = 3 and dangling vertices
// A1, A2, A3 = 4, 5, 6. Cells (P1, C, A1), (A2, P2, C), (C, A3, P3).
// The form supported on {P2, P3} has a zero-energy extension
// v(C) = v(A1) = u(P2), v(A3) = u(P3), so its renormalization vanishes.
//   a) diagonal 0, 1, 2.
//   b) off-diagonal entries are in 3..7.
//   c) every cell contains C.
const TRIPOD: [[usize; 3]; 3] = [[0, 3, 4], [5, 1, 3], [3, 6, 2]];

fn table<const N: usize>(rows: &[[usize; N]]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Returns one of the committed fixture triples.
pub fn builtin(name: &str) -> Result<FractalTriple> {
    let triple = match name {
        "interval" => {
            FractalTriple::new(2, 3, table(&INTERVAL))?.with_labels(labels(&["P1", "P2", "M"]))?
        }
        "gasket" => FractalTriple::new(3, 6, table(&GASKET))?
            .with_labels(labels(&["P1", "P2", "P3", "Q12", "Q13", "Q23"]))?,
        "vicsek" => FractalTriple::new(4, 16, table(&VICSEK))?,
        "snowflake" => FractalTriple::new(6, 30, table(&SNOWFLAKE))?,
        "tripod" => FractalTriple::new(3, 7, table(&TRIPOD))?
            .with_labels(labels(&["P1", "P2", "P3", "C", "A1", "A2", "A3"]))?,
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(triple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triples::validate_triple;

    #[test]
    fn all_builtins_validate() {
        for name in BUILTIN_NAMES {
            let t = builtin(name).unwrap();
            assert!(validate_triple(&t.to_file()).unwrap().pass, "{name}");
        }
    }

    #[test]
    fn sizes() {
        let sizes: Vec<_> = BUILTIN_NAMES
            .iter()
            .map(|n| {
                let t = builtin(n).unwrap();
                (t.n_boundary(), t.n_total(), t.n_cells())
            })
            .collect();
        assert_eq!(
            sizes,
            vec![(2, 3, 2), (3, 6, 3), (4, 16, 5), (6, 30, 7), (3, 7, 3)]
        );
    }

    #[test]
    fn interval_table() {
        assert_eq!(
            builtin("interval").unwrap().cells(),
            &[vec![0, 2], vec![2, 1]]
        );
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(builtin("unknown"), Err(Error::UnknownBuiltin(_))));
    }
}
