//! Neighborhood arrays of `J(10,3)` vertices relative to a 2-coloring.
//!
//! For `abc` (with `a < b < c`) the array `N(abc)` has rows `ab`, `ac`, `bc`
//! and one column per element `x ∉ {a,b,c}` in ascending order; the entry
//! is 1 iff the triple `row ∪ {x}` lies in `X1` (part 0 of the coloring).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::PartColoring;
use crate::error::{Error, Result};
use crate::johnson::Vertex;

/// A 3×7 0/1 matrix.
pub type Grid = [[u8; 7]; 3];

/// Row-sum multisets (ascending) possible for a vertex of `X1` when the
/// quotient is `[[12,9],[9,12]]`.
pub const X1_ROW_SUM_MULTISETS: [[u8; 3]; 5] = [[3, 3, 6], [4, 4, 4], [2, 5, 5], [0, 6, 6], [1, 4, 7]];

/// Row-sum multisets allowed for a vertex of `X1` when `X1` has the given
/// type.
pub fn row_sum_multisets_for_type(t: u8) -> &'static [[u8; 3]] {
    match t {
        0 => &[[2, 5, 5]],
        1 => &[[3, 3, 6], [0, 6, 6]],
        2 => &[[4, 4, 4], [1, 4, 7]],
        _ => &[],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NbArray {
    pub center: Vertex,
    pub center_value: u8,
    pub row_labels: [(u8, u8); 3],
    pub col_labels: [u8; 7],
    pub rows: Grid,
}

impl NbArray {
    pub fn row_sums(&self) -> [u8; 3] {
        row_sums(&self.rows)
    }

    pub fn total(&self) -> u32 {
        self.row_sums().iter().map(|&s| u32::from(s)).sum()
    }

    /// Row sums sorted ascending.
    pub fn row_sum_multiset(&self) -> [u8; 3] {
        row_sum_multiset(&self.rows)
    }
}

impl fmt::Display for NbArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            let (a, b) = self.row_labels[r];
            let cells: String = row.iter().map(|&x| if x == 1 { '1' } else { '0' }).collect();
            writeln!(f, "{:<6}{cells}", format!("{a},{b}"))?;
        }
        Ok(())
    }
}

pub fn row_sums(g: &Grid) -> [u8; 3] {
    [0, 1, 2].map(|r| g[r].iter().sum())
}

pub fn row_sum_multiset(g: &Grid) -> [u8; 3] {
    let mut s = row_sums(g);
    s.sort_unstable();
    s
}

/// `N(v)` for a 2-coloring of `J(10,3)`, with `X1` = part 0.
pub fn compute_nb_array(c: &PartColoring, v: Vertex) -> Result<NbArray> {
    let g = c.graph();
    if g.n() != 10 || g.k() != 3 {
        return Err(Error::ParameterOutOfRange(format!(
            "nb-arrays are defined on J(10,3), not J({},{})",
            g.n(),
            g.k()
        )));
    }
    let center_index = g.try_index(v)?;
    let e = v.elements();
    let (a, b, cc) = (e[0], e[1], e[2]);
    let row_labels = [(a, b), (a, cc), (b, cc)];
    let mut col_labels = [0u8; 7];
    for (slot, x) in col_labels.iter_mut().zip((1..=10).filter(|x| !v.contains(*x))) {
        *slot = x;
    }
    let in_x1 = |t: Vertex| u8::from(c.part_of_vertex(t).expect("triple of J(10,3)") == 0);
    let mut rows = [[0u8; 7]; 3];
    for (r, &(p, q)) in row_labels.iter().enumerate() {
        for (col, &x) in col_labels.iter().enumerate() {
            rows[r][col] = in_x1(Vertex::of(&[p, q, x]));
        }
    }
    Ok(NbArray {
        center: v,
        center_value: u8::from(c.part_of(center_index) == 0),
        row_labels,
        col_labels,
        rows,
    })
}

/// An occurrence of a forbidden 2×2 pattern in columns `columns` of a row
/// pair; `case` is the clause (1, 2 or 3) that forbids it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub columns: (usize, usize),
    pub pattern: [[u8; 2]; 2],
    pub case: u8,
}

const ALWAYS_FORBIDDEN: [[[u8; 2]; 2]; 1] = [[[0, 0], [1, 1]]];
const FORBIDDEN_DIFF_3: [[[u8; 2]; 2]; 4] = [
    [[0, 0], [0, 1]],
    [[0, 0], [1, 0]],
    [[1, 0], [1, 1]],
    [[0, 1], [1, 1]],
];
const FORBIDDEN_DIFF_6: [[[u8; 2]; 2]; 6] = [
    [[0, 0], [0, 0]],
    [[1, 1], [1, 1]],
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[1, 0], [1, 0]],
    [[0, 1], [0, 1]],
];

/// Scans every column pair of `[r1; r2]` for patterns forbidden by the
/// row-sum difference. Requires `sum(r1) ≥ sum(r2)`.
pub fn check_forbidden_submatrices(r1: &[u8; 7], r2: &[u8; 7]) -> Result<Vec<Violation>> {
    let s1: usize = r1.iter().map(|&x| x as usize).sum();
    let s2: usize = r2.iter().map(|&x| x as usize).sum();
    if s1 < s2 {
        return Err(Error::RowsOutOfOrder(s1, s2));
    }
    let diff = s1 - s2;
    let mut out = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            let pattern = [[r1[i], r1[j]], [r2[i], r2[j]]];
            let case = if ALWAYS_FORBIDDEN.contains(&pattern) {
                Some(1)
            } else if diff >= 3 && FORBIDDEN_DIFF_3.contains(&pattern) {
                Some(2)
            } else if diff == 6 && FORBIDDEN_DIFF_6.contains(&pattern) {
                Some(3)
            } else {
                None
            };
            if let Some(case) = case {
                out.push(Violation { columns: (i, j), pattern, case });
            }
        }
    }
    Ok(out)
}

/// Violations over every ordered row pair `(r1, r2)` with
/// `sum(r1) ≥ sum(r2)`; rows of equal sum are checked in both orders.
pub fn grid_violations(g: &Grid) -> Vec<((usize, usize), Violation)> {
    let sums = row_sums(g);
    let mut out = Vec::new();
    for r1 in 0..3 {
        for r2 in 0..3 {
            if r1 != r2 && sums[r1] >= sums[r2] {
                for v in check_forbidden_submatrices(&g[r1], &g[r2]).expect("ordered rows") {
                    out.push(((r1, r2), v));
                }
            }
        }
    }
    out
}

/// One of the eleven canonical nb-arrays of a vertex of `X1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct FormId(u8);

impl TryFrom<u8> for FormId {
    type Error = Error;

    fn try_from(id: u8) -> Result<Self> {
        FormId::new(id)
    }
}

impl From<FormId> for u8 {
    fn from(f: FormId) -> u8 {
        f.0
    }
}

impl FormId {
    pub const ALL: [FormId; 11] = {
        let mut all = [FormId(0); 11];
        let mut i = 0;
        while i < 11 {
            all[i] = FormId(i as u8 + 1);
            i += 1;
        }
        all
    };

    pub fn new(id: u8) -> Result<Self> {
        if (1..=11).contains(&id) {
            Ok(FormId(id))
        } else {
            Err(Error::ParameterOutOfRange(format!("form id {id} not in 1..=11")))
        }
    }

    pub fn id(self) -> u8 {
        self.0
    }

    /// The representative matrix as printed, rows `ab`, `ac`, `bc`.
    pub fn matrix(self) -> Grid {
        FORMS[self.0 as usize - 1]
    }

    pub fn row_sum_multiset(self) -> [u8; 3] {
        row_sum_multiset(&self.matrix())
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

const FORMS: [Grid; 11] = [
    // {2,5,5}
    [[1, 1, 1, 1, 1, 0, 0], [1, 1, 1, 1, 1, 0, 0], [1, 1, 0, 0, 0, 0, 0]],
    [[1, 1, 1, 1, 1, 0, 0], [1, 1, 1, 1, 0, 1, 0], [1, 1, 0, 0, 0, 0, 0]],
    // {3,3,6}
    [[1, 1, 1, 1, 1, 1, 0], [1, 1, 1, 0, 0, 0, 0], [1, 1, 0, 1, 0, 0, 0]],
    [[1, 1, 1, 1, 1, 1, 0], [1, 1, 1, 0, 0, 0, 0], [1, 1, 1, 0, 0, 0, 0]],
    // {0,6,6}
    [[1, 1, 1, 1, 1, 1, 0], [1, 1, 1, 1, 1, 1, 0], [0, 0, 0, 0, 0, 0, 0]],
    [[1, 1, 1, 1, 1, 1, 0], [1, 1, 1, 1, 1, 0, 1], [0, 0, 0, 0, 0, 0, 0]],
    // {4,4,4}
    [[1, 1, 1, 1, 0, 0, 0], [1, 1, 1, 1, 0, 0, 0], [1, 1, 1, 1, 0, 0, 0]],
    [[1, 1, 1, 1, 0, 0, 0], [1, 1, 1, 0, 1, 0, 0], [1, 1, 1, 0, 1, 0, 0]],
    [[1, 1, 1, 1, 0, 0, 0], [1, 1, 1, 0, 1, 0, 0], [1, 1, 1, 0, 0, 1, 0]],
    [[1, 1, 1, 1, 0, 0, 0], [1, 1, 1, 0, 1, 0, 0], [1, 1, 0, 1, 1, 0, 0]],
    // {1,4,7}
    [[1, 1, 1, 1, 1, 1, 1], [1, 1, 1, 1, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0]],
];

const ROW_PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Canonical representative under independent row and column permutations.
///
/// Rows are ordered by descending row sum; among the orders consistent with
/// that, columns are sorted descending as 3-bit values (first row most
/// significant) and the lexicographically greatest result is kept.
pub fn canonicalize(g: &Grid) -> Grid {
    let sums = row_sums(g);
    let mut best: Option<Grid> = None;
    for perm in ROW_PERMS {
        if sums[perm[0]] < sums[perm[1]] || sums[perm[1]] < sums[perm[2]] {
            continue;
        }
        let mut cols: Vec<u8> = (0..7)
            .map(|c| g[perm[0]][c] << 2 | g[perm[1]][c] << 1 | g[perm[2]][c])
            .collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = [[0u8; 7]; 3];
        for (c, &v) in cols.iter().enumerate() {
            out[0][c] = v >> 2 & 1;
            out[1][c] = v >> 1 & 1;
            out[2][c] = v & 1;
        }
        if best.is_none_or(|b| out > b) {
            best = Some(out);
        }
    }
    best.expect("some row order is non-increasing")
}

/// Matches a grid against the eleven forms up to row/column permutation.
pub fn classify_grid(g: &Grid) -> Option<FormId> {
    let canon = canonicalize(g);
    let mut hits = FormId::ALL.into_iter().filter(|f| canonicalize(&f.matrix()) == canon);
    let hit = hits.next();
    assert!(hits.next().is_none(), "canonical forms are pairwise distinct");
    hit
}

/// The form of an nb-array whose center lies in `X1`; `None` for centers in
/// `X2` or arrays matching no form.
pub fn classify_form(a: &NbArray) -> Option<FormId> {
    if a.center_value != 1 {
        return None;
    }
    classify_grid(&a.rows)
}

/// Canonical classes of every 3×7 array whose row sums form `multiset` and
/// which has no forbidden-pattern violation. Exhaustive over the
/// `C(7,s1)·C(7,s2)·C(7,s3)` arrays with those row sums in a fixed order.
pub fn admissible_classes(multiset: [u8; 3]) -> BTreeSet<Grid> {
    let rows_with = |s: u8| -> Vec<[u8; 7]> {
        (0u8..128)
            .filter(|m| m.count_ones() == u32::from(s))
            .map(|m| std::array::from_fn(|c| m >> (6 - c) & 1))
            .collect()
    };
    let (r0, r1, r2) = (rows_with(multiset[0]), rows_with(multiset[1]), rows_with(multiset[2]));
    let mut out = BTreeSet::new();
    for a in &r0 {
        for b in &r1 {
            for c in &r2 {
                let g = [*a, *b, *c];
                if grid_violations(&g).is_empty() {
                    out.insert(canonicalize(&g));
                }
            }
        }
    }
    out
}
