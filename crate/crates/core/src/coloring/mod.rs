//! Vertex partitions of Johnson graphs and perfect-coloring checks.
//!
//! A partition is *perfect* (equitable) when every vertex of part `i` has
//! the same number `p[i][j]` of neighbors in part `j`. The verifiers here
//! return the first counterexample found in canonical vertex order instead
//! of a bare boolean.

mod spectrum;

pub use spectrum::{
    characteristic_polynomial, induced_adjacency, induced_subgraph_spectrum, quotient_spectrum,
    Spectrum, SPECTRUM_TOLERANCE,
};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::johnson::{JohnsonGraph, Vertex};

/// An assignment of every vertex of a Johnson graph to one of `m` parts.
///
/// Parts are numbered `0..m` and every part is nonempty.
#[derive(Clone)]
pub struct PartColoring {
    graph: Arc<JohnsonGraph>,
    part_of: Vec<u8>,
    m: usize,
}

impl PartColoring {
    /// Builds a coloring from a per-vertex part index (indexed like
    /// `graph.vertices()`).
    pub fn from_assignment(graph: Arc<JohnsonGraph>, part_of: Vec<usize>) -> Result<Self> {
        if part_of.len() != graph.order() {
            return Err(Error::InvalidColoring(format!(
                "assignment has {} entries, graph has {} vertices",
                part_of.len(),
                graph.order()
            )));
        }
        let m = part_of.iter().copied().max().map_or(0, |p| p + 1);
        if m > u8::MAX as usize {
            return Err(Error::InvalidColoring(format!("{m} parts is too many")));
        }
        let mut used = vec![false; m];
        for &p in &part_of {
            used[p] = true;
        }
        if let Some(p) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidColoring(format!("part {} is empty", p + 1)));
        }
        let part_of = part_of.into_iter().map(|p| p as u8).collect();
        Ok(PartColoring { graph, part_of, m })
    }

    /// Builds a coloring from explicit parts, which must cover every vertex
    /// exactly once.
    pub fn from_parts(graph: Arc<JohnsonGraph>, parts: &[Vec<Vertex>]) -> Result<Self> {
        let mut part_of = vec![usize::MAX; graph.order()];
        for (p, members) in parts.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidColoring(format!("part {} is empty", p + 1)));
            }
            for &v in members {
                let i = graph.try_index(v)?;
                if part_of[i] != usize::MAX {
                    return Err(Error::InvalidColoring(format!("vertex {v} listed twice")));
                }
                part_of[i] = p;
            }
        }
        if let Some(i) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidColoring(format!(
                "vertex {} is not in any part",
                graph.vertex(i)
            )));
        }
        Self::from_assignment(graph, part_of)
    }

    /// Two-coloring with `X1 = { v : in_first[v] }` and `X2` the rest.
    /// Degenerates to a single part when one side is empty.
    pub fn two_coloring(graph: Arc<JohnsonGraph>, in_first: &[bool]) -> Result<Self> {
        let any_first = in_first.iter().any(|&b| b);
        let assignment = in_first
            .iter()
            .map(|&b| usize::from(!b && any_first))
            .collect();
        Self::from_assignment(graph, assignment)
    }

    pub fn graph(&self) -> &JohnsonGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<JohnsonGraph> {
        &self.graph
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Part of the vertex at `index`.
    pub fn part_of(&self, index: usize) -> usize {
        self.part_of[index] as usize
    }

    pub fn part_of_vertex(&self, v: Vertex) -> Result<usize> {
        Ok(self.part_of(self.graph.try_index(v)?))
    }

    pub fn assignment(&self) -> Vec<usize> {
        self.part_of.iter().map(|&p| p as usize).collect()
    }

    /// Members of `part` in canonical vertex order.
    pub fn part(&self, part: usize) -> Vec<Vertex> {
        self.part_indices(part).map(|i| self.graph.vertex(i)).collect()
    }

    pub fn part_indices(&self, part: usize) -> impl Iterator<Item = usize> + '_ {
        self.part_of
            .iter()
            .enumerate()
            .filter(move |(_, &p)| p as usize == part)
            .map(|(i, _)| i)
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.m];
        for &p in &self.part_of {
            sizes[p as usize] += 1;
        }
        sizes
    }

    /// Indicator vector of `part`.
    pub fn membership(&self, part: usize) -> Vec<bool> {
        self.part_of.iter().map(|&p| p as usize == part).collect()
    }

    /// The same partition with parts renumbered so that `order[new] = old`.
    pub fn reorder_parts(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.m {
            return Err(Error::InvalidGrouping(format!("expected {} parts", self.m)));
        }
        let mut new_of_old = vec![usize::MAX; self.m];
        for (new, &old) in order.iter().enumerate() {
            if old >= self.m || new_of_old[old] != usize::MAX {
                return Err(Error::InvalidGrouping(format!("{order:?} is not a permutation")));
            }
            new_of_old[old] = new;
        }
        let part_of = self.part_of.iter().map(|&p| new_of_old[p as usize]).collect();
        Self::from_assignment(self.graph.clone(), part_of)
    }

    /// Parts renumbered by their smallest vertex.
    pub fn canonical(&self) -> Self {
        let mut first_seen = Vec::with_capacity(self.m);
        for &p in &self.part_of {
            if !first_seen.contains(&(p as usize)) {
                first_seen.push(p as usize);
            }
        }
        self.reorder_parts(&first_seen).expect("first-seen order is a permutation")
    }

    /// Counts of neighbors of the vertex at `index` in each part.
    pub fn neighbor_counts(&self, index: usize) -> Vec<u32> {
        let mut counts = vec![0; self.m];
        for &j in self.graph.neighbor_indices(index) {
            counts[self.part_of[j as usize] as usize] += 1;
        }
        counts
    }

    pub fn to_file(&self) -> ColoringFile {
        let canon = self.canonical();
        ColoringFile {
            n: self.graph.n(),
            k: self.graph.k(),
            parts: (0..canon.m).map(|p| canon.part(p)).collect(),
        }
    }
}

impl PartialEq for PartColoring {
    fn eq(&self, other: &Self) -> bool {
        self.graph.n() == other.graph.n()
            && self.graph.k() == other.graph.k()
            && self.part_of == other.part_of
    }
}

impl Eq for PartColoring {}

impl fmt::Debug for PartColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartColoring")
            .field("n", &self.graph.n())
            .field("k", &self.graph.k())
            .field("sizes", &self.part_sizes())
            .finish()
    }
}

/// JSON form of a coloring: `{"n":10,"k":3,"parts":[[[1,2,3],…],…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub n: usize,
    pub k: usize,
    pub parts: Vec<Vec<Vertex>>,
}

impl ColoringFile {
    pub fn into_coloring(self) -> Result<PartColoring> {
        let graph = Arc::new(JohnsonGraph::new(self.n, self.k)?);
        PartColoring::from_parts(graph, &self.parts)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes")
    }
}

/// The `m×m` matrix of neighbor counts of a perfect coloring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuotientMatrix {
    entries: Vec<Vec<u32>>,
}

impl QuotientMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let m = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a {m}-row matrix",
                row.len()
            )));
        }
        Ok(QuotientMatrix { entries })
    }

    /// Parses `"12,9;9,12"`: rows separated by `;`, entries by `,`.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|e| Error::Parse(format!("quotient entry {x:?}: {e}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// `[[2n-8, n-1], [n-1, 2n-8]]`, the symmetric `θ_2` quotient of `J(n,3)`.
    pub fn symmetric_theta2(n: u32) -> Self {
        QuotientMatrix {
            entries: vec![vec![2 * n - 8, n - 1], vec![n - 1, 2 * n - 8]],
        }
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

/// Two vertices of the same part whose neighbor-count vectors differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotPerfect {
    pub part: usize,
    pub first: Vertex,
    pub first_counts: Vec<u32>,
    pub second: Vertex,
    pub second_counts: Vec<u32>,
}

/// Checks that `c` is perfect and returns its quotient matrix, or the first
/// offending pair of vertices.
pub fn verify_perfect(c: &PartColoring) -> std::result::Result<QuotientMatrix, NotPerfect> {
    let g = c.graph();
    let mut rows: Vec<Option<(usize, Vec<u32>)>> = vec![None; c.m()];
    for i in 0..g.order() {
        let p = c.part_of(i);
        let counts = c.neighbor_counts(i);
        match &rows[p] {
            None => rows[p] = Some((i, counts)),
            Some((first, expected)) if *expected != counts => {
                return Err(NotPerfect {
                    part: p,
                    first: g.vertex(*first),
                    first_counts: expected.clone(),
                    second: g.vertex(i),
                    second_counts: counts,
                });
            }
            Some(_) => {}
        }
    }
    let entries = rows
        .into_iter()
        .map(|r| r.expect("every part is nonempty").1)
        .collect();
    Ok(QuotientMatrix { entries })
}

/// Why a grouping fails to merge: rows `row_a` and `row_b` of the quotient
/// (both in cell `cell_from`) have different sums over cell `cell_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeWitness {
    pub cell_from: usize,
    pub cell_to: usize,
    pub row_a: usize,
    pub sum_a: u32,
    pub row_b: usize,
    pub sum_b: u32,
}

#[derive(Clone, Debug)]
pub enum MergeOutcome {
    Merged {
        coloring: PartColoring,
        quotient: QuotientMatrix,
    },
    Rejected(MergeWitness),
}

impl MergeOutcome {
    pub fn merged(self) -> Option<(PartColoring, QuotientMatrix)> {
        match self {
            MergeOutcome::Merged { coloring, quotient } => Some((coloring, quotient)),
            MergeOutcome::Rejected(_) => None,
        }
    }
}

/// Unites the parts of a perfect coloring cell by cell.
///
/// `grouping` must partition `0..m`; the merged coloring numbers its parts
/// by cell position.
pub fn merge(c: &PartColoring, grouping: &[Vec<usize>]) -> Result<MergeOutcome> {
    let m = c.m();
    let mut cell_of = vec![usize::MAX; m];
    for (cell, members) in grouping.iter().enumerate() {
        if members.is_empty() {
            return Err(Error::InvalidGrouping(format!("cell {cell} is empty")));
        }
        for &p in members {
            if p >= m {
                return Err(Error::InvalidGrouping(format!("part {p} out of range (m = {m})")));
            }
            if cell_of[p] != usize::MAX {
                return Err(Error::InvalidGrouping(format!("part {p} in two cells")));
            }
            cell_of[p] = cell;
        }
    }
    if let Some(p) = cell_of.iter().position(|&x| x == usize::MAX) {
        return Err(Error::InvalidGrouping(format!("part {p} in no cell")));
    }
    let q = verify_perfect(c)
        .map_err(|w| Error::InvalidColoring(format!("input is not perfect: {w:?}")))?;

    let l = grouping.len();
    let mut merged = vec![vec![0u32; l]; l];
    for (ci, rows) in grouping.iter().enumerate() {
        for (cj, cols) in grouping.iter().enumerate() {
            let sum = |x: usize| cols.iter().map(|&y| q.get(x, y)).sum::<u32>();
            let first = rows[0];
            let expected = sum(first);
            for &x in &rows[1..] {
                let s = sum(x);
                if s != expected {
                    return Ok(MergeOutcome::Rejected(MergeWitness {
                        cell_from: ci,
                        cell_to: cj,
                        row_a: first,
                        sum_a: expected,
                        row_b: x,
                        sum_b: s,
                    }));
                }
            }
            merged[ci][cj] = expected;
        }
    }
    let assignment = (0..c.graph().order()).map(|i| cell_of[c.part_of(i)]).collect();
    let coloring = PartColoring::from_assignment(c.graph_arc().clone(), assignment)?;
    Ok(MergeOutcome::Merged {
        coloring,
        quotient: QuotientMatrix { entries: merged },
    })
}

/// `|ab* ∩ part|`: the number of triples containing both `a` and `b` that
/// lie in `part`.
pub fn pair_count(c: &PartColoring, part: usize, a: u8, b: u8) -> u32 {
    let g = c.graph();
    let pair = Vertex::of(&[a, b]).mask();
    (1..=g.n() as u8)
        .filter(|&x| x != a && x != b)
        .filter(|&x| {
            let v = Vertex::from_mask(pair | 1 << (x - 1));
            g.index_of(v).is_some_and(|i| c.part_of(i) == part)
        })
        .count() as u32
}

/// The type of a part of a coloring of `J(n,3)`: the common residue of
/// `|ab* ∩ part| mod 3` over all pairs `{a,b}`.
pub fn part_type(c: &PartColoring, part: usize) -> Result<u8> {
    let g = c.graph();
    if g.k() != 3 {
        return Err(Error::ParameterOutOfRange(format!("part type needs k = 3, got k = {}", g.k())));
    }
    if part >= c.m() {
        return Err(Error::ParameterOutOfRange(format!("part {part} with m = {}", c.m())));
    }
    let n = g.n() as u8;
    let mut first: Option<((u8, u8), u8)> = None;
    for a in 1..=n {
        for b in a + 1..=n {
            let r = (pair_count(c, part, a, b) % 3) as u8;
            match first {
                None => first = Some(((a, b), r)),
                Some((fp, fr)) if fr != r => {
                    return Err(Error::NonConstantType {
                        first_pair: fp,
                        first_residue: fr,
                        pair: (a, b),
                        residue: r,
                    })
                }
                Some(_) => {}
            }
        }
    }
    first.map(|(_, r)| r).ok_or_else(|| Error::ParameterOutOfRange("n < 2".into()))
}
