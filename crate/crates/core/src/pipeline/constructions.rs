//! The explicit colorings reproduced by the pipeline.

use std::sync::Arc;

use crate::coloring::{merge, MergeOutcome, PartColoring, QuotientMatrix};
use crate::error::Result;
use crate::johnson::{JohnsonGraph, Vertex};
use crate::perm::{automorphism_group, classify_cycle_orbit, orbits_on_ksubsets, CycleOrbit, HelperGraph, PermGroup};

/// Quotient of the 8-orbit partition of `J(10,3)`, rows and columns in
/// label order `A..H`.
pub const ORBIT_QUOTIENT: [[u32; 8]; 8] = [
    [2, 6, 4, 4, 2, 2, 1, 0],
    [3, 3, 4, 2, 2, 4, 1, 2],
    [2, 4, 3, 4, 1, 2, 2, 3],
    [2, 2, 4, 5, 1, 4, 2, 1],
    [2, 4, 2, 2, 2, 4, 4, 1],
    [1, 4, 2, 4, 2, 5, 1, 2],
    [1, 2, 4, 4, 4, 2, 2, 2],
    [0, 4, 6, 2, 1, 4, 2, 2],
];

/// `P1 = A∪B∪C∪H`, `P2 = D∪E∪F∪G`.
pub const TYPE0_MERGE: [&[CycleOrbit]; 2] = {
    use CycleOrbit::*;
    [&[A, B, C, H], &[D, E, F, G]]
};

/// `P1' = C∪D∪G∪H`, `P2' = A∪B∪E∪F`.
pub const TYPE1_MERGE: [&[CycleOrbit]; 2] = {
    use CycleOrbit::*;
    [&[C, D, G, H], &[A, B, E, F]]
};

pub fn ten_cycle_group() -> PermGroup {
    automorphism_group(&HelperGraph::cycle(10).expect("10-cycle"))
}

/// The orbit partition with part `i` = orbit label `i` (`A` = 0).
pub fn orbit_coloring() -> Result<PartColoring> {
    let graph = Arc::new(JohnsonGraph::new(10, 3)?);
    let orbits = orbits_on_ksubsets(&ten_cycle_group(), graph.clone())?;
    // renumber parts by label
    let mut order = vec![0; orbits.m()];
    for p in 0..orbits.m() {
        let label = classify_cycle_orbit(orbits.part(p)[0])?;
        order[label.index()] = p;
    }
    orbits.reorder_parts(&order)
}

pub fn orbit_quotient() -> QuotientMatrix {
    QuotientMatrix::new(ORBIT_QUOTIENT.iter().map(|r| r.to_vec()).collect()).expect("square")
}

/// Merges the label-ordered orbit coloring; part 0 is the first group.
pub fn merge_orbits(orbits: &PartColoring, groups: [&[CycleOrbit]; 2]) -> Result<MergeOutcome> {
    let grouping: Vec<Vec<usize>> = groups.iter().map(|g| g.iter().map(|o| o.index()).collect()).collect();
    merge(orbits, &grouping)
}

fn merged(groups: [&[CycleOrbit]; 2]) -> Result<PartColoring> {
    let orbits = orbit_coloring()?;
    match merge_orbits(&orbits, groups)? {
        MergeOutcome::Merged { coloring, .. } => Ok(coloring),
        MergeOutcome::Rejected(w) => panic!("orbit merge rejected: {w:?}"),
    }
}

/// `{P1, P2}` with `P1` as part 0.
pub fn type0_coloring() -> Result<PartColoring> {
    merged(TYPE0_MERGE)
}

/// `{P1', P2'}` with `P1'` as part 0.
pub fn type1_coloring() -> Result<PartColoring> {
    merged(TYPE1_MERGE)
}

fn j63_coloring(x1: &[[u8; 3]]) -> Result<PartColoring> {
    let graph = Arc::new(JohnsonGraph::new(6, 3)?);
    let mut in_first = vec![false; graph.order()];
    for t in x1 {
        in_first[graph.try_index(Vertex::from_elements(t)?)?] = true;
    }
    PartColoring::two_coloring(graph, &in_first)
}

/// `{X1, X2}` of `J(6,3)`, whose `X1` induces ten triangles.
pub fn figure_coloring() -> Result<PartColoring> {
    j63_coloring(&[
        [1, 5, 6], [1, 4, 5], [1, 4, 6], [1, 3, 4], [3, 4, 6],
        [2, 3, 4], [2, 3, 6], [2, 3, 5], [2, 5, 6], [1, 2, 5],
    ])
}

/// `{X1', X2'}` of `J(6,3)`, whose `X1'` contains two 4-cliques.
pub fn figure_coloring_prime() -> Result<PartColoring> {
    j63_coloring(&[
        [1, 2, 5], [2, 5, 6], [1, 5, 6], [4, 5, 6], [3, 5, 6],
        [3, 4, 6], [1, 3, 4], [2, 3, 4], [1, 2, 3], [1, 2, 4],
    ])
}
