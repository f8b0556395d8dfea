//! Exhaustive census of the perfect 2-colorings of `J(6,3)` with quotient
//! `[[4,5],[5,4]]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coloring::PartColoring;
use crate::error::Result;
use crate::johnson::{JohnsonGraph, KSubsets};
use crate::perm::all_permutations;

pub struct Census {
    pub graph: Arc<JohnsonGraph>,
    /// Bipartitions examined: 10-subsets containing vertex 0.
    pub scanned: usize,
    /// `X1` of each perfect bipartition (the part holding vertex 0), as
    /// vertex-index bitmasks.
    pub survivors: Vec<u32>,
    /// Survivors grouped up to `S6` × complementation, by canonical key.
    pub classes: Vec<Vec<u32>>,
}

impl Census {
    pub fn all_antipodal(&self) -> bool {
        let c = complement_map(&self.graph);
        self.survivors.iter().all(|&s| map_mask(&c, s) == s)
    }

    /// Both orientations of every survivor, sorted.
    pub fn ordered_solutions(&self) -> Vec<u32> {
        let full = (1u32 << self.graph.order()) - 1;
        let mut out: Vec<u32> = self.survivors.iter().flat_map(|&s| [s, full ^ s]).collect();
        out.sort_unstable();
        out
    }

    pub fn coloring(&self, mask: u32) -> PartColoring {
        let in_first: Vec<bool> = (0..self.graph.order()).map(|i| mask >> i & 1 == 1).collect();
        PartColoring::two_coloring(self.graph.clone(), &in_first).expect("nonempty parts")
    }

    /// Index of the class containing the unordered pair `{mask, ¬mask}`.
    pub fn class_of(&self, mask: u32) -> Option<usize> {
        let maps = symmetry_maps(&self.graph);
        let key = canonical_key(&maps, mask, self.graph.order());
        self.classes.iter().position(|c| canonical_key(&maps, c[0], self.graph.order()) == key)
    }
}

fn complement_map(g: &JohnsonGraph) -> Vec<usize> {
    g.vertices().iter().map(|&v| g.index_of(g.complement(v).expect("n = 2k")).unwrap()).collect()
}

fn map_mask(map: &[usize], mask: u32) -> u32 {
    map.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, &j)| acc | 1 << j)
}

/// Vertex maps induced by `S6` and by `S6` after complementation.
fn symmetry_maps(g: &JohnsonGraph) -> Vec<Vec<usize>> {
    let comp = complement_map(g);
    let mut out = Vec::with_capacity(1440);
    for p in all_permutations(g.n()) {
        let direct: Vec<usize> = g.vertices().iter().map(|&v| g.index_of(p.apply_vertex(v)).unwrap()).collect();
        let composed = comp.iter().map(|&c| direct[c]).collect();
        out.push(direct);
        out.push(composed);
    }
    out
}

fn canonical_key(maps: &[Vec<usize>], mask: u32, order: usize) -> u32 {
    let full = (1u32 << order) - 1;
    maps.iter()
        .flat_map(|m| [map_mask(m, mask), map_mask(m, full ^ mask)])
        .min()
        .expect("nonempty group")
}

pub fn census_j63() -> Result<Census> {
    let graph = Arc::new(JohnsonGraph::new(6, 3)?);
    let order = graph.order();
    let nb: Vec<u32> = (0..order)
        .map(|i| graph.neighbor_indices(i).iter().fold(0, |acc, &j| acc | 1 << j))
        .collect();
    let mut scanned = 0;
    let mut survivors = Vec::new();
    for rest in KSubsets::new(order - 1, 9) {
        let x = (rest as u32) << 1 | 1;
        scanned += 1;
        let perfect = (0..order).all(|v| {
            let inside = (nb[v] & x).count_ones();
            if x >> v & 1 == 1 {
                inside == 4
            } else {
                inside == 5
            }
        });
        if perfect {
            survivors.push(x);
        }
    }
    let maps = symmetry_maps(&graph);
    let mut by_key = BTreeMap::<u32, Vec<u32>>::new();
    for &s in &survivors {
        by_key.entry(canonical_key(&maps, s, order)).or_default().push(s);
    }
    Ok(Census { graph, scanned, survivors, classes: by_key.into_values().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_perfect;

    #[test]
    fn census_counts() {
        let c = census_j63().unwrap();
        assert_eq!(c.scanned, 92378);
        // every union of five of the ten antipodal pairs
        assert_eq!(c.survivors.len(), 126);
        assert!(c.all_antipodal());
        assert_eq!(c.classes.len(), 2);
        assert_eq!(c.classes.iter().map(Vec::len).sum::<usize>(), 126);
        for &s in &c.survivors {
            assert!(verify_perfect(&c.coloring(s)).is_ok());
        }
        assert_eq!(c.ordered_solutions().len(), 252);
    }
}
