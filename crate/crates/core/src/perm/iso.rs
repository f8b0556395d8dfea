use serde::Serialize;

use super::{all_permutations, PermGroup, Permutation};
use crate::coloring::PartColoring;
use crate::error::{Error, Result};
use crate::johnson::{JohnsonGraph, KSubsets};

/// A map from one 2-coloring onto another: complement first (optional),
/// then `permutation`. It sends `X1` to `Y1`, or to `Y2` when
/// `parts_swapped` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub permutation: Permutation,
    pub complement: bool,
    pub parts_swapped: bool,
}

impl IsoWitness {
    /// Image of `c` under the map, as a coloring with the same part order.
    pub fn apply(&self, c: &PartColoring) -> PartColoring {
        let g = c.graph();
        let mut part_of = vec![0; g.order()];
        for (i, &v) in g.vertices().iter().enumerate() {
            let v = if self.complement { g.complement(v).expect("n = 2k") } else { v };
            let j = g.index_of(self.permutation.apply_vertex(v)).expect("same graph");
            part_of[j] = c.part_of(i);
        }
        PartColoring::from_assignment(c.graph_arc().clone(), part_of).expect("bijection keeps parts")
    }
}

/// Looks for `g ∈ S_n` (optionally after complementation) mapping the
/// unordered pair `{X1, X2}` of `c1` onto that of `c2`.
///
/// The search assigns point images in order `1..n`, trying images in
/// ascending order, so in single-threaded use the witness is the
/// lexicographically least permutation for the first orientation that
/// works. Pruning uses per-point incidence counts, pair counts `|ij* ∩ X|`
/// and membership of every `k`-subset inside the assigned prefix.
pub fn coloring_isomorphic(
    c1: &PartColoring,
    c2: &PartColoring,
    allow_complement: bool,
) -> Result<Option<IsoWitness>> {
    let g = c1.graph();
    let (n, k) = (g.n(), g.k());
    if c2.graph().n() != n || c2.graph().k() != k {
        return Err(Error::DimensionMismatch("colorings live on different graphs".into()));
    }
    if c1.m() != 2 || c2.m() != 2 {
        return Err(Error::InvalidColoring("isomorphism test needs two 2-part colorings".into()));
    }
    if allow_complement && n != 2 * k {
        return Err(Error::ParameterOutOfRange(format!(
            "complementation needs n = 2k, got J({n},{k})"
        )));
    }

    let complements: &[bool] = if allow_complement { &[false, true] } else { &[false] };
    for &complement in complements {
        let mut source = vec![false; g.order()];
        for i in c1.part_indices(0) {
            let v = g.vertex(i);
            let v = if complement { g.complement(v)? } else { v };
            source[g.try_index(v)?] = true;
        }
        for parts_swapped in [false, true] {
            let target = c2.membership(usize::from(parts_swapped));
            if let Some(permutation) = search(g, &source, &target) {
                return Ok(Some(IsoWitness { permutation, complement, parts_swapped }));
            }
        }
    }
    Ok(None)
}

/// A permutation of `[n]` mapping the vertex set `source` onto `target`
/// (both given as indicator vectors over the vertices of `g`).
pub fn set_isomorphism(g: &JohnsonGraph, source: &[bool], target: &[bool]) -> Result<Option<Permutation>> {
    if source.len() != g.order() || target.len() != g.order() {
        return Err(Error::DimensionMismatch(format!("indicator vectors must have length {}", g.order())));
    }
    Ok(search(g, source, target))
}

struct SetProfile {
    incidence: Vec<u32>,
    pair: Vec<Vec<u32>>,
    degrees: Vec<u32>,
    size: usize,
}

fn profile(g: &JohnsonGraph, member: &[bool]) -> SetProfile {
    let n = g.n();
    let mut incidence = vec![0; n];
    let mut pair = vec![vec![0; n]; n];
    let mut degrees = Vec::new();
    let mut size = 0;
    for (i, &v) in g.vertices().iter().enumerate() {
        if !member[i] {
            continue;
        }
        size += 1;
        let pts: Vec<usize> = v.iter().map(|e| e as usize - 1).collect();
        for (a, &p) in pts.iter().enumerate() {
            incidence[p] += 1;
            for &q in &pts[a + 1..] {
                pair[p][q] += 1;
                pair[q][p] += 1;
            }
        }
        degrees.push(
            g.neighbor_indices(i).iter().filter(|&&j| member[j as usize]).count() as u32,
        );
    }
    degrees.sort_unstable();
    SetProfile { incidence, pair, degrees, size }
}

fn search(g: &JohnsonGraph, source: &[bool], target: &[bool]) -> Option<Permutation> {
    let n = g.n();
    let k = g.k();
    let ps = profile(g, source);
    let pt = profile(g, target);
    if ps.size != pt.size || ps.degrees != pt.degrees {
        return None;
    }
    let mut inc_s = ps.incidence.clone();
    let mut inc_t = pt.incidence.clone();
    inc_s.sort_unstable();
    inc_t.sort_unstable();
    if inc_s != inc_t {
        return None;
    }

    // k-subsets S ⊆ {0..=t} with t ∈ S, as masks over the first t points.
    let closing: Vec<Vec<u64>> = (0..n).map(|t| KSubsets::new(t, k - 1).collect()).collect();

    let mut images = vec![0u8; n];
    let mut state = Search { g, source, target, ps: &ps, pt: &pt, closing: &closing };
    state.go(0, &mut images, 0).then(|| Permutation::from_zero_based(images))
}

struct Search<'a> {
    g: &'a JohnsonGraph,
    source: &'a [bool],
    target: &'a [bool],
    ps: &'a SetProfile,
    pt: &'a SetProfile,
    closing: &'a [Vec<u64>],
}

impl Search<'_> {
    fn go(&mut self, t: usize, images: &mut [u8], used: u64) -> bool {
        let n = images.len();
        if t == n {
            return true;
        }
        for y in 0..n {
            if used & (1 << y) != 0 || self.ps.incidence[t] != self.pt.incidence[y] {
                continue;
            }
            if (0..t).any(|s| self.ps.pair[s][t] != self.pt.pair[images[s] as usize][y]) {
                continue;
            }
            images[t] = y as u8;
            let consistent = self.closing[t].iter().all(|&rest| {
                let src = rest | 1 << t;
                let mut dst = 1u64 << y;
                let mut r = rest;
                while r != 0 {
                    let b = r.trailing_zeros() as usize;
                    dst |= 1 << images[b];
                    r &= r - 1;
                }
                let i = self.g.index_of(crate::johnson::Vertex::from_mask(src)).expect("k-subset");
                let j = self.g.index_of(crate::johnson::Vertex::from_mask(dst)).expect("k-subset");
                self.source[i] == self.target[j]
            });
            if consistent && self.go(t + 1, images, used | 1 << y) {
                return true;
            }
        }
        false
    }
}

/// Which symmetries count as stabilizing a coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilizerMode {
    /// `g(P_i) = P_i` for every part.
    FixEachPart,
    /// `g` permutes the parts among themselves (for two parts: fixes the
    /// unordered pair `{X1, X2}`).
    FixPair,
}

/// Largest `n` for which the stabilizer is found by scanning all of `S_n`.
pub const MAX_STABILIZER_N: usize = 8;

/// All `g ∈ S_n` whose induced action on `J(n,k)` stabilizes `c` in the
/// given mode.
pub fn stabilizer(c: &PartColoring, mode: StabilizerMode) -> Result<PermGroup> {
    let g = c.graph();
    let n = g.n();
    if n > MAX_STABILIZER_N {
        return Err(Error::ParameterOutOfRange(format!(
            "stabilizer scans S_n, needs n ≤ {MAX_STABILIZER_N}"
        )));
    }
    let m = c.m();
    let images_of = |p: &Permutation| -> Vec<usize> {
        g.vertices()
            .iter()
            .map(|&v| g.index_of(p.apply_vertex(v)).expect("same graph"))
            .collect()
    };
    let elements: Vec<Permutation> = all_permutations(n)
        .filter(|p| {
            let img = images_of(p);
            match mode {
                StabilizerMode::FixEachPart => {
                    img.iter().enumerate().all(|(i, &j)| c.part_of(i) == c.part_of(j))
                }
                StabilizerMode::FixPair => {
                    let mut sigma = vec![usize::MAX; m];
                    img.iter().enumerate().all(|(i, &j)| {
                        let (from, to) = (c.part_of(i), c.part_of(j));
                        if sigma[from] == usize::MAX {
                            sigma[from] = to;
                        }
                        sigma[from] == to
                    })
                }
            }
        })
        .collect();
    Ok(PermGroup::from_elements(n, elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::johnson::Vertex;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use std::sync::Arc;

    fn j63() -> Arc<JohnsonGraph> {
        Arc::new(JohnsonGraph::new(6, 3).unwrap())
    }

    fn coloring(g: &Arc<JohnsonGraph>, first: &[[u8; 3]]) -> PartColoring {
        let mut in_first = vec![false; g.order()];
        for t in first {
            in_first[g.index_of(Vertex::of(t)).unwrap()] = true;
        }
        PartColoring::two_coloring(g.clone(), &in_first).unwrap()
    }

    fn relabel(c: &PartColoring, p: &Permutation) -> PartColoring {
        IsoWitness { permutation: p.clone(), complement: false, parts_swapped: false }.apply(c)
    }

    fn random_perm(n: usize, rng: &mut StdRng) -> Permutation {
        let mut v: Vec<u8> = (1..=n as u8).collect();
        v.shuffle(rng);
        Permutation::from_images(&v).unwrap()
    }

    /// Exhaustive oracle over S_n (small n only).
    fn brute_force_isomorphic(c1: &PartColoring, c2: &PartColoring) -> bool {
        let g = c1.graph();
        all_permutations(g.n()).any(|p| {
            let img = relabel(c1, &p);
            img == *c2 || img.reorder_parts(&[1, 0]).unwrap() == *c2
        })
    }

    #[test]
    fn identity_on_self() {
        let g = j63();
        let c = coloring(&g, &[[1, 2, 3], [1, 2, 4], [3, 5, 6]]);
        let w = coloring_isomorphic(&c, &c, false).unwrap().unwrap();
        assert!(w.permutation.is_identity());
        assert!(!w.complement && !w.parts_swapped);
    }

    #[test]
    fn agrees_with_brute_force_on_j63() {
        let g = j63();
        let mut rng = StdRng::seed_from_u64(11);
        let mut idx: Vec<usize> = (0..20).collect();
        for size in [3usize, 5, 10] {
            for _ in 0..6 {
                idx.shuffle(&mut rng);
                let a: Vec<bool> = (0..20).map(|i| idx[..size].contains(&i)).collect();
                idx.shuffle(&mut rng);
                let b: Vec<bool> = (0..20).map(|i| idx[..size].contains(&i)).collect();
                let ca = PartColoring::two_coloring(g.clone(), &a).unwrap();
                let cb = PartColoring::two_coloring(g.clone(), &b).unwrap();
                let fast = coloring_isomorphic(&ca, &cb, false).unwrap();
                assert_eq!(fast.is_some(), brute_force_isomorphic(&ca, &cb));
                if let Some(w) = fast {
                    let img = w.apply(&ca);
                    let expected = if w.parts_swapped { cb.reorder_parts(&[1, 0]).unwrap() } else { cb.clone() };
                    assert_eq!(img, expected);
                }
            }
        }
    }

    #[test]
    fn random_relabelings_of_j103_colorings_are_found() {
        let g = Arc::new(JohnsonGraph::new(10, 3).unwrap());
        let mut rng = StdRng::seed_from_u64(3);
        let mut idx: Vec<usize> = (0..120).collect();
        idx.shuffle(&mut rng);
        let in_first: Vec<bool> = (0..120).map(|i| idx[..60].contains(&i)).collect();
        let c = PartColoring::two_coloring(g.clone(), &in_first).unwrap();
        for _ in 0..100 {
            let p = random_perm(10, &mut rng);
            let d = relabel(&c, &p);
            let w = coloring_isomorphic(&c, &d, false).unwrap().expect("relabeling is isomorphic");
            let back = coloring_isomorphic(&d, &c, false).unwrap().expect("symmetric");
            assert_eq!(w.apply(&c), d);
            assert_eq!(back.apply(&d), c);
        }
    }

    #[test]
    fn complement_option() {
        let g = j63();
        let c = coloring(&g, &[[1, 2, 3]]);
        let d = coloring(&g, &[[4, 5, 6]]);
        assert!(coloring_isomorphic(&c, &d, true).unwrap().is_some());
        let j73 = Arc::new(JohnsonGraph::new(7, 3).unwrap());
        let e = coloring(&j73, &[[1, 2, 3]]);
        assert!(coloring_isomorphic(&e, &e, true).is_err());
    }

    #[test]
    fn stabilizer_of_trivial_coloring_is_s6() {
        let g = j63();
        let c = PartColoring::from_assignment(g, vec![0; 20]).unwrap();
        let s = stabilizer(&c, StabilizerMode::FixEachPart).unwrap();
        assert_eq!(s.order(), 720);
        assert_eq!(s.satisfies_group_axioms(), Some(true));
    }

    #[test]
    fn stabilizers_are_groups() {
        let g = j63();
        let mut rng = StdRng::seed_from_u64(5);
        let mut idx: Vec<usize> = (0..20).collect();
        for _ in 0..5 {
            idx.shuffle(&mut rng);
            let a: Vec<bool> = (0..20).map(|i| idx[..10].contains(&i)).collect();
            let c = PartColoring::two_coloring(g.clone(), &a).unwrap();
            for mode in [StabilizerMode::FixEachPart, StabilizerMode::FixPair] {
                let s = stabilizer(&c, mode).unwrap();
                assert_eq!(s.satisfies_group_axioms(), Some(true));
                assert_eq!(720 % s.order(), 0);
            }
        }
        let big = Arc::new(JohnsonGraph::new(9, 3).unwrap());
        let c = PartColoring::from_assignment(big, vec![0; 84]).unwrap();
        assert!(stabilizer(&c, StabilizerMode::FixEachPart).is_err());
    }
}
