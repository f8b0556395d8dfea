//! Johnson graphs `J(n,k)`.
//!
//! Vertices are `k`-subsets of `{1,…,n}` stored as bitmasks (bit `i-1` set
//! iff `i` is an element). Two vertices are adjacent iff they share `k-1`
//! elements. Vertex indices follow colexicographic order, which for bitmasks
//! is plain numeric order of the mask.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground set supported by the bitmask representation.
pub const MAX_N: usize = 64;

/// Upper bound on the number of vertices `build` will materialize.
pub const MAX_VERTICES: u64 = 1_000_000;

/// A finite subset of `{1,…,64}`; a vertex of some `J(n,k)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(u64);

impl Vertex {
    pub const fn from_mask(mask: u64) -> Self {
        Vertex(mask)
    }

    /// Builds a vertex from 1-based elements. Rejects zero, elements above
    /// [`MAX_N`], and repeats.
    pub fn from_elements(elements: &[u8]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e as usize > MAX_N {
                return Err(Error::InvalidVertex(format!("element {e} out of range")));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidVertex(format!("element {e} repeated")));
            }
            mask |= bit;
        }
        Ok(Vertex(mask))
    }

    /// Shorthand for tests and tables where the input is known to be valid.
    ///
    /// Panics on invalid input.
    pub fn of(elements: &[u8]) -> Self {
        Self::from_elements(elements).expect("valid vertex literal")
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, element: u8) -> bool {
        element >= 1 && (element as usize) <= MAX_N && self.0 & (1u64 << (element - 1)) != 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> Vec<u8> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let tz = rest.trailing_zeros();
                rest &= rest - 1;
                Some(tz as u8 + 1)
            }
        })
    }

    pub const fn intersection_size(self, other: Vertex) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    pub const fn max_element(self) -> u8 {
        if self.0 == 0 {
            0
        } else {
            64 - self.0.leading_zeros() as u8
        }
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<u8>::deserialize(deserializer)?;
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(serde::de::Error::custom(format!(
                "vertex elements must be strictly ascending: {elements:?}"
            )));
        }
        Vertex::from_elements(&elements).map_err(serde::de::Error::custom)
    }
}

/// The Johnson graph `J(n,k)` with materialized vertex list and adjacency.
#[derive(Clone, Debug)]
pub struct JohnsonGraph {
    n: usize,
    k: usize,
    vertices: Vec<Vertex>,
    index: HashMap<u64, u32>,
    adjacency: Vec<Vec<u32>>,
}

impl JohnsonGraph {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::ParameterOutOfRange(format!("n = {n} must be in 1..={MAX_N}")));
        }
        if k == 0 || k > n {
            return Err(Error::ParameterOutOfRange(format!("k = {k} must be in 1..={n}")));
        }
        let count = binomial(n as u64, k as u64);
        if count > MAX_VERTICES {
            return Err(Error::ParameterOutOfRange(format!(
                "C({n},{k}) = {count} exceeds {MAX_VERTICES}"
            )));
        }

        let vertices: Vec<Vertex> = KSubsets::new(n, k).map(Vertex).collect();
        debug_assert_eq!(vertices.len() as u64, count);
        let index: HashMap<u64, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.0, i as u32))
            .collect();

        let full = full_mask(n);
        let adjacency = vertices
            .iter()
            .map(|v| {
                let mut nbrs = Vec::with_capacity(k * (n - k));
                for out in bits(v.0) {
                    for into in bits(full & !v.0) {
                        nbrs.push(index[&(v.0 ^ out ^ into)]);
                    }
                }
                nbrs.sort_unstable();
                nbrs
            })
            .collect();

        Ok(JohnsonGraph { n, k, vertices, index, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn valency(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        self.vertices[index]
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v.0).map(|&i| i as usize)
    }

    pub fn try_index(&self, v: Vertex) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::VertexNotInGraph(v.to_string(), self.n, self.k))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index.contains_key(&v.0)
    }

    /// Neighbor indices of the vertex at `index`, ascending.
    pub fn neighbor_indices(&self, index: usize) -> &[u32] {
        &self.adjacency[index]
    }

    pub fn are_adjacent(&self, x: Vertex, y: Vertex) -> bool {
        x.len() == self.k && y.len() == self.k && x.intersection_size(y) + 1 == self.k
    }

    /// `k - |x ∩ y|`.
    pub fn distance(&self, x: Vertex, y: Vertex) -> Result<usize> {
        self.try_index(x)?;
        self.try_index(y)?;
        Ok(self.k - x.intersection_size(y))
    }

    /// The `k(n-k)` neighbors of `v` in canonical vertex order.
    pub fn neighborhood(&self, v: Vertex) -> Result<Vec<Vertex>> {
        let i = self.try_index(v)?;
        Ok(self.adjacency[i].iter().map(|&j| self.vertices[j as usize]).collect())
    }

    /// `[n] \ v`, defined only when `n = 2k`.
    pub fn complement(&self, v: Vertex) -> Result<Vertex> {
        if self.n != 2 * self.k {
            return Err(Error::ParameterOutOfRange(format!(
                "complementation needs n = 2k, got J({},{})",
                self.n, self.k
            )));
        }
        self.try_index(v)?;
        Ok(Vertex(full_mask(self.n) & !v.0))
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.n)
    }
}

/// Closed-form eigenvalue `θ_i = (k-i)(n-k-i) - i` of `J(n,k)`.
pub fn johnson_eigenvalue(n: usize, k: usize, i: usize) -> Result<i64> {
    if k > n {
        return Err(Error::ParameterOutOfRange(format!("k = {k} > n = {n}")));
    }
    if i > k {
        return Err(Error::ParameterOutOfRange(format!("eigenvalue index {i} > k = {k}")));
    }
    let (n, k, i) = (n as i64, k as i64, i as i64);
    Ok((k - i) * (n - k - i) - i)
}

/// All `θ_0,…,θ_k`.
pub fn johnson_eigenvalues(n: usize, k: usize) -> Result<Vec<i64>> {
    (0..=k).map(|i| johnson_eigenvalue(n, k, i)).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the single-bit masks of `mask`, low to high.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = u64> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let low = mask & mask.wrapping_neg();
            mask ^= low;
            Some(low)
        }
    })
}

/// `k`-subsets of an `n`-set as masks in increasing numeric order (Gosper).
pub(crate) struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl KSubsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let next = if k <= n && n <= 64 { Some(full_mask(k)) } else { None };
        let limit = full_mask(n);
        KSubsets { next: if k == 0 { Some(0) } else { next }, limit }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur & !self.limit != 0 {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                Some((((r ^ cur) >> 2) / c) | r)
            }
        };
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_valency() {
        let g = JohnsonGraph::new(6, 3).unwrap();
        assert_eq!(g.order(), 20);
        assert_eq!(g.valency(), 9);
        let g = JohnsonGraph::new(10, 3).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.valency(), 21);
        let g = JohnsonGraph::new(2, 1).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.neighbor_indices(0), &[1]);
        assert_eq!(g.neighbor_indices(1), &[0]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(JohnsonGraph::new(0, 0).is_err());
        assert!(JohnsonGraph::new(5, 0).is_err());
        assert!(JohnsonGraph::new(5, 6).is_err());
        assert!(JohnsonGraph::new(40, 20).is_err());
        assert!(JohnsonGraph::new(65, 1).is_err());
    }

    #[test]
    fn colex_order() {
        let g = JohnsonGraph::new(5, 2).unwrap();
        let listed: Vec<Vec<u8>> = g.vertices().iter().map(|v| v.elements()).collect();
        assert_eq!(
            listed,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 4],
                vec![2, 4],
                vec![3, 4],
                vec![1, 5],
                vec![2, 5],
                vec![3, 5],
                vec![4, 5]
            ]
        );
    }

    #[test]
    fn distances() {
        let g = JohnsonGraph::new(6, 3).unwrap();
        let d = |a: &[u8], b: &[u8]| g.distance(Vertex::of(a), Vertex::of(b)).unwrap();
        assert_eq!(d(&[1, 2, 3], &[1, 2, 3]), 0);
        assert_eq!(d(&[1, 2, 3], &[4, 5, 6]), 3);
        assert_eq!(d(&[1, 2, 3], &[1, 2, 4]), 1);
        assert!(g.distance(Vertex::of(&[1, 2, 7]), Vertex::of(&[1, 2, 3])).is_err());
        assert!(g.distance(Vertex::of(&[1, 2]), Vertex::of(&[1, 2, 3])).is_err());
    }

    #[test]
    fn neighborhoods() {
        let g = JohnsonGraph::new(6, 3).unwrap();
        let v = Vertex::of(&[1, 2, 3]);
        let nb = g.neighborhood(v).unwrap();
        assert_eq!(nb.len(), 9);
        assert!(nb.iter().all(|u| u.intersection_size(v) == 2));
        assert!(nb.windows(2).all(|w| w[0] < w[1]));

        let g = JohnsonGraph::new(10, 3).unwrap();
        assert_eq!(g.neighborhood(v).unwrap().len(), 21);

        let g = JohnsonGraph::new(2, 1).unwrap();
        assert_eq!(g.neighborhood(Vertex::of(&[1])).unwrap(), vec![Vertex::of(&[2])]);
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(johnson_eigenvalue(10, 3, 0).unwrap(), 21);
        assert_eq!(johnson_eigenvalue(10, 3, 2).unwrap(), 3);
        assert_eq!(johnson_eigenvalue(6, 3, 2).unwrap(), -1);
        assert!(johnson_eigenvalue(6, 3, 4).is_err());
        assert_eq!(johnson_eigenvalues(6, 3).unwrap(), vec![9, 3, -1, -3]);
    }

    #[test]
    fn complementation() {
        let g = JohnsonGraph::new(6, 3).unwrap();
        let c = |a: &[u8]| g.complement(Vertex::of(a)).unwrap();
        assert_eq!(c(&[1, 2, 3]), Vertex::of(&[4, 5, 6]));
        assert_eq!(c(&[1, 5, 6]), Vertex::of(&[2, 3, 4]));
        for &v in g.vertices() {
            let w = g.complement(v).unwrap();
            assert_eq!(g.complement(w).unwrap(), v);
            // unique antipode
            let far: Vec<_> = g.vertices().iter().filter(|&&u| g.distance(v, u).unwrap() == 3).collect();
            assert_eq!(far, vec![&w]);
        }
        assert!(JohnsonGraph::new(7, 3).unwrap().complement(Vertex::of(&[1, 2, 3])).is_err());
    }

    #[test]
    fn complement_is_automorphism() {
        let g = JohnsonGraph::new(6, 3).unwrap();
        for &x in g.vertices() {
            for &y in g.vertices() {
                let (cx, cy) = (g.complement(x).unwrap(), g.complement(y).unwrap());
                assert_eq!(g.are_adjacent(x, y), g.are_adjacent(cx, cy));
            }
        }
    }

    #[test]
    fn regular_for_small_parameters() {
        for n in 1..=10 {
            for k in 1..=n {
                let g = JohnsonGraph::new(n, k).unwrap();
                assert_eq!(g.order() as u64, binomial(n as u64, k as u64));
                for i in 0..g.order() {
                    assert_eq!(g.neighbor_indices(i).len(), k * (n - k));
                }
            }
        }
    }

    #[test]
    fn distance_is_metric_on_j63() {
        let g = JohnsonGraph::new(6, 3).unwrap();
        let vs = g.vertices();
        for &x in vs {
            for &y in vs {
                let dxy = g.distance(x, y).unwrap();
                assert_eq!(dxy == 0, x == y);
                assert_eq!(dxy, g.distance(y, x).unwrap());
                assert_eq!(dxy == 1, g.are_adjacent(x, y));
                for &z in vs {
                    assert!(dxy <= g.distance(x, z).unwrap() + g.distance(z, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn distance_matches_bfs() {
        let g = JohnsonGraph::new(7, 3).unwrap();
        let mut dist = vec![usize::MAX; g.order()];
        dist[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbor_indices(u) {
                if dist[w as usize] == usize::MAX {
                    dist[w as usize] = dist[u] + 1;
                    queue.push_back(w as usize);
                }
            }
        }
        for (i, &d) in dist.iter().enumerate() {
            assert_eq!(d, g.distance(g.vertex(0), g.vertex(i)).unwrap());
        }
    }

    #[test]
    fn vertex_json() {
        let v = Vertex::of(&[1, 2, 10]);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[1,2,10]");
        assert_eq!(serde_json::from_str::<Vertex>("[1,2,10]").unwrap(), v);
        assert!(serde_json::from_str::<Vertex>("[2,1]").is_err());
        assert!(serde_json::from_str::<Vertex>("[0,1]").is_err());
        assert_eq!(v.to_string(), "{1,2,10}");
    }
}
