use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{PermGroup, Permutation, MAX_MATERIALIZED_ORDER};
use crate::error::{Error, Result};

pub const MAX_HELPER_N: usize = 12;

/// A simple graph on `{1,…,n}` whose automorphisms act on `J(n,k)`.
///
/// JSON form: `{"n":10,"edges":[[1,2],…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHelperGraph", into = "RawHelperGraph")]
pub struct HelperGraph {
    n: usize,
    edges: BTreeSet<(u8, u8)>,
}

#[derive(Serialize, Deserialize)]
struct RawHelperGraph {
    n: usize,
    edges: Vec<[u8; 2]>,
}

impl TryFrom<RawHelperGraph> for HelperGraph {
    type Error = Error;

    fn try_from(raw: RawHelperGraph) -> Result<Self> {
        HelperGraph::new(raw.n, raw.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<HelperGraph> for RawHelperGraph {
    fn from(h: HelperGraph) -> Self {
        RawHelperGraph { n: h.n, edges: h.edges.iter().map(|&(a, b)| [a, b]).collect() }
    }
}

impl HelperGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u8, u8)>) -> Result<Self> {
        if n == 0 || n > MAX_HELPER_N {
            return Err(Error::ParameterOutOfRange(format!("helper graph needs 1 ≤ n ≤ {MAX_HELPER_N}")));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::ParameterOutOfRange(format!("loop at {a}")));
            }
            if a == 0 || b == 0 || a as usize > n || b as usize > n {
                return Err(Error::ParameterOutOfRange(format!("edge ({a},{b}) outside 1..={n}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(HelperGraph { n, edges: set })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(n, (1..=n as u8).map(|i| (i, i % n as u8 + 1)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n as u8).map(|i| (i, i + 1)))
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.edges.iter().copied()
    }

    fn adjacency_masks(&self) -> Vec<u16> {
        let mut adj = vec![0u16; self.n];
        for &(a, b) in &self.edges {
            adj[a as usize - 1] |= 1 << (b - 1);
            adj[b as usize - 1] |= 1 << (a - 1);
        }
        adj
    }
}

/// Full automorphism group of a helper graph.
///
/// Points are processed in order; for point `i`, every candidate image not
/// already in the orbit of `i` under the automorphisms found at this level
/// is tried by a backtracking extension search that fixes `1..i`. The order
/// is the product of the resulting orbit lengths and the discovered maps
/// form a strong generating set.
pub fn automorphism_group(h: &HelperGraph) -> PermGroup {
    let n = h.n;
    let adj = h.adjacency_masks();
    let degree: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();

    let mut generators = Vec::new();
    let mut order: u64 = 1;
    for i in 0..n {
        let mut level: Vec<Permutation> = Vec::new();
        let mut orbit = vec![i];
        for x in i + 1..n {
            if orbit.contains(&x) || degree[x] != degree[i] {
                continue;
            }
            let mut images: Vec<u8> = (0..n as u8).collect();
            images[i] = x as u8;
            let mut used: u16 = ((1u16 << i) - 1) | (1 << x);
            if extend(&adj, &degree, i + 1, &mut images, &mut used, i) {
                let g = Permutation::from_zero_based(images);
                level.push(g);
                orbit = orbit_of(i, &level);
            }
        }
        order *= orbit.len() as u64;
        generators.extend(level);
    }

    if order <= MAX_MATERIALIZED_ORDER {
        let mut group = PermGroup::generate(n, generators).expect("order already bounded");
        debug_assert_eq!(group.order(), order);
        group.order = order;
        group
    } else {
        PermGroup::from_generators_and_order(n, generators, order)
    }
}

fn orbit_of(point: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut orbit = vec![point];
    let mut idx = 0;
    while idx < orbit.len() {
        let p = orbit[idx];
        for g in gens {
            let q = g.image0(p);
            if !orbit.contains(&q) {
                orbit.push(q);
            }
        }
        idx += 1;
    }
    orbit
}

/// Assigns images to points `next..n` given images of `0..next`; checks
/// adjacency against every earlier point. Points below `fixed_upto` are
/// fixed to themselves, point `fixed_upto` already has its image.
fn extend(
    adj: &[u16],
    degree: &[u32],
    next: usize,
    images: &mut [u8],
    used: &mut u16,
    fixed_upto: usize,
) -> bool {
    let n = adj.len();
    // The prefix (fixed points and the chosen image) must be consistent.
    if next == fixed_upto + 1 && !consistent_prefix(adj, images, next) {
        return false;
    }
    if next == n {
        return true;
    }
    for y in 0..n {
        if *used & (1 << y) != 0 || degree[y] != degree[next] {
            continue;
        }
        let ok = (0..next).all(|p| {
            let a = adj[next] & (1 << p) != 0;
            let b = adj[y] & (1 << images[p]) != 0;
            a == b
        });
        if !ok {
            continue;
        }
        images[next] = y as u8;
        *used |= 1 << y;
        if extend(adj, degree, next + 1, images, used, fixed_upto) {
            return true;
        }
        *used &= !(1 << y);
    }
    false
}

fn consistent_prefix(adj: &[u16], images: &[u8], len: usize) -> bool {
    (0..len).all(|a| {
        (0..a).all(|b| (adj[a] & (1 << b) != 0) == (adj[images[a] as usize] & (1 << images[b]) != 0))
    })
}
