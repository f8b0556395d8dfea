use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::PermGroup;
use crate::coloring::PartColoring;
use crate::error::{Error, Result};
use crate::johnson::{JohnsonGraph, Vertex};

/// Partition of `J(n,k)` into orbits of `group`. Parts are numbered in
/// order of their smallest vertex.
pub fn orbits_on_ksubsets(group: &PermGroup, graph: Arc<JohnsonGraph>) -> Result<PartColoring> {
    if group.degree() != graph.n() {
        return Err(Error::DimensionMismatch(format!(
            "group acts on {} points, graph is J({},{})",
            group.degree(),
            graph.n(),
            graph.k()
        )));
    }
    let mut part_of = vec![usize::MAX; graph.order()];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..graph.order() {
        if part_of[start] != usize::MAX {
            continue;
        }
        part_of[start] = next;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let v = graph.vertex(i);
            for g in group.generators() {
                let j = graph.index_of(g.apply_vertex(v)).expect("permutations preserve size");
                if part_of[j] == usize::MAX {
                    part_of[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    PartColoring::from_assignment(graph, part_of)
}

/// Orbits of the dihedral group of the 10-cycle on 3-subsets of `{1,…,10}`,
/// keyed by the sorted cyclic distances between the three points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CycleOrbit {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl CycleOrbit {
    pub const ALL: [CycleOrbit; 8] = [
        CycleOrbit::A,
        CycleOrbit::B,
        CycleOrbit::C,
        CycleOrbit::D,
        CycleOrbit::E,
        CycleOrbit::F,
        CycleOrbit::G,
        CycleOrbit::H,
    ];

    /// Sorted cyclic distances of a representative triple.
    pub fn distances(self) -> [u8; 3] {
        match self {
            CycleOrbit::A => [1, 1, 2],
            CycleOrbit::B => [1, 2, 3],
            CycleOrbit::C => [1, 3, 4],
            CycleOrbit::D => [1, 4, 5],
            CycleOrbit::E => [2, 2, 4],
            CycleOrbit::F => [2, 3, 5],
            CycleOrbit::G => [2, 4, 4],
            CycleOrbit::H => [3, 3, 4],
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|o| o.letter() == c.to_ascii_uppercase())
    }

    pub fn letter(self) -> char {
        (b'A' + self as u8) as char
    }
}

impl fmt::Display for CycleOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Label of the orbit containing the 3-subset `v` of `{1,…,10}`.
pub fn classify_cycle_orbit(v: Vertex) -> Result<CycleOrbit> {
    let e = v.elements();
    if e.len() != 3 || v.max_element() > 10 {
        return Err(Error::InvalidVertex(format!("{v} is not a 3-subset of [10]")));
    }
    let cyc = |a: u8, b: u8| {
        let d = a.abs_diff(b);
        d.min(10 - d)
    };
    let mut d = [cyc(e[0], e[1]), cyc(e[1], e[2]), cyc(e[0], e[2])];
    d.sort_unstable();
    let label = CycleOrbit::ALL
        .into_iter()
        .find(|o| o.distances() == d)
        .unwrap_or_else(|| panic!("no orbit label for {v} with cyclic distances {d:?}"));
    Ok(label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_perfect;
    use crate::perm::{automorphism_group, HelperGraph, Permutation};

    #[test]
    fn labels() {
        assert_eq!(classify_cycle_orbit(Vertex::of(&[1, 2, 3])).unwrap(), CycleOrbit::A);
        assert_eq!(classify_cycle_orbit(Vertex::of(&[1, 2, 6])).unwrap(), CycleOrbit::D);
        assert_eq!(classify_cycle_orbit(Vertex::of(&[1, 4, 7])).unwrap(), CycleOrbit::H);
        assert!(classify_cycle_orbit(Vertex::of(&[1, 2])).is_err());
        assert!(classify_cycle_orbit(Vertex::of(&[1, 2, 11])).is_err());
    }

    /// Canonical gap necklace of a triple on the 10-cycle: the least gap
    /// sequence over all rotations and reflections.
    fn necklace(v: Vertex) -> [u8; 3] {
        let e = v.elements();
        let gaps = [e[1] - e[0], e[2] - e[1], 10 - e[2] + e[0]];
        let mut best = [u8::MAX; 3];
        for r in 0..3 {
            let rot = [gaps[r], gaps[(r + 1) % 3], gaps[(r + 2) % 3]];
            let refl = [rot[2], rot[1], rot[0]];
            best = best.min(rot).min(refl);
        }
        best
    }

    #[test]
    fn ten_cycle_orbits() {
        let group = automorphism_group(&HelperGraph::cycle(10).unwrap());
        let graph = Arc::new(JohnsonGraph::new(10, 3).unwrap());
        let c = orbits_on_ksubsets(&group, graph.clone()).unwrap();
        assert_eq!(c.m(), 8);

        let mut by_necklace = std::collections::BTreeMap::<[u8; 3], Vec<usize>>::new();
        for (i, &v) in graph.vertices().iter().enumerate() {
            by_necklace.entry(necklace(v)).or_default().push(i);
        }
        assert_eq!(by_necklace.len(), 8);
        let mut sizes = [0usize; 8];
        for members in by_necklace.values() {
            let part = c.part_of(members[0]);
            assert!(members.iter().all(|&i| c.part_of(i) == part));
            assert_eq!(c.part_sizes()[part], members.len());
            let label = classify_cycle_orbit(graph.vertex(members[0])).unwrap();
            assert!(members.iter().all(|&i| classify_cycle_orbit(graph.vertex(i)).unwrap() == label));
            sizes[label.index()] = members.len();
        }
        // gap necklaces (1,1,8) (1,2,7) (1,3,6) (1,4,5) (2,2,6) (2,3,5) (2,4,4) (3,3,4);
        // chiral ones have 20 members, achiral ones 10
        assert_eq!(sizes, [10, 20, 20, 20, 10, 20, 10, 10]);
        assert_eq!(sizes.iter().sum::<usize>(), 120);
        assert!(verify_perfect(&c).is_ok());
    }

    #[test]
    fn trivial_and_full_groups_on_j63() {
        let graph = Arc::new(JohnsonGraph::new(6, 3).unwrap());
        let trivial = PermGroup::generate(6, vec![]).unwrap();
        let c = orbits_on_ksubsets(&trivial, graph.clone()).unwrap();
        assert_eq!(c.m(), 20);
        let s6 = PermGroup::generate(
            6,
            vec![
                Permutation::parse_cycles("(1,2)", 6).unwrap(),
                Permutation::parse_cycles("(1,2,3,4,5,6)", 6).unwrap(),
            ],
        )
        .unwrap();
        let c = orbits_on_ksubsets(&s6, graph.clone()).unwrap();
        assert_eq!(c.m(), 1);
        assert!(orbits_on_ksubsets(&s6, Arc::new(JohnsonGraph::new(7, 3).unwrap())).is_err());
    }

    #[test]
    fn orbit_partitions_are_perfect() {
        let graph = Arc::new(JohnsonGraph::new(8, 3).unwrap());
        for h in [
            HelperGraph::cycle(8).unwrap(),
            HelperGraph::path(8).unwrap(),
            HelperGraph::new(8, [(1, 2), (3, 4), (5, 6), (7, 8)]).unwrap(),
        ] {
            let c = orbits_on_ksubsets(&automorphism_group(&h), graph.clone()).unwrap();
            assert!(verify_perfect(&c).is_ok(), "{h:?}");
        }
    }
}
