//! Permutations of `{1,…,n}`, small permutation groups and their action on
//! `k`-subsets.

mod helper;
mod iso;
mod orbits;

pub use helper::{automorphism_group, HelperGraph};
pub use iso::{coloring_isomorphic, set_isomorphism, stabilizer, IsoWitness, StabilizerMode};
pub use orbits::{classify_cycle_orbit, orbits_on_ksubsets, CycleOrbit};

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::johnson::{bits, Vertex};

/// Largest group that may be listed element by element.
pub const MAX_MATERIALIZED_ORDER: u64 = 100_000;

/// A bijection of `{1,…,n}`. Stored 0-based: `images[i]` is the image of
/// `i+1`, minus one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// From 1-based images: `images[i]` is where `i+1` goes.
    pub fn from_images(images: &[u8]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x as usize > n || seen[x as usize - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x as usize - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|&x| x - 1).collect() })
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| x as usize == i)
        });
        Permutation { images }
    }

    /// Parses cycle notation such as `"(1,2)(3,9,4)"`; `"()"` or `""` is the
    /// identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut seen = vec![false; n];
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' in {text:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::Parse(format!("unclosed cycle in {text:?}")));
            };
            let inner = &body[..close];
            rest = &body[close + 1..];
            if inner.is_empty() {
                continue;
            }
            let points = inner
                .split(',')
                .map(|x| {
                    let p: usize = x.parse().map_err(|_| Error::Parse(format!("bad point {x:?}")))?;
                    if p == 0 || p > n {
                        return Err(Error::InvalidPermutation(format!("point {p} outside 1..={n}")));
                    }
                    if std::mem::replace(&mut seen[p - 1], true) {
                        return Err(Error::InvalidPermutation(format!("point {p} repeated")));
                    }
                    Ok(p as u8 - 1)
                })
                .collect::<Result<Vec<u8>>>()?;
            for (i, &p) in points.iter().enumerate() {
                images[p as usize] = points[(i + 1) % points.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize - 1] + 1
    }

    pub(crate) fn image0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<u8> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn apply_mask(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |acc, b| acc | 1u64 << self.images[b.trailing_zeros() as usize])
    }

    pub fn apply_vertex(&self, v: Vertex) -> Vertex {
        Vertex::from_mask(self.apply_mask(v.mask()))
    }

    /// `x ↦ other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i)
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u8 + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(u8::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A permutation group on `{1,…,n}` given by generators and its order;
/// small groups also carry their sorted element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    order: u64,
    elements: Option<Vec<Permutation>>,
}

impl PermGroup {
    /// The group generated by `generators`, materialized by closure.
    pub fn generate(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(Error::InvalidPermutation(format!("{g} does not act on {n} points")));
        }
        let id = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    if seen.len() as u64 > MAX_MATERIALIZED_ORDER {
                        return Err(Error::GroupTooLarge(seen.len() as u64));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(PermGroup {
            n,
            generators,
            order: elements.len() as u64,
            elements: Some(elements),
        })
    }

    /// A group whose order is known but which is too large to list.
    pub(crate) fn from_generators_and_order(n: usize, generators: Vec<Permutation>, order: u64) -> Self {
        PermGroup { n, generators, order, elements: None }
    }

    /// Wraps an element list that is already known to be a group. The list
    /// doubles as the generating set.
    pub(crate) fn from_elements(n: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        PermGroup {
            n,
            generators: elements.iter().filter(|e| !e.is_identity()).cloned().collect(),
            order: elements.len() as u64,
            elements: Some(elements),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    pub fn contains(&self, p: &Permutation) -> Option<bool> {
        self.elements.as_ref().map(|e| e.binary_search(p).is_ok())
    }

    /// Element order ↦ number of elements of that order.
    pub fn element_orders(&self) -> Option<BTreeMap<u64, usize>> {
        let elements = self.elements.as_ref()?;
        let mut out = BTreeMap::new();
        for e in elements {
            *out.entry(e.order()).or_insert(0) += 1;
        }
        Some(out)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|a| gens.iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Checks closure under composition and inverses and presence of the
    /// identity, exhaustively.
    pub fn satisfies_group_axioms(&self) -> Option<bool> {
        let elements = self.elements.as_ref()?;
        let set: HashSet<&Permutation> = elements.iter().collect();
        let has_id = set.contains(&Permutation::identity(self.n));
        let closed = elements
            .iter()
            .all(|a| set.contains(&a.inverse()) && elements.iter().all(|b| set.contains(&a.then(b))));
        Some(has_id && closed)
    }

    /// Same element set.
    pub fn same_elements(&self, other: &PermGroup) -> Option<bool> {
        Some(self.elements.as_ref()? == other.elements.as_ref()?)
    }

    /// Recognizes a dihedral group of order `2m`: an element `r` of order
    /// `m` and an involution `s ∉ ⟨r⟩` with `s r s = r⁻¹`. For `m ≥ 3` this
    /// also makes the group nonabelian.
    pub fn dihedral_witness(&self) -> Option<DihedralWitness> {
        let elements = self.elements.as_ref()?;
        if !self.order.is_multiple_of(2) {
            return None;
        }
        let m = self.order / 2;
        for r in elements.iter().filter(|e| e.order() == m) {
            let mut power = Permutation::identity(self.n);
            let mut cyclic = HashSet::new();
            for _ in 0..m {
                cyclic.insert(power.clone());
                power = power.then(r);
            }
            let r_inv = r.inverse();
            let s = elements.iter().find(|s| {
                s.order() == 2 && !cyclic.contains(*s) && s.then(r).then(s) == r_inv
            });
            if let Some(s) = s {
                return Some(DihedralWitness { m, rotation: r.clone(), reflection: s.clone() });
            }
        }
        None
    }
}

/// Constructive proof that a group is dihedral of order `2m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DihedralWitness {
    pub m: u64,
    pub rotation: Permutation,
    pub reflection: Permutation,
}

/// Iterates all permutations of `0..n` in lexicographic order.
pub(crate) fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut cur: Option<Vec<u8>> = Some((0..n as u8).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let a = cur.as_mut().unwrap();
        // next lexicographic permutation
        match (0..a.len().saturating_sub(1)).rev().find(|&i| a[i] < a[i + 1]) {
            None => cur = None,
            Some(i) => {
                let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
                a.swap(i, j);
                a[i + 1..].reverse();
            }
        }
        Some(Permutation::from_zero_based(out))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles("(2,10)(3,9)(4,8)(5,7)", 10).unwrap();
        assert_eq!(p.to_string(), "(2,10)(3,9)(4,8)(5,7)");
        assert_eq!(p.apply(2), 10);
        assert_eq!(p.apply(1), 1);
        assert_eq!(p.order(), 2);
        assert_eq!(Permutation::parse_cycles("()", 4).unwrap(), Permutation::identity(4));
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(serde_json::to_string(&p).unwrap(), "\"(2,10)(3,9)(4,8)(5,7)\"");
        assert!(Permutation::parse_cycles("(1,2)(2,3)", 4).is_err());
        assert!(Permutation::parse_cycles("(1,5)", 4).is_err());
        assert!(Permutation::parse_cycles("(1,2", 4).is_err());
        assert!(Permutation::parse_cycles("1,2", 4).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let r = Permutation::parse_cycles("(1,2,3,4,5,6,7,8,9,10)", 10).unwrap();
        assert_eq!(r.order(), 10);
        assert!(r.then(&r.inverse()).is_identity());
        let r2 = r.then(&r);
        assert_eq!(r2.apply(1), 3);
        let a = Permutation::parse_cycles("(1,2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2,3)", 3).unwrap();
        // then: apply a first
        assert_eq!(a.then(&b).apply(1), 3);
        assert_eq!(b.then(&a).apply(1), 2);
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
        assert_eq!(Permutation::from_images(&[2, 1, 3]).unwrap(), a);
    }

    #[test]
    fn set_action() {
        let p = Permutation::parse_cycles("(1,4)(2,5)", 6).unwrap();
        assert_eq!(p.apply_vertex(Vertex::of(&[1, 2, 3])), Vertex::of(&[3, 4, 5]));
    }

    #[test]
    fn generated_groups() {
        let d10 = PermGroup::generate(
            10,
            vec![
                Permutation::parse_cycles("(1,2,3,4,5,6,7,8,9,10)", 10).unwrap(),
                Permutation::parse_cycles("(2,10)(3,9)(4,8)(5,7)", 10).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(d10.order(), 20);
        assert_eq!(d10.satisfies_group_axioms(), Some(true));
        assert_eq!(d10.dihedral_witness().unwrap().m, 10);
        assert!(!d10.is_abelian());

        let c4 = PermGroup::generate(4, vec![Permutation::parse_cycles("(1,2,3,4)", 4).unwrap()]).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.dihedral_witness().is_none());
        assert!(c4.is_abelian());

        let klein = PermGroup::generate(
            4,
            vec![
                Permutation::parse_cycles("(1,2)(3,4)", 4).unwrap(),
                Permutation::parse_cycles("(1,3)(2,4)", 4).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(klein.dihedral_witness().unwrap().m, 2);
    }

    #[test]
    fn too_large_to_materialize() {
        let gens = vec![
            Permutation::parse_cycles("(1,2)", 9).unwrap(),
            Permutation::parse_cycles("(1,2,3,4,5,6,7,8,9)", 9).unwrap(),
        ];
        assert!(matches!(PermGroup::generate(9, gens), Err(Error::GroupTooLarge(_))));
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<_> = all_permutations(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_permutations(0).count(), 1);
    }
}
