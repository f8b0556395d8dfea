//! Perfect 2-colorings as solutions of 0/1 integer-linear systems.
//!
//! One boolean variable per vertex of `J(n,k)` (indexed like the graph's
//! vertices); `x_v = 1` iff `v ∈ X1`. The neighborhood equations say that a
//! vertex has `p11` neighbors in `X1` if it lies there and `p21` otherwise.

mod solver;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::{verify_perfect, PartColoring, QuotientMatrix};
use crate::error::{Error, Result};
use crate::johnson::{JohnsonGraph, Vertex};
use crate::nbarray::FormId;

pub use solver::{SolveOptions, SolveStats, DEFAULT_SOLUTION_CAP, DEFAULT_TIME_BUDGET};

/// `Σ coef·x_var = rhs`, terms sorted by variable with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub terms: Vec<(u32, i32)>,
    pub rhs: i32,
}

impl Equation {
    fn from_map(map: BTreeMap<u32, i32>, rhs: i32) -> Self {
        Equation { terms: map.into_iter().filter(|&(_, c)| c != 0).collect(), rhs }
    }

    pub fn holds(&self, x: &[bool]) -> bool {
        self.terms.iter().map(|&(v, c)| if x[v as usize] { c } else { 0 }).sum::<i32>() == self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    graph: Arc<JohnsonGraph>,
    quotient: QuotientMatrix,
    equations: Vec<Equation>,
    neighborhood_count: usize,
    seeds: Vec<(u32, bool)>,
}

impl ConstraintSystem {
    /// Neighborhood equations of `graph` for a 2×2 `quotient`.
    pub fn neighborhood(graph: Arc<JohnsonGraph>, quotient: QuotientMatrix) -> Result<Self> {
        if quotient.dim() != 2 {
            return Err(Error::DimensionMismatch(format!("expected a 2x2 quotient, got {}x{}", quotient.dim(), quotient.dim())));
        }
        let r = graph.valency() as u32;
        if quotient.row_sums().iter().any(|&s| s != r) {
            return Err(Error::DimensionMismatch(format!("quotient rows must sum to the valency {r}")));
        }
        let (p11, p21) = (quotient.get(0, 0) as i32, quotient.get(1, 0) as i32);
        let equations = (0..graph.order())
            .map(|v| {
                let mut map: BTreeMap<u32, i32> = graph.neighbor_indices(v).iter().map(|&u| (u, 1)).collect();
                map.insert(v as u32, -(p11 - p21));
                Equation::from_map(map, p21)
            })
            .collect::<Vec<_>>();
        Ok(ConstraintSystem {
            neighborhood_count: equations.len(),
            graph,
            quotient,
            equations,
            seeds: Vec::new(),
        })
    }

    /// Adds the pair-count identities
    /// `ol(ab*) − ol(ac*) = 3(ol(abd)+ol(abe)+ol(cde)−ol(acd)−ol(ace)−ol(bde))`
    /// for every canonical `(a,{b,c},{d,e})`; only meaningful on `J(10,3)`
    /// with quotient `[[12,9],[9,12]]`.
    pub fn add_pair_identities(&mut self) -> Result<usize> {
        let g = &self.graph;
        if g.n() != 10 || g.k() != 3 || self.quotient != QuotientMatrix::symmetric_theta2(10) {
            return Err(Error::ParameterOutOfRange(
                "pair identities need J(10,3) with quotient [[12,9],[9,12]]".into(),
            ));
        }
        let idx = |t: [u8; 3]| g.index_of(Vertex::of(&t)).expect("triple of J(10,3)") as u32;
        let before = self.equations.len();
        for t in pair_identity_tuples() {
            let (a, b, c, d, e) = (t.a, t.b.0, t.b.1, t.de.0, t.de.1);
            let mut map = BTreeMap::<u32, i32>::new();
            for x in 1..=10u8 {
                if x != a && x != b {
                    *map.entry(idx([a, b, x])).or_default() += 1;
                }
                if x != a && x != c {
                    *map.entry(idx([a, c, x])).or_default() -= 1;
                }
            }
            for (tri, s) in [([a, b, d], -3), ([a, b, e], -3), ([c, d, e], -3), ([a, c, d], 3), ([a, c, e], 3), ([b, d, e], 3)] {
                *map.entry(idx(tri)).or_default() += s;
            }
            self.equations.push(Equation::from_map(map, 0));
        }
        Ok(self.equations.len() - before)
    }

    pub fn add_seed(&mut self, v: Vertex, value: bool) -> Result<()> {
        let i = self.graph.try_index(v)?;
        self.seeds.push((i as u32, value));
        Ok(())
    }

    pub fn graph(&self) -> &Arc<JohnsonGraph> {
        &self.graph
    }

    pub fn quotient(&self) -> &QuotientMatrix {
        &self.quotient
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn neighborhood_equations(&self) -> &[Equation] {
        &self.equations[..self.neighborhood_count]
    }

    pub fn seeds(&self) -> &[(u32, bool)] {
        &self.seeds
    }

    pub fn var_count(&self) -> usize {
        self.graph.order()
    }

    /// Whether `x` satisfies every equation and seed.
    pub fn satisfied_by(&self, x: &[bool]) -> bool {
        x.len() == self.var_count()
            && self.equations.iter().all(|e| e.holds(x))
            && self.seeds.iter().all(|&(v, val)| x[v as usize] == val)
    }
}

/// A canonical choice `(a, {b,c}, {d,e})` of five distinct points of `[10]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairIdentityTuple {
    pub a: u8,
    pub b: (u8, u8),
    pub de: (u8, u8),
}

/// All 10·36·21 = 7560 canonical tuples.
pub fn pair_identity_tuples() -> Vec<PairIdentityTuple> {
    let mut out = Vec::with_capacity(7560);
    for a in 1..=10u8 {
        for b in 1..=10u8 {
            for c in b + 1..=10 {
                for d in 1..=10u8 {
                    for e in d + 1..=10 {
                        let pts = [a, b, c, d, e];
                        let distinct = (0..5).all(|i| (i + 1..5).all(|j| pts[i] != pts[j]));
                        if distinct {
                            out.push(PairIdentityTuple { a, b: (b, c), de: (d, e) });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Seeds `abc ∈ X1` and its 21 neighbors according to a form matrix, with
/// columns labelled by `column_labels`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeedSpec {
    pub center: Vertex,
    pub column_labels: Vec<u8>,
    pub form: Option<FormId>,
}

impl SeedSpec {
    /// Center `{1,2,3}`, columns `4..=10`.
    pub fn standard(form: FormId) -> Self {
        SeedSpec { center: Vertex::of(&[1, 2, 3]), column_labels: (4..=10).collect(), form: Some(form) }
    }

    /// The seeded values, center first, then rows `ab`, `ac`, `bc`.
    pub fn assignment(&self) -> Result<Vec<(Vertex, bool)>> {
        let e = self.center.elements();
        if e.len() != 3 || self.center.max_element() > 10 {
            return Err(Error::InvalidSeed(format!("center {} is not a vertex of J(10,3)", self.center)));
        }
        let mut out = vec![(self.center, true)];
        let Some(form) = self.form else {
            return Ok(out);
        };
        let mut cols = self.column_labels.clone();
        cols.sort_unstable();
        let expected: Vec<u8> = (1..=10).filter(|x| !self.center.contains(*x)).collect();
        if cols != expected {
            return Err(Error::InvalidSeed(format!(
                "column labels {:?} are not the complement of {}",
                self.column_labels, self.center
            )));
        }
        let rows = [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])];
        let m = form.matrix();
        for (r, &(p, q)) in rows.iter().enumerate() {
            for (c, &x) in self.column_labels.iter().enumerate() {
                out.push((Vertex::of(&[p, q, x]), m[r][c] == 1));
            }
        }
        Ok(out)
    }
}

/// The `J(10,3)` system for quotient `[[12,9],[9,12]]` with `seed` applied.
pub fn build_system(seed: &SeedSpec, include_pair_identities: bool) -> Result<ConstraintSystem> {
    let graph = Arc::new(JohnsonGraph::new(10, 3)?);
    let mut s = ConstraintSystem::neighborhood(graph, QuotientMatrix::symmetric_theta2(10))?;
    if include_pair_identities {
        s.add_pair_identities()?;
    }
    for (v, val) in seed.assignment()? {
        s.add_seed(v, val)?;
    }
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeductionResult {
    pub solution_count: usize,
    pub forced_one: Vec<Vertex>,
    pub forced_zero: Vec<Vertex>,
    pub free_classes: Vec<Vec<Vertex>>,
    /// `X1` of each solution, listed only for small counts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Vec<Vertex>>>,
    #[serde(skip)]
    pub assignments: Vec<Vec<bool>>,
    #[serde(skip)]
    pub graph: Option<Arc<JohnsonGraph>>,
    #[serde(skip)]
    pub stats: SolveStats,
    #[serde(skip)]
    pub elapsed: std::time::Duration,
}

/// Largest solution count listed explicitly in a result.
pub const LISTED_SOLUTIONS: usize = 16;

impl DeductionResult {
    fn from_assignments(graph: Arc<JohnsonGraph>, assignments: Vec<Vec<bool>>) -> Self {
        let n = graph.order();
        let mut forced_one = Vec::new();
        let mut forced_zero = Vec::new();
        let mut classes = BTreeMap::<Vec<bool>, Vec<Vertex>>::new();
        if !assignments.is_empty() {
            for v in 0..n {
                let column: Vec<bool> = assignments.iter().map(|a| a[v]).collect();
                if column.iter().all(|&x| x) {
                    forced_one.push(graph.vertex(v));
                } else if column.iter().all(|&x| !x) {
                    forced_zero.push(graph.vertex(v));
                } else {
                    classes.entry(column).or_default().push(graph.vertex(v));
                }
            }
        }
        let mut free_classes: Vec<Vec<Vertex>> = classes.into_values().collect();
        free_classes.sort_by_key(|c| graph.index_of(c[0]));
        let solutions = (assignments.len() <= LISTED_SOLUTIONS).then(|| {
            assignments
                .iter()
                .map(|a| (0..n).filter(|&v| a[v]).map(|v| graph.vertex(v)).collect())
                .collect()
        });
        DeductionResult {
            solution_count: assignments.len(),
            forced_one,
            forced_zero,
            free_classes,
            solutions,
            assignments,
            graph: Some(graph),
            stats: SolveStats::default(),
            elapsed: std::time::Duration::ZERO,
        }
    }

    pub fn is_unsat(&self) -> bool {
        self.solution_count == 0
    }

    /// Whether two free classes take opposite values in every solution.
    pub fn anti_correlated(&self, i: usize, j: usize) -> bool {
        let g = self.graph.as_ref().expect("result carries its graph");
        let (Some(x), Some(y)) = (self.free_classes.get(i), self.free_classes.get(j)) else {
            return false;
        };
        let (x, y) = (g.index_of(x[0]).unwrap(), g.index_of(y[0]).unwrap());
        self.assignments.iter().all(|a| a[x] != a[y])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }
}

/// Enumerates every solution of `s`.
pub fn enumerate_solutions(s: &ConstraintSystem, opts: &SolveOptions) -> Result<DeductionResult> {
    let start = Instant::now();
    let (assignments, stats) = solver::solve(s.var_count(), &s.equations, &s.seeds, opts)?;
    debug_assert!(assignments.iter().all(|a| s.satisfied_by(a)));
    let mut r = DeductionResult::from_assignments(s.graph.clone(), assignments);
    r.stats = stats;
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Seeds `form` at the standard labeling and enumerates.
pub fn check_form_realizable(form: FormId, include_pair_identities: bool, opts: &SolveOptions) -> Result<DeductionResult> {
    let s = build_system(&SeedSpec::standard(form), include_pair_identities)?;
    enumerate_solutions(&s, opts)
}

/// Values of `ol(ab*)` attained across solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum AbStar {
    Constant(u32),
    Values(BTreeSet<u32>),
}

pub fn derive_abstar(r: &DeductionResult, a: u8, b: u8) -> Result<AbStar> {
    let g = r.graph.as_ref().expect("result carries its graph");
    if a == b || a == 0 || b == 0 || a as usize > g.n() || b as usize > g.n() {
        return Err(Error::ParameterOutOfRange(format!("({a},{b}) is not a pair of [{}]", g.n())));
    }
    let pair = 1u64 << (a - 1) | 1u64 << (b - 1);
    let members: Vec<usize> = (0..g.order()).filter(|&v| g.vertex(v).mask() & pair == pair).collect();
    let values: BTreeSet<u32> = r
        .assignments
        .iter()
        .map(|x| members.iter().filter(|&&v| x[v]).count() as u32)
        .collect();
    Ok(match values.len() {
        1 => AbStar::Constant(*values.first().unwrap()),
        _ => AbStar::Values(values),
    })
}

/// Each solution as a 2-coloring with `X1` = part 0. Panics if a solution
/// is not perfect with the system's quotient.
pub fn solutions_to_colorings(r: &DeductionResult, quotient: &QuotientMatrix) -> Result<Vec<PartColoring>> {
    let g = r.graph.as_ref().expect("result carries its graph");
    r.assignments
        .iter()
        .map(|a| {
            let c = PartColoring::two_coloring(g.clone(), a)?;
            let q = verify_perfect(&c).unwrap_or_else(|w| panic!("solution is not perfect: {w:?}"));
            assert_eq!(&q, quotient, "solution has the wrong quotient");
            Ok(c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{coloring_isomorphic, Permutation};

    fn triples(list: &[[u8; 3]]) -> BTreeSet<Vertex> {
        list.iter().map(|t| Vertex::of(t)).collect()
    }

    fn split(seed: &SeedSpec) -> (BTreeSet<Vertex>, BTreeSet<Vertex>) {
        let a = seed.assignment().unwrap();
        (
            a.iter().filter(|x| x.1).map(|x| x.0).collect(),
            a.iter().filter(|x| !x.1).map(|x| x.0).collect(),
        )
    }

    #[test]
    fn seeds_match_listed_generators() {
        let (ones, zeros) = split(&SeedSpec::standard(FormId::new(2).unwrap()));
        assert_eq!(
            ones,
            triples(&[
                [1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 2, 6], [1, 2, 7], [1, 2, 8], [1, 3, 4],
                [1, 3, 5], [1, 3, 6], [1, 3, 7], [1, 3, 9], [2, 3, 4], [2, 3, 5]
            ])
        );
        assert_eq!(
            zeros,
            triples(&[
                [1, 2, 9], [1, 2, 10], [1, 3, 8], [1, 3, 10], [2, 3, 6], [2, 3, 7], [2, 3, 8],
                [2, 3, 9], [2, 3, 10]
            ])
        );
        let (ones, zeros) = split(&SeedSpec::standard(FormId::new(3).unwrap()));
        assert_eq!(
            ones,
            triples(&[
                [1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 2, 6], [1, 2, 7], [1, 2, 8], [1, 2, 9],
                [1, 3, 4], [1, 3, 5], [1, 3, 6], [2, 3, 4], [2, 3, 5], [2, 3, 7]
            ])
        );
        assert_eq!(
            zeros,
            triples(&[
                [1, 2, 10], [1, 3, 7], [1, 3, 8], [1, 3, 9], [1, 3, 10], [2, 3, 6], [2, 3, 8],
                [2, 3, 9], [2, 3, 10]
            ])
        );
        let bare = SeedSpec { form: None, ..SeedSpec::standard(FormId::new(1).unwrap()) };
        assert_eq!(build_system(&bare, false).unwrap().seeds().len(), 1);
        let bad = SeedSpec { column_labels: vec![4, 5, 6, 7, 8, 9, 9], ..SeedSpec::standard(FormId::new(1).unwrap()) };
        assert!(matches!(build_system(&bad, false), Err(Error::InvalidSeed(_))));
    }

    #[test]
    fn pair_identity_count() {
        let tuples = pair_identity_tuples();
        assert_eq!(tuples.len(), 7560);
        let mut s = build_system(&SeedSpec::standard(FormId::new(2).unwrap()), false).unwrap();
        assert_eq!(s.equations().len(), 120);
        assert_eq!(s.add_pair_identities().unwrap(), 7560);
        let small = Arc::new(JohnsonGraph::new(6, 3).unwrap());
        let mut s = ConstraintSystem::neighborhood(small, QuotientMatrix::parse("4,5;5,4").unwrap()).unwrap();
        assert!(s.add_pair_identities().is_err());
    }

    #[test]
    fn neighborhood_equation_shape() {
        let s = build_system(&SeedSpec::standard(FormId::new(2).unwrap()), false).unwrap();
        for (v, e) in s.neighborhood_equations().iter().enumerate() {
            assert_eq!(e.rhs, 9);
            assert_eq!(e.terms.len(), 22);
            assert!(e.terms.contains(&(v as u32, -3)));
        }
        let g = Arc::new(JohnsonGraph::new(6, 3).unwrap());
        assert!(ConstraintSystem::neighborhood(g.clone(), QuotientMatrix::parse("4,4;5,4").unwrap()).is_err());
        assert!(ConstraintSystem::neighborhood(g, QuotientMatrix::parse("9").unwrap()).is_err());
    }

    #[test]
    fn j63_matches_brute_force() {
        let g = Arc::new(JohnsonGraph::new(6, 3).unwrap());
        let s = ConstraintSystem::neighborhood(g.clone(), QuotientMatrix::parse("4,5;5,4").unwrap()).unwrap();
        let opts = SolveOptions { max_solutions: 1 << 20, ..Default::default() };
        let r = enumerate_solutions(&s, &opts).unwrap();
        let mut brute: Vec<Vec<bool>> = (0u32..1 << 20)
            .map(|m| (0..20).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|x| s.satisfied_by(x))
            .collect();
        brute.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(r.assignments, brute);
        assert_eq!(r.solution_count, 252);
        assert!(r.solutions.is_none());
        let par = SolveOptions { workers: 4, ..opts };
        assert_eq!(enumerate_solutions(&s, &par).unwrap().assignments, brute);
    }

    #[test]
    fn contradictory_seed_is_unsat() {
        let mut s = build_system(&SeedSpec::standard(FormId::new(2).unwrap()), false).unwrap();
        s.add_seed(Vertex::of(&[4, 5, 6]), true).unwrap();
        s.add_seed(Vertex::of(&[4, 5, 6]), false).unwrap();
        let r = enumerate_solutions(&s, &SolveOptions::default()).unwrap();
        assert!(r.is_unsat());
        assert!(r.forced_one.is_empty() && r.free_classes.is_empty());
    }

    #[test]
    fn type_zero_seed() {
        let seed = SeedSpec::standard(FormId::new(2).unwrap());
        let s = build_system(&seed, true).unwrap();
        let r = enumerate_solutions(&s, &SolveOptions::default()).unwrap();
        assert_eq!(r.solution_count, 2);
        assert_eq!((r.forced_one.len(), r.forced_zero.len()), (48, 48));
        assert_eq!(r.free_classes.iter().map(Vec::len).collect::<Vec<_>>(), [12, 12]);
        assert!(r.anti_correlated(0, 1));
        assert!(r.assignments.iter().all(|a| s.satisfied_by(a)));

        let plain = enumerate_solutions(&build_system(&seed, false).unwrap(), &SolveOptions::default()).unwrap();
        assert_eq!(plain.assignments, r.assignments);

        let t = Permutation::parse_cycles("(6,7)", 10).unwrap();
        let swapped: BTreeSet<Vertex> = r.free_classes[0].iter().map(|&v| t.apply_vertex(v)).collect();
        assert_eq!(swapped, r.free_classes[1].iter().copied().collect());

        let cs = solutions_to_colorings(&r, &QuotientMatrix::symmetric_theta2(10)).unwrap();
        assert!(cs.iter().all(|c| c.part_sizes() == [60, 60]));
        let w = coloring_isomorphic(&cs[0], &cs[1], false).unwrap();
        assert!(w.is_some());
        assert_eq!(derive_abstar(&r, 1, 2).unwrap(), AbStar::Constant(6));
    }
}
