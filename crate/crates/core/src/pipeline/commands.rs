use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde_json::{json, Value};

use super::census::census_j63;
use super::constructions::*;
use super::{run_claims, ClaimFn, Report, RunConfig};
use crate::coloring::{
    characteristic_polynomial, induced_adjacency, induced_subgraph_spectrum, part_type, quotient_spectrum,
    verify_perfect, ColoringFile, MergeOutcome, PartColoring, QuotientMatrix,
};
use crate::deduction::{
    build_system, check_form_realizable, derive_abstar, enumerate_solutions, pair_identity_tuples,
    solutions_to_colorings, AbStar, ConstraintSystem, DeductionResult, SeedSpec, SolveOptions,
};
use crate::error::{Error, Result};
use crate::johnson::{johnson_eigenvalues, Vertex};
use crate::nbarray::{
    classify_form, compute_nb_array, grid_violations, row_sum_multisets_for_type, FormId, NbArray,
    X1_ROW_SUM_MULTISETS,
};
use crate::perm::{
    classify_cycle_orbit, coloring_isomorphic, set_isomorphism, stabilizer, PermGroup, Permutation,
    StabilizerMode,
};

fn claim<'a>(id: &'static str, f: impl FnOnce() -> Result<(bool, Value)> + Send + 'a) -> (&'static str, ClaimFn<'a>) {
    (id, Box::new(f))
}

/// The coloring with `part` moved to position 0 (so it plays `X1`).
fn with_first(c: &PartColoring, part: usize) -> Result<PartColoring> {
    if part == 0 {
        return Ok(c.clone());
    }
    let mut order: Vec<usize> = (0..c.m()).collect();
    order.swap(0, part);
    c.reorder_parts(&order)
}

fn nb_arrays(c: &PartColoring, part: usize) -> Result<Vec<NbArray>> {
    let c = with_first(c, part)?;
    c.part(0).into_iter().map(|v| compute_nb_array(&c, v)).collect()
}

fn form_key(f: Option<FormId>) -> String {
    f.map_or_else(|| "none".to_string(), |f| format!("form{}", f.id()))
}

/// Form histogram of the vertices of `part` with `X1 = part`.
fn form_histogram(c: &PartColoring, part: usize) -> Result<BTreeMap<String, usize>> {
    let mut h = BTreeMap::new();
    for a in nb_arrays(c, part)? {
        *h.entry(form_key(classify_form(&a))).or_default() += 1;
    }
    Ok(h)
}

/// `ol(S)` for the triples of `x1` listed by their elements.
fn ol_pair(x1: &BTreeSet<Vertex>, a: u8, b: u8, n: u8) -> i32 {
    (1..=n).filter(|&x| x != a && x != b && x1.contains(&Vertex::of(&[a, b, x]))).count() as i32
}

/// First canonical tuple violating the pair-count identity for `X1 = part`.
fn pair_identity_failure(c: &PartColoring, part: usize) -> Option<Value> {
    let x1: BTreeSet<Vertex> = c.part(part).into_iter().collect();
    let ol = |t: [u8; 3]| i32::from(x1.contains(&Vertex::of(&t)));
    pair_identity_tuples().into_iter().find_map(|t| {
        let (a, b, cc, d, e) = (t.a, t.b.0, t.b.1, t.de.0, t.de.1);
        let lhs = ol_pair(&x1, a, b, 10) - ol_pair(&x1, a, cc, 10);
        let rhs = 3 * (ol([a, b, d]) + ol([a, b, e]) + ol([cc, d, e]) - ol([a, cc, d]) - ol([a, cc, e]) - ol([b, d, e]));
        (lhs != rhs).then(|| json!({ "a": a, "bc": [b, cc], "de": [d, e], "lhs": lhs, "rhs": rhs }))
    })
}

fn cycle_group(n: usize, gens: &[&str]) -> Result<PermGroup> {
    let gens = gens.iter().map(|g| Permutation::parse_cycles(g, n)).collect::<Result<Vec<_>>>()?;
    PermGroup::generate(n, gens)
}

fn theta2() -> QuotientMatrix {
    QuotientMatrix::symmetric_theta2(10)
}

fn orbit_labels(vs: &[Vertex]) -> Result<String> {
    let labels: BTreeSet<char> = vs.iter().map(|&v| classify_cycle_orbit(v).map(|o| o.letter())).collect::<Result<_>>()?;
    Ok(labels.into_iter().collect())
}

// ---------------------------------------------------------------------------
// construct-j10

/// Builds the orbit coloring and both merges, checks them, and writes
/// `orbits.json`, `type0.json` and `type1.json` into `out` when given.
pub fn cmd_construct_j10(out: Option<&Path>, cfg: &RunConfig) -> Report {
    let claims = vec![
        claim("aut-cycle", || {
            let g = ten_cycle_group();
            let expected = cycle_group(10, &["(1,2,3,4,5,6,7,8,9,10)", "(2,10)(3,9)(4,8)(5,7)"])?;
            let dihedral = g.dihedral_witness();
            let ok = g.order() == 20 && g.same_elements(&expected) == Some(true) && dihedral.as_ref().is_some_and(|d| d.m == 10);
            Ok((ok, json!({ "order": g.order(), "generators": g.generators(), "dihedral": dihedral })))
        }),
        claim("orbit-partition", || {
            let c = orbit_coloring()?;
            let mut ok = c.m() == 8;
            let mut orbits = Vec::new();
            for p in 0..c.m() {
                let members = c.part(p);
                let labels = orbit_labels(&members)?;
                ok &= labels.len() == 1 && labels.starts_with((b'A' + p as u8) as char);
                orbits.push(json!({ "label": labels, "size": members.len(), "representative": members[0] }));
            }
            Ok((ok, json!({ "orbits": orbits })))
        }),
        claim("orbit-quotient", || {
            let c = orbit_coloring()?;
            match verify_perfect(&c) {
                Ok(q) => Ok((q == orbit_quotient(), json!({ "quotient": q, "expected": orbit_quotient() }))),
                Err(w) => Ok((false, json!({ "notPerfect": w }))),
            }
        }),
        claim("merge-type0", || merge_claim(TYPE0_MERGE)),
        claim("merge-type1", || merge_claim(TYPE1_MERGE)),
        claim("part-types", || {
            let (t0, t1) = (type0_coloring()?, type1_coloring()?);
            let types0 = [part_type(&t0, 0)?, part_type(&t0, 1)?];
            let types1 = [part_type(&t1, 0)?, part_type(&t1, 1)?];
            let ok = types0 == [0, 2] && types1 == [1, 1];
            Ok((ok, json!({ "P1": types0[0], "P2": types0[1], "P1'": types1[0], "P2'": types1[1] })))
        }),
        claim("non-isomorphic", non_isomorphic_claim),
        claim("pair-identities", || {
            let mut ok = true;
            let mut w = serde_json::Map::new();
            for (name, c) in [("type0", type0_coloring()?), ("type1", type1_coloring()?)] {
                for part in 0..2 {
                    let failure = pair_identity_failure(&c, part);
                    ok &= failure.is_none();
                    w.insert(format!("{name}/part{}", part + 1), failure.unwrap_or(json!("all hold")));
                }
            }
            w.insert("tuples".into(), json!(pair_identity_tuples().len()));
            Ok((ok, Value::Object(w)))
        }),
        claim("forbidden-patterns", || {
            let mut ok = true;
            let mut checked = 0;
            let mut first = Value::Null;
            for c in [type0_coloring()?, type1_coloring()?] {
                for part in 0..2 {
                    let c = with_first(&c, part)?;
                    for &v in c.graph().vertices() {
                        let a = compute_nb_array(&c, v)?;
                        let s = a.row_sums();
                        let gaps_ok = (0..3).all(|i| (0..3).all(|j| matches!(s[i].abs_diff(s[j]), 0 | 3 | 6)));
                        let violations = grid_violations(&a.rows);
                        checked += 1;
                        if (!violations.is_empty() || !gaps_ok) && ok {
                            first = json!({ "array": a, "violations": violations, "rowSums": s });
                            ok = false;
                        }
                    }
                }
            }
            Ok((ok, json!({ "arraysChecked": checked, "firstFailure": first })))
        }),
        claim("row-sum-multisets", || {
            let mut ok = true;
            let mut w = serde_json::Map::new();
            for (name, c) in [("type0", type0_coloring()?), ("type1", type1_coloring()?)] {
                for part in 0..2 {
                    let t = part_type(&c, part)?;
                    let mut hist = BTreeMap::<String, usize>::new();
                    for a in nb_arrays(&c, part)? {
                        let ms = a.row_sum_multiset();
                        ok &= a.total() == 12 && X1_ROW_SUM_MULTISETS.contains(&ms) && row_sum_multisets_for_type(t).contains(&ms);
                        *hist.entry(format!("{ms:?}")).or_default() += 1;
                    }
                    w.insert(format!("{name}/part{}", part + 1), json!({ "type": t, "rowSums": hist }));
                }
            }
            Ok((ok, Value::Object(w)))
        }),
        claim("nb-forms", nb_forms_claim),
        claim("roundtrip", move || {
            let colorings = [("orbits", orbit_coloring()?), ("type0", type0_coloring()?), ("type1", type1_coloring()?)];
            let mut ok = true;
            let mut written = Vec::new();
            for (name, c) in &colorings {
                let text = c.to_file().to_json();
                let back = ColoringFile::from_json(&text)?.into_coloring()?;
                // files list parts by smallest vertex
                ok &= back == c.canonical() && back.to_file().to_json() == text;
                if let Some(dir) = out {
                    std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
                    let path = dir.join(format!("{name}.json"));
                    std::fs::write(&path, &text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    written.push(path.display().to_string());
                }
            }
            Ok((ok, json!({ "written": written })))
        }),
    ];
    run_claims("construct-j10", cfg, claims)
}

fn merge_claim(groups: [&[crate::perm::CycleOrbit]; 2]) -> Result<(bool, Value)> {
    let orbits = orbit_coloring()?;
    let names: Vec<String> = groups.iter().map(|g| g.iter().map(|o| o.letter()).collect()).collect();
    Ok(match merge_orbits(&orbits, groups)? {
        MergeOutcome::Merged { coloring, quotient } => (
            quotient == theta2(),
            json!({ "parts": names, "sizes": coloring.part_sizes(), "quotient": quotient }),
        ),
        MergeOutcome::Rejected(w) => (false, json!({ "parts": names, "rejected": w })),
    })
}

fn non_isomorphic_claim() -> Result<(bool, Value)> {
    let (t0, t1) = (type0_coloring()?, type1_coloring()?);
    let p1 = induced_subgraph_spectrum(&t0, 0);
    let mut ok = true;
    let mut w = serde_json::Map::new();
    for (name, part) in [("P1'", 0), ("P2'", 1)] {
        let other = induced_subgraph_spectrum(&t1, part);
        let diff = p1.first_difference(&other);
        let poly_differs = characteristic_polynomial(&induced_adjacency(&t0, 0)) != characteristic_polynomial(&induced_adjacency(&t1, part));
        ok &= diff.is_some() && poly_differs;
        w.insert(
            format!("P1 vs {name}"),
            json!({
                "firstDifference": diff.map(|(i, a, b)| json!({ "index": i, "P1": a, name: b })),
                "characteristicPolynomialsDiffer": poly_differs,
            }),
        );
    }
    let iso = coloring_isomorphic(&t0, &t1, false)?;
    ok &= iso.is_none();
    w.insert("isomorphism".into(), json!(iso));
    w.insert("P1".into(), json!(p1));
    w.insert("P1'".into(), json!(induced_subgraph_spectrum(&t1, 0)));
    w.insert("P2'".into(), json!(induced_subgraph_spectrum(&t1, 1)));
    Ok((ok, Value::Object(w)))
}

/// (coloring, part, orbit → expected form)
type FormTable = (&'static str, usize, &'static [(char, u8)]);

fn nb_forms_claim() -> Result<(bool, Value)> {
    let expected: [FormTable; 4] = [
        ("type0", 0, &[('A', 2), ('B', 2), ('C', 2), ('H', 2)]),
        ("type0", 1, &[('D', 11), ('E', 10), ('F', 11), ('G', 10)]),
        ("type1", 0, &[('C', 3), ('D', 3), ('G', 6), ('H', 3)]),
        ("type1", 1, &[('A', 3), ('B', 3), ('E', 6), ('F', 3)]),
    ];
    let mut ok = true;
    let mut w = serde_json::Map::new();
    for (name, part, table) in expected {
        let c = if name == "type0" { type0_coloring()? } else { type1_coloring()? };
        let mut by_orbit = BTreeMap::<String, BTreeMap<String, usize>>::new();
        for a in nb_arrays(&c, part)? {
            let label = classify_cycle_orbit(a.center)?.letter();
            let form = classify_form(&a);
            let want = table.iter().find(|x| x.0 == label).map(|x| x.1);
            ok &= want.is_some() && form.map(FormId::id) == want;
            *by_orbit.entry(label.to_string()).or_default().entry(form_key(form)).or_default() += 1;
        }
        w.insert(format!("{name}/part{}", part + 1), json!(by_orbit));
    }
    Ok((ok, Value::Object(w)))
}

// ---------------------------------------------------------------------------
// census-j63

pub fn cmd_census_j63(cfg: &RunConfig) -> Report {
    let census = census_j63();
    let census = &census;
    let solve = cfg.solve_options();
    let claims = vec![
        claim("census-scan", move || {
            let c = census.as_ref().map_err(Clone::clone)?;
            let ok = c.scanned == 92378 && !c.survivors.is_empty() && c.all_antipodal();
            Ok((ok, json!({
                "bipartitionsScanned": c.scanned,
                "perfect": c.survivors.len(),
                "unionsOfAntipodalPairs": c.all_antipodal(),
            })))
        }),
        claim("census-classes", move || {
            let c = census.as_ref().map_err(Clone::clone)?;
            let fig = c.class_of(mask_of(&figure_coloring()?));
            let fig_prime = c.class_of(mask_of(&figure_coloring_prime()?));
            let ok = c.classes.len() == 2 && fig.is_some() && fig_prime.is_some() && fig != fig_prime;
            let classes: Vec<Value> = c
                .classes
                .iter()
                .map(|members| json!({ "size": members.len(), "representative": c.coloring(members[0]).part(0) }))
                .collect();
            Ok((ok, json!({ "classes": classes, "figureClass": fig, "figurePrimeClass": fig_prime })))
        }),
        claim("stabilizer-x1", || {
            let (ok, w) = stabilizer_witness(&figure_coloring()?, 10, None)?;
            Ok((ok, w))
        }),
        claim("stabilizer-x1-prime", || {
            let expected = cycle_group(6, &["(1,2)", "(1,3,2,4)(5,6)"])?;
            stabilizer_witness(&figure_coloring_prime()?, 8, Some(&expected))
        }),
        claim("engine-oracle", move || {
            let c = census.as_ref().map_err(Clone::clone)?;
            let s = ConstraintSystem::neighborhood(c.graph.clone(), QuotientMatrix::parse("4,5;5,4")?)?;
            // the engine must reproduce every ordered solution, so the cap is lifted
            let opts = SolveOptions { max_solutions: 1 << 20, ..solve };
            let r = enumerate_solutions(&s, &opts)?;
            let mut engine: Vec<u32> = r
                .assignments
                .iter()
                .map(|a| a.iter().enumerate().filter(|x| *x.1).fold(0, |m, (i, _)| m | 1 << i))
                .collect();
            engine.sort_unstable();
            let census = c.ordered_solutions();
            Ok((engine == census, json!({ "engineSolutions": engine.len(), "censusSolutions": census.len() })))
        }),
    ];
    run_claims("census-j63", cfg, claims)
}

fn mask_of(c: &PartColoring) -> u32 {
    c.membership(0).iter().enumerate().filter(|x| *x.1).fold(0, |m, (i, _)| m | 1 << i)
}

fn stabilizer_witness(c: &PartColoring, order: u64, expected: Option<&PermGroup>) -> Result<(bool, Value)> {
    let each = stabilizer(c, StabilizerMode::FixEachPart)?;
    let pair = stabilizer(c, StabilizerMode::FixPair)?;
    let dihedral = each.dihedral_witness();
    let mut ok = each.order() == order && dihedral.as_ref().is_some_and(|d| d.m == order / 2);
    if let Some(e) = expected {
        ok &= each.same_elements(e) == Some(true);
    }
    Ok((ok, json!({
        "x1": c.part(0),
        "fixEachPartOrder": each.order(),
        "fixPairOrder": pair.order(),
        "dihedral": dihedral,
        "elements": each.elements(),
    })))
}

// ---------------------------------------------------------------------------
// classify-j10

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Restrict the run to one seed form.
    pub seed_form: Option<FormId>,
    pub include_pair_identities: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { seed_form: None, include_pair_identities: true }
    }
}

const UNSAT_FORMS: [u8; 6] = [1, 4, 5, 7, 8, 9];

fn run_form(form: u8, opts: &ClassifyOptions, solve: &SolveOptions) -> Result<DeductionResult> {
    check_form_realizable(FormId::new(form)?, opts.include_pair_identities, solve)
}

fn result_json(r: &DeductionResult) -> Value {
    serde_json::to_value(r).expect("result serializes")
}

/// The solution pair of a two-solution run: isomorphic to `target`, free
/// classes anti-correlated and exchanged by `swap`, and `swap` maps one
/// solution onto the other.
fn theorem_claim(form: u8, swap: &str, free: [[u8; 3]; 2], target: &PartColoring, opts: &ClassifyOptions, solve: &SolveOptions) -> Result<(bool, Value)> {
    let r = run_form(form, opts, solve)?;
    let mut ok = r.solution_count == 2 && r.forced_one.len() == 48 && r.forced_zero.len() == 48;
    ok &= r.free_classes.iter().map(Vec::len).collect::<Vec<_>>() == [12, 12] && r.anti_correlated(0, 1);
    let t = Permutation::parse_cycles(swap, 10)?;
    let class_of = |v: Vertex| r.free_classes.iter().position(|c| c.contains(&v));
    let (c0, c1) = (class_of(Vertex::of(&free[0])), class_of(Vertex::of(&free[1])));
    ok &= c0.is_some() && c1.is_some() && c0 != c1;
    let swapped = r.free_classes.len() == 2 && {
        let image: BTreeSet<Vertex> = r.free_classes[0].iter().map(|&v| t.apply_vertex(v)).collect();
        image == r.free_classes[1].iter().copied().collect()
    };
    ok &= swapped;
    let mut iso = Vec::new();
    if r.solution_count == 2 {
        let sols = solutions_to_colorings(&r, &theta2())?;
        let image = crate::perm::IsoWitness { permutation: t.clone(), complement: false, parts_swapped: false }.apply(&sols[0]);
        ok &= image == sols[1];
        for s in &sols {
            let w = coloring_isomorphic(s, target, false)?;
            ok &= w.is_some();
            iso.push(w);
        }
    }
    Ok((ok, json!({
        "deduction": result_json(&r),
        "swap": swap,
        "freeClassesSwapped": swapped,
        "isomorphismsToConstruction": iso,
    })))
}

fn form6_claim(target: &PartColoring, opts: &ClassifyOptions, solve: &SolveOptions) -> Result<(bool, Value)> {
    let r = run_form(6, opts, solve)?;
    let mut ok = r.solution_count > 0;
    let mut abstar = serde_json::Map::new();
    for ((a, b), want) in [((3, 4), 4), ((4, 10), 4), ((3, 10), 7)] {
        let got = derive_abstar(&r, a, b)?;
        ok &= got == AbStar::Constant(want);
        abstar.insert(format!("{a},{b}"), json!(got));
    }
    let sols = solutions_to_colorings(&r, &theta2())?;
    // a forced X1 vertex whose nb-array has row sums {3,3,6} in every solution
    let witness = r.forced_one.iter().copied().find(|&v| {
        sols.iter().all(|s| compute_nb_array(s, v).is_ok_and(|a| a.row_sum_multiset() == [3, 3, 6]))
    });
    ok &= witness.is_some();
    let witness_forms: Vec<Option<FormId>> = match witness {
        Some(v) => sols.iter().map(|s| compute_nb_array(s, v).ok().and_then(|a| classify_form(&a))).collect(),
        None => Vec::new(),
    };
    let mut all_iso = true;
    for s in &sols {
        all_iso &= coloring_isomorphic(s, target, false)?.is_some();
    }
    ok &= all_iso;
    Ok((ok, json!({
        "solutionCount": r.solution_count,
        "abstar": abstar,
        "row336Witness": witness,
        "witnessForms": witness_forms,
        "allIsomorphicToConstruction": all_iso,
        "deduction": result_json(&r),
    })))
}

pub fn cmd_classify_j10(opts: &ClassifyOptions, cfg: &RunConfig) -> Report {
    let solve = cfg.solve_options();
    let forms: Vec<u8> = match opts.seed_form {
        Some(f) => vec![f.id()],
        None => (1..=11).collect(),
    };
    let wants = |f: u8| forms.contains(&f);
    let mut claims: Vec<(&'static str, ClaimFn<'_>)> = Vec::new();
    {
        let (opts, solve) = (opts.clone(), solve.clone());
        if wants(2) {
            claims.push(claim("theorem1-form2", move || {
                theorem_claim(2, "(6,7)", [[1, 4, 6], [1, 4, 7]], &type0_coloring()?, &opts, &solve)
            }));
        }
    }
    {
        let (opts, solve) = (opts.clone(), solve.clone());
        if wants(3) {
            claims.push(claim("theorem2-form3", move || {
                theorem_claim(3, "(8,9)", [[1, 5, 8], [1, 5, 9]], &type1_coloring()?, &opts, &solve)
            }));
        }
    }
    {
        let (opts, solve) = (opts.clone(), solve.clone());
        if wants(6) {
            claims.push(claim("theorem2-form6", move || form6_claim(&type1_coloring()?, &opts, &solve)));
        }
    }
    {
        let (opts, solve, forms) = (opts.clone(), solve.clone(), forms.clone());
        claims.push(claim("eliminations", move || {
            let mut ok = true;
            let mut w = serde_json::Map::new();
            for &f in &forms {
                let r = run_form(f, &opts, &solve)?;
                let expect_unsat = UNSAT_FORMS.contains(&f);
                ok &= r.is_unsat() == expect_unsat;
                w.insert(
                    format!("form{f}"),
                    json!({ "expected": if expect_unsat { "UNSAT" } else { "SAT" }, "solutionCount": r.solution_count }),
                );
            }
            Ok((ok, Value::Object(w)))
        }));
    }
    {
        let (solve, forms) = (solve.clone(), forms.clone());
        claims.push(claim("pair-identities-implied", move || {
            let mut ok = true;
            let mut w = serde_json::Map::new();
            for &f in &forms {
                let seed = SeedSpec::standard(FormId::new(f)?);
                let with = enumerate_solutions(&build_system(&seed, true)?, &solve)?;
                let without = enumerate_solutions(&build_system(&seed, false)?, &solve)?;
                let same = with.assignments == without.assignments;
                ok &= same;
                w.insert(format!("form{f}"), json!({ "identical": same, "solutionCount": with.solution_count }));
            }
            Ok((ok, Value::Object(w)))
        }));
    }
    {
        let (opts, solve, forms) = (opts.clone(), solve.clone(), forms.clone());
        claims.push(claim("solutions-classified", move || {
            let constructions = [("type0", type0_coloring()?), ("type1", type1_coloring()?)];
            let mut ok = true;
            let mut w = serde_json::Map::new();
            for &f in &forms {
                let r = run_form(f, &opts, &solve)?;
                let mut rows = Vec::new();
                for s in solutions_to_colorings(&r, &theta2())? {
                    let (t1, t2) = (part_type(&s, 0)?, part_type(&s, 1)?);
                    let mut matched = None;
                    for (name, c) in &constructions {
                        if coloring_isomorphic(&s, c, false)?.is_some() {
                            matched = Some(*name);
                            break;
                        }
                    }
                    ok &= (t1 + t2) % 3 == 2 && s.part_sizes() == [60, 60] && matched.is_some();
                    rows.push(json!({ "types": [t1, t2], "isomorphicTo": matched }));
                }
                w.insert(format!("form{f}"), json!(rows));
            }
            Ok((ok, Value::Object(w)))
        }));
    }
    if opts.seed_form.is_none() {
        claims.push(claim("type1-parts-isomorphic", || {
            let c = type1_coloring()?;
            let p = set_isomorphism(c.graph(), &c.membership(0), &c.membership(1))?;
            Ok((p.is_some(), json!({ "permutation": p })))
        }));
    }
    run_claims("classify-j10", cfg, claims)
}

// ---------------------------------------------------------------------------
// verify / spectrum

pub fn load_coloring(path: &Path) -> Result<PartColoring> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    ColoringFile::from_json(&text)?.into_coloring()
}

pub fn cmd_verify(path: &Path, quotient: Option<&QuotientMatrix>, cfg: &RunConfig) -> Result<Report> {
    let c = load_coloring(path)?;
    if let Some(q) = quotient {
        if q.dim() != c.m() {
            return Err(Error::DimensionMismatch(format!("quotient is {}x{} but the coloring has {} parts", q.dim(), q.dim(), c.m())));
        }
    }
    let c = &c;
    let mut claims = vec![
        claim("perfect", move || {
            Ok(match verify_perfect(c) {
                Ok(q) => (quotient.is_none_or(|e| *e == q), json!({ "quotient": q, "expected": quotient })),
                Err(w) => (false, json!({ "notPerfect": w })),
            })
        }),
        claim("quotient-eigenvalues", move || {
            let Ok(q) = verify_perfect(c) else {
                return Ok((false, json!({ "error": "coloring is not perfect" })));
            };
            let s = quotient_spectrum(&q);
            let eig = johnson_eigenvalues(c.graph().n(), c.graph().k())?;
            let m = s.match_against(&eig);
            Ok((m.is_some(), json!({ "spectrum": s, "graphEigenvalueIndices": m })))
        }),
    ];
    if c.graph().k() == 3 {
        claims.push(claim("part-types", move || {
            let mut types = Vec::new();
            for p in 0..c.m() {
                types.push(part_type(c, p)?);
            }
            Ok((true, json!({ "types": types })))
        }));
    }
    if c.graph().n() == 10 && c.graph().k() == 3 && c.m() == 2 {
        claims.push(claim("nb-forms", move || {
            let mut ok = true;
            let mut hist = Vec::new();
            for p in 0..2 {
                let h = form_histogram(c, p)?;
                ok &= !h.contains_key("none");
                hist.push(h);
            }
            Ok((ok, json!({ "histograms": hist })))
        }));
    }
    claims.push(claim("induced-spectra", move || {
        let spectra: Vec<_> = (0..c.m()).map(|p| induced_subgraph_spectrum(c, p)).collect();
        Ok((true, json!({ "spectra": spectra })))
    }));
    Ok(run_claims("verify", cfg, claims))
}

/// Spectrum and exact characteristic polynomial of the subgraph induced by
/// part `part` (1-based, in file order).
pub fn cmd_spectrum(path: &Path, part: usize, cfg: &RunConfig) -> Result<Report> {
    let c = load_coloring(path)?;
    if part == 0 || part > c.m() {
        return Err(Error::ParameterOutOfRange(format!("part {part} not in 1..={}", c.m())));
    }
    let c = &c;
    let claims = vec![claim("spectrum", move || {
        let adj = induced_adjacency(c, part - 1);
        let poly: Vec<String> = characteristic_polynomial(&adj).iter().map(ToString::to_string).collect();
        Ok((true, json!({
            "part": part,
            "size": adj.len(),
            "spectrum": induced_subgraph_spectrum(c, part - 1),
            "characteristicPolynomial": poly,
        })))
    })];
    Ok(run_claims("spectrum", cfg, claims))
}
