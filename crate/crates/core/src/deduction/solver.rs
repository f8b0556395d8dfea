//! Exhaustive 0/1 enumeration with per-equation bound propagation.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::Equation;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Enumeration aborts with [`Error::SolutionOverflow`] beyond this many
    /// solutions.
    pub max_solutions: usize,
    pub time_budget: Option<Duration>,
    /// `1` runs the reference sequential search.
    pub workers: usize,
}

pub const DEFAULT_SOLUTION_CAP: usize = 16;
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(600);

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_solutions: DEFAULT_SOLUTION_CAP,
            time_budget: Some(DEFAULT_TIME_BUDGET),
            workers: 1,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    pub nodes: u64,
    pub conflicts: u64,
}

struct Shared<'a> {
    equations: &'a [Equation],
    occurrences: Vec<Vec<(u32, i32)>>,
    max_coef: Vec<i32>,
    found: AtomicUsize,
    stop: AtomicBool,
    cap: usize,
    deadline: Option<Instant>,
}

#[derive(Clone)]
struct State {
    value: Vec<i8>,
    /// `rhs − Σ assigned terms`.
    residual: Vec<i32>,
    /// Sums of the negative / positive coefficients of unassigned terms.
    lo: Vec<i32>,
    hi: Vec<i32>,
    trail: Vec<u32>,
}

enum Abort {
    Overflow,
    Timeout,
}

impl State {
    fn new(sh: &Shared<'_>, var_count: usize) -> Self {
        let mut lo = vec![0; sh.equations.len()];
        let mut hi = vec![0; sh.equations.len()];
        for (e, eq) in sh.equations.iter().enumerate() {
            for &(_, c) in &eq.terms {
                if c < 0 {
                    lo[e] += c;
                } else {
                    hi[e] += c;
                }
            }
        }
        State {
            value: vec![-1; var_count],
            residual: sh.equations.iter().map(|eq| eq.rhs).collect(),
            lo,
            hi,
            trail: Vec::new(),
        }
    }

    fn set(&mut self, sh: &Shared<'_>, var: u32, val: bool, queue: &mut Vec<u32>) {
        self.value[var as usize] = val as i8;
        self.trail.push(var);
        for &(e, c) in &sh.occurrences[var as usize] {
            let e = e as usize;
            if c < 0 {
                self.lo[e] -= c;
            } else {
                self.hi[e] -= c;
            }
            if val {
                self.residual[e] -= c;
            }
            queue.push(e as u32);
        }
    }

    fn undo_to(&mut self, sh: &Shared<'_>, mark: usize) {
        while self.trail.len() > mark {
            let var = self.trail.pop().unwrap();
            let val = self.value[var as usize] == 1;
            self.value[var as usize] = -1;
            for &(e, c) in &sh.occurrences[var as usize] {
                let e = e as usize;
                if c < 0 {
                    self.lo[e] += c;
                } else {
                    self.hi[e] += c;
                }
                if val {
                    self.residual[e] += c;
                }
            }
        }
    }

    fn slack(&self, e: usize) -> (i32, i32) {
        (self.residual[e] - self.lo[e], self.hi[e] - self.residual[e])
    }

    /// Fixpoint of bound propagation; `false` on conflict.
    fn propagate(&mut self, sh: &Shared<'_>, mut queue: Vec<u32>) -> bool {
        while let Some(e) = queue.pop() {
            let e = e as usize;
            let (slo, shi) = self.slack(e);
            if slo < 0 || shi < 0 {
                return false;
            }
            if sh.max_coef[e] <= slo.min(shi) {
                continue;
            }
            for &(var, c) in &sh.equations[e].terms {
                if self.value[var as usize] >= 0 {
                    continue;
                }
                let (slo, shi) = self.slack(e);
                let d = c.abs();
                // (cannot be 1, cannot be 0)
                let (no_one, no_zero) = if c > 0 { (d > slo, d > shi) } else { (d > shi, d > slo) };
                match (no_one, no_zero) {
                    (true, true) => return false,
                    (true, false) => self.set(sh, var, false, &mut queue),
                    (false, true) => self.set(sh, var, true, &mut queue),
                    (false, false) => {}
                }
            }
        }
        true
    }

    /// Unassigned variable of the equation with the least slack.
    fn branch_var(&self, sh: &Shared<'_>) -> Option<u32> {
        let mut best: Option<(i32, usize)> = None;
        for (e, eq) in sh.equations.iter().enumerate() {
            let (slo, shi) = self.slack(e);
            let s = slo.min(shi);
            if best.is_some_and(|(b, _)| b <= s) {
                continue;
            }
            if eq.terms.iter().any(|&(v, _)| self.value[v as usize] < 0) {
                best = Some((s, e));
            }
        }
        match best {
            Some((_, e)) => sh.equations[e]
                .terms
                .iter()
                .map(|&(v, _)| v)
                .filter(|&v| self.value[v as usize] < 0)
                .min(),
            None => self.value.iter().position(|&x| x < 0).map(|v| v as u32),
        }
    }
}

struct Worker<'s, 'a> {
    sh: &'s Shared<'a>,
    solutions: Vec<Vec<bool>>,
    stats: SolveStats,
}

impl Worker<'_, '_> {
    fn check_limits(&self) -> std::result::Result<(), Abort> {
        if self.sh.stop.load(Ordering::Relaxed) {
            return Err(if self.sh.found.load(Ordering::Relaxed) > self.sh.cap {
                Abort::Overflow
            } else {
                Abort::Timeout
            });
        }
        if self.stats.nodes % 256 == 1 && self.sh.deadline.is_some_and(|d| Instant::now() > d) {
            self.sh.stop.store(true, Ordering::Relaxed);
            return Err(Abort::Timeout);
        }
        Ok(())
    }

    fn record(&mut self, st: &State) -> std::result::Result<(), Abort> {
        self.solutions.push(st.value.iter().map(|&x| x == 1).collect());
        if self.sh.found.fetch_add(1, Ordering::Relaxed) + 1 > self.sh.cap {
            self.sh.stop.store(true, Ordering::Relaxed);
            return Err(Abort::Overflow);
        }
        Ok(())
    }

    /// Explores below an already propagated state.
    fn search(&mut self, st: &mut State) -> std::result::Result<(), Abort> {
        self.stats.nodes += 1;
        self.check_limits()?;
        let Some(var) = st.branch_var(self.sh) else {
            return self.record(st);
        };
        for val in [true, false] {
            let mark = st.trail.len();
            let mut queue = Vec::new();
            st.set(self.sh, var, val, &mut queue);
            if st.propagate(self.sh, queue) {
                self.search(st)?;
            } else {
                self.stats.conflicts += 1;
            }
            st.undo_to(self.sh, mark);
        }
        Ok(())
    }

    /// Sequentially expands to at most `limit` open subproblems.
    fn frontier(&mut self, root: State, limit: usize) -> std::result::Result<Vec<State>, Abort> {
        let mut open = vec![root];
        loop {
            if open.len() >= limit {
                return Ok(open);
            }
            let mut next = Vec::new();
            let mut expanded = false;
            for st in open {
                self.stats.nodes += 1;
                let Some(var) = st.branch_var(self.sh) else {
                    self.record(&st)?;
                    continue;
                };
                expanded = true;
                for val in [true, false] {
                    let mut child = st.clone();
                    let mut queue = Vec::new();
                    child.set(self.sh, var, val, &mut queue);
                    if child.propagate(self.sh, queue) {
                        next.push(child);
                    } else {
                        self.stats.conflicts += 1;
                    }
                }
            }
            open = next;
            if !expanded || open.is_empty() {
                return Ok(open);
            }
        }
    }
}

/// All 0/1 vectors of length `var_count` satisfying `equations` and the
/// `seeds`, sorted lexicographically (with `true > false`, descending).
pub fn solve(
    var_count: usize,
    equations: &[Equation],
    seeds: &[(u32, bool)],
    opts: &SolveOptions,
) -> Result<(Vec<Vec<bool>>, SolveStats)> {
    let mut occurrences = vec![Vec::new(); var_count];
    for (e, eq) in equations.iter().enumerate() {
        for &(v, c) in &eq.terms {
            occurrences[v as usize].push((e as u32, c));
        }
    }
    let sh = Shared {
        equations,
        occurrences,
        max_coef: equations
            .iter()
            .map(|eq| eq.terms.iter().map(|t| t.1.abs()).max().unwrap_or(0))
            .collect(),
        found: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
        cap: opts.max_solutions,
        deadline: opts.time_budget.map(|b| Instant::now() + b),
    };
    let abort = |a: Abort| match a {
        Abort::Overflow => Error::SolutionOverflow(opts.max_solutions),
        Abort::Timeout => Error::TimeBudgetExceeded(opts.time_budget.unwrap_or_default()),
    };

    let mut root = State::new(&sh, var_count);
    let mut worker = Worker { sh: &sh, solutions: Vec::new(), stats: SolveStats::default() };
    let mut queue: Vec<u32> = (0..equations.len() as u32).collect();
    let mut consistent = true;
    for &(v, val) in seeds {
        match root.value[v as usize] {
            -1 => root.set(&sh, v, val, &mut queue),
            x if (x == 1) != val => consistent = false,
            _ => {}
        }
    }
    if !(consistent && root.propagate(&sh, queue)) {
        return Ok((Vec::new(), worker.stats));
    }

    if opts.workers <= 1 {
        worker.search(&mut root).map_err(abort)?;
    } else {
        let open = worker.frontier(root, opts.workers * 8).map_err(abort)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("thread pool");
        let parts: Vec<_> = pool.install(|| {
            open.into_par_iter()
                .map(|mut st| {
                    let mut w = Worker { sh: &sh, solutions: Vec::new(), stats: SolveStats::default() };
                    let r = w.search(&mut st);
                    (r, w.solutions, w.stats)
                })
                .collect()
        });
        for (r, sols, stats) in parts {
            r.map_err(abort)?;
            worker.solutions.extend(sols);
            worker.stats.nodes += stats.nodes;
            worker.stats.conflicts += stats.conflicts;
        }
    }
    let mut solutions = worker.solutions;
    solutions.sort_unstable_by(|a, b| b.cmp(a));
    Ok((solutions, worker.stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(terms: &[(u32, i32)], rhs: i32) -> Equation {
        Equation { terms: terms.to_vec(), rhs }
    }

    fn brute(n: usize, eqs: &[Equation]) -> Vec<Vec<bool>> {
        let mut out: Vec<Vec<bool>> = (0u32..1 << n)
            .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|x| {
                eqs.iter()
                    .all(|e| e.terms.iter().map(|&(v, c)| c * x[v as usize] as i32).sum::<i32>() == e.rhs)
            })
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    #[test]
    fn small_systems_match_brute_force() {
        let systems = vec![
            vec![eq(&[(0, 1), (1, 1), (2, 1)], 2)],
            vec![eq(&[(0, 1), (1, 1), (2, 1), (3, 1)], 2), eq(&[(0, 2), (1, -1), (3, 3)], 2)],
            vec![eq(&[(0, 3), (1, 3)], 4)],
            vec![eq(&[(0, -2), (1, 1), (2, 1), (4, 1)], 0), eq(&[(3, 1), (4, -1)], 0)],
            vec![],
        ];
        for eqs in systems {
            let opts = SolveOptions { max_solutions: 1000, ..Default::default() };
            let (sols, _) = solve(5, &eqs, &[], &opts).unwrap();
            assert_eq!(sols, brute(5, &eqs), "{eqs:?}");
            let par = SolveOptions { workers: 3, ..opts };
            assert_eq!(solve(5, &eqs, &[], &par).unwrap().0, sols);
        }
    }

    #[test]
    fn contradictory_seeds_are_unsat() {
        let (sols, _) = solve(2, &[], &[(0, true), (0, false)], &SolveOptions::default()).unwrap();
        assert!(sols.is_empty());
    }

    #[test]
    fn cap_overflows_loudly() {
        let opts = SolveOptions { max_solutions: 3, ..Default::default() };
        assert_eq!(solve(3, &[], &[], &opts).unwrap_err(), Error::SolutionOverflow(3));
        let opts = SolveOptions { max_solutions: 3, workers: 2, ..Default::default() };
        assert_eq!(solve(3, &[], &[], &opts).unwrap_err(), Error::SolutionOverflow(3));
    }

    #[test]
    fn zero_budget_times_out() {
        let opts = SolveOptions { max_solutions: 1 << 20, time_budget: Some(Duration::ZERO), workers: 1 };
        assert!(matches!(solve(16, &[], &[], &opts), Err(Error::TimeBudgetExceeded(_))));
    }
}
