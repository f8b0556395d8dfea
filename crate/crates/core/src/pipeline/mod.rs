//! End-to-end claim checks. Each command returns a [`Report`] listing every
//! claim it checked with PASS/FAIL and a JSON witness.

mod census;
mod commands;
mod constructions;

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::deduction::{SolveOptions, DEFAULT_SOLUTION_CAP, DEFAULT_TIME_BUDGET};
use crate::error::Result;

pub use census::{census_j63, Census};
pub use commands::{
    cmd_census_j63, cmd_classify_j10, cmd_construct_j10, cmd_spectrum, cmd_verify, load_coloring, ClassifyOptions,
};
pub use constructions::{
    figure_coloring, figure_coloring_prime, merge_orbits, orbit_coloring, orbit_quotient, ten_cycle_group,
    type0_coloring, type1_coloring, ORBIT_QUOTIENT, TYPE0_MERGE, TYPE1_MERGE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Claim {
    pub id: String,
    pub status: Status,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// Drops the runtimes, which are the only nondeterministic fields.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.claims {
            c.runtime_ms = None;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One line per claim followed by its indented witness.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let passed = self.claims.iter().filter(|c| c.status == Status::Pass).count();
        let _ = writeln!(out, "{}: {} ({passed}/{} claims)", self.command, self.status, self.claims.len());
        for c in &self.claims {
            let status = c.status;
            match c.runtime_ms {
                Some(ms) => {
                    let _ = writeln!(out, "{status}  {}  ({ms} ms)", c.id);
                }
                None => {
                    let _ = writeln!(out, "{status}  {}", c.id);
                }
            }
            let body = serde_json::to_string_pretty(&c.witness).expect("witness serializes");
            for line in body.lines() {
                let _ = writeln!(out, "      {line}");
            }
        }
        out
    }
}

/// Settings shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Search workers per deduction run.
    pub workers: usize,
    /// Run independent claims concurrently.
    pub parallel_claims: bool,
    pub time_budget: Duration,
    pub solution_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            workers: 1,
            parallel_claims: false,
            time_budget: DEFAULT_TIME_BUDGET,
            solution_cap: DEFAULT_SOLUTION_CAP,
        }
    }
}

impl RunConfig {
    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            max_solutions: self.solution_cap,
            time_budget: Some(self.time_budget),
            workers: self.workers.max(1),
        }
    }
}

type ClaimFn<'a> = Box<dyn FnOnce() -> Result<(bool, Value)> + Send + 'a>;

fn run_one(id: &str, f: ClaimFn<'_>) -> Claim {
    let start = Instant::now();
    let (ok, witness) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => (false, serde_json::json!({ "error": e.to_string() })),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, serde_json::json!({ "panic": msg }))
        }
    };
    Claim {
        id: id.to_string(),
        status: Status::from_bool(ok),
        witness,
        runtime_ms: Some(start.elapsed().as_millis() as u64),
    }
}

fn run_claims(command: &str, cfg: &RunConfig, claims: Vec<(&'static str, ClaimFn<'_>)>) -> Report {
    let claims: Vec<Claim> = if cfg.parallel_claims {
        claims.into_par_iter().map(|(id, f)| run_one(id, f)).collect()
    } else {
        claims.into_iter().map(|(id, f)| run_one(id, f)).collect()
    };
    let ok = claims.iter().all(|c| c.status == Status::Pass);
    Report { command: command.to_string(), status: Status::from_bool(ok), claims }
}
