//! Verification suites, run reports and the file formats the command line
//! reads and writes.

pub mod files;
mod suites;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::solver::SolveBudget;

pub use files::{sha256_hex, Manifest, Sidecar, TOOL_VERSION};

pub const SUITES: [&str; 11] = [
    "lower-bounds",
    "gd-family",
    "chain-lemma",
    "c1",
    "c2",
    "c3",
    "c4",
    "c5",
    "c6",
    "universal",
    "verifier-oracle",
];

/// Default wall limit for one solve inside a suite.
pub const DEFAULT_SOLVE_SECONDS: u64 = 60;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// Carries the counterexample.
    Fail { witness: Value },
    /// The budget ran out before the case was settled.
    Skipped { reason: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "fail",
            Verdict::Skipped { .. } => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseReport>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| matches!(c.verdict, Verdict::Fail { .. })).count()
    }

    pub fn skipped(&self) -> usize {
        self.cases.iter().filter(|c| matches!(c.verdict, Verdict::Skipped { .. })).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Case verdicts without timings, for manifests.
    pub fn outcome_summary(&self) -> Value {
        let cases: BTreeMap<&str, &str> =
            self.cases.iter().map(|c| (c.name.as_str(), c.verdict.label())).collect();
        serde_json::json!({ "suite": self.suite, "cases": cases })
    }
}

/// Limits shared by all cases of a suite run.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    /// Budget for each individual solve.
    pub solve_budget: SolveBudget,
    /// Wall limit for the colouring count of the swap-and-automorphism
    /// construction, which is far slower than the other cases.
    pub count_wall: Duration,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            solve_budget: SolveBudget::wall(Duration::from_secs(DEFAULT_SOLVE_SECONDS)),
            count_wall: Duration::from_secs(300),
        }
    }
}

/// Why a case did not pass.
#[derive(Debug)]
pub(crate) enum Miss {
    Fail(Value),
    Skip(String),
}

impl From<Error> for Miss {
    fn from(e: Error) -> Self {
        Miss::Fail(serde_json::json!({ "error": e.to_string() }))
    }
}

pub(crate) type CaseResult = std::result::Result<(), Miss>;

pub(crate) fn ensure(ok: bool, witness: impl FnOnce() -> Value) -> CaseResult {
    if ok {
        Ok(())
    } else {
        Err(Miss::Fail(witness()))
    }
}

pub(crate) struct Runner {
    cases: Vec<CaseReport>,
}

impl Runner {
    pub(crate) fn case(&mut self, name: impl Into<String>, body: impl FnOnce() -> CaseResult) {
        let started = Instant::now();
        let verdict = match body() {
            Ok(()) => Verdict::Pass,
            Err(Miss::Fail(witness)) => Verdict::Fail { witness },
            Err(Miss::Skip(reason)) => Verdict::Skipped { reason },
        };
        self.cases.push(CaseReport {
            name: name.into(),
            verdict,
            millis: started.elapsed().as_millis(),
        });
    }
}

/// Runs the named suite. Unknown names give `None`.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Option<SuiteReport> {
    let started = Instant::now();
    let mut runner = Runner { cases: Vec::new() };
    let r = &mut runner;
    match name {
        "lower-bounds" => suites::lower_bounds(r, config),
        "gd-family" => suites::gd_family(r, config),
        "chain-lemma" => suites::chain_lemma(r),
        "c1" => suites::c1(r, config),
        "c2" => suites::c2(r, config),
        "c3" => suites::c3(r, config),
        "c4" => suites::c4(r),
        "c5" => suites::c5(r, config),
        "c6" => suites::c6(r, config),
        "universal" => suites::universal(r),
        "verifier-oracle" => suites::verifier_oracle(r),
        _ => return None,
    }
    Some(SuiteReport {
        suite: name.to_string(),
        cases: runner.cases,
        millis: started.elapsed().as_millis(),
    })
}
