//! Exact decision procedures for k-acyclic and proper k-colourability,
//! colouring enumeration, and lower bounds.

pub mod bounds;
pub mod enumerate;
mod partial;
mod search;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use enumerate::{enumerate_colourings, for_each_colouring, Visit};
pub use partial::{ColouringKind, MAX_PALETTE};

use crate::colouring::{is_acyclic_colouring, is_proper, Colouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use search::{RawOutcome, Search};

/// Resource limits for one search. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveBudget {
    pub node_limit: Option<u64>,
    pub wall_limit: Option<Duration>,
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget::default()
    }

    pub fn nodes(limit: u64) -> Self {
        SolveBudget {
            node_limit: Some(limit),
            wall_limit: None,
        }
    }

    pub fn wall(limit: Duration) -> Self {
        SolveBudget {
            node_limit: None,
            wall_limit: Some(limit),
        }
    }

    fn minus_elapsed(self, since: Instant, nodes_used: u64) -> Self {
        SolveBudget {
            node_limit: self.node_limit.map(|l| l.saturating_sub(nodes_used)),
            wall_limit: self.wall_limit.map(|l| l.saturating_sub(since.elapsed())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(Colouring),
    No,
    /// The budget ran out before the search finished.
    Unknown,
}

impl Decision {
    pub fn label(&self) -> &'static str {
        match self {
            Decision::Yes(_) => "yes",
            Decision::No => "no",
            Decision::Unknown => "unknown",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn witness(&self) -> Option<&Colouring> {
        match self {
            Decision::Yes(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub decision: Decision,
    /// Search nodes expanded; zero when a bound settled the question.
    pub nodes: u64,
}

/// Decides whether `g` has a colouring of the given kind with at most `k`
/// colours. A `Yes` always carries a verified witness on palette `k`.
pub fn solve(g: &Graph, k: usize, kind: ColouringKind, budget: SolveBudget) -> Result<Solved> {
    solve_impl(g, k, kind, budget, true)
}

/// Like [`solve`] but never short-cuts through the lower bounds, so a `No`
/// is always the result of an exhausted search.
pub fn solve_by_search(
    g: &Graph,
    k: usize,
    kind: ColouringKind,
    budget: SolveBudget,
) -> Result<Solved> {
    solve_impl(g, k, kind, budget, false)
}

fn solve_impl(
    g: &Graph,
    k: usize,
    kind: ColouringKind,
    budget: SolveBudget,
    use_bounds: bool,
) -> Result<Solved> {
    let n = g.n();
    let settled = |decision| Ok(Solved { decision, nodes: 0 });
    if n == 0 {
        return settled(Decision::Yes(Colouring::new(k, Vec::new())?));
    }
    if k >= n {
        return settled(Decision::Yes(Colouring::new(k, (0..n).collect())?));
    }
    if k == 0 || (k == 1 && g.m() > 0) {
        return settled(Decision::No);
    }
    if use_bounds && kind == ColouringKind::Acyclic {
        if bounds::density_excludes(g, k) {
            return settled(Decision::No);
        }
        if bounds::regular_bound(g).is_some_and(|b| b > k) {
            return settled(Decision::No);
        }
    }
    if k > MAX_PALETTE {
        return Err(Error::Refused(format!(
            "palettes above {MAX_PALETTE} colours are not supported (k = {k}, n = {n})"
        )));
    }
    let mut search = Search::new(g, k, kind, budget);
    let outcome = search.run();
    let nodes = search.nodes();
    let decision = match outcome {
        RawOutcome::Found(colours) => {
            let f = Colouring::new(k, colours)?;
            let ok = match kind {
                ColouringKind::Proper => is_proper(g, &f)?,
                ColouringKind::Acyclic => is_acyclic_colouring(g, &f),
            };
            assert!(ok, "search produced an invalid {} colouring", kind.name());
            Decision::Yes(f)
        }
        RawOutcome::Exhausted => Decision::No,
        RawOutcome::OutOfBudget => Decision::Unknown,
    };
    Ok(Solved { decision, nodes })
}

pub fn is_k_acyclic_colourable(g: &Graph, k: usize, budget: SolveBudget) -> Result<Decision> {
    Ok(solve(g, k, ColouringKind::Acyclic, budget)?.decision)
}

pub fn is_k_colourable(g: &Graph, k: usize, budget: SolveBudget) -> Result<Decision> {
    Ok(solve(g, k, ColouringKind::Proper, budget)?.decision)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChromaticNumber {
    Exact {
        value: usize,
        #[serde(skip)]
        witness: Colouring,
    },
    /// The budget ran out; `lower ≤ χ_a ≤ upper`.
    Unknown { lower: usize, upper: usize },
}

/// Smallest k for which `g` is k-acyclic colourable. The search starts at
/// the best lower bound and walks upwards, sharing one budget.
pub fn acyclic_chromatic_number(g: &Graph, budget: SolveBudget) -> Result<ChromaticNumber> {
    let started = Instant::now();
    let report = bounds::bound_report(g, g.n() <= 12)?;
    let mut k = report.least_admissible_palette(g);
    let mut used = 0;
    loop {
        let solved = solve(g, k, ColouringKind::Acyclic, budget.minus_elapsed(started, used))?;
        used += solved.nodes;
        match solved.decision {
            Decision::Yes(witness) => return Ok(ChromaticNumber::Exact { value: k, witness }),
            Decision::No => k += 1,
            Decision::Unknown => {
                return Ok(ChromaticNumber::Unknown {
                    lower: k,
                    upper: g.n(),
                })
            }
        }
    }
}
