//! Python bindings: graphs, the verifier, the solver, class counting,
//! bounds, gadgets, reductions and the verification suites.

use std::time::Duration;

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use acyclic_lab::gadgets::{self, GadgetGraph};
use acyclic_lab::graph::dimacs;
use acyclic_lab::harness::{self, SuiteConfig};
use acyclic_lab::reductions::{self, ReductionOutput};
use acyclic_lab::solver::{self, bounds, ChromaticNumber, ColouringKind, Decision, SolveBudget};
use acyclic_lab::symmetry::{self, Caps, Relation};
use acyclic_lab::{Colouring, Error, Graph};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Overflow { .. } => PyOverflowError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "acyclic_lab", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::new(n, edges).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph { inner: Graph::complete(n) }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph { inner: Graph::cycle(n) }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph { inner: Graph::path(n) }
    }

    #[staticmethod]
    fn complete_bipartite(a: usize, b: usize) -> Self {
        PyGraph {
            inner: Graph::complete_bipartite(a, b),
        }
    }

    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: dimacs::parse(text).map_err(py_err)?,
        })
    }

    fn to_dimacs(&self) -> String {
        dimacs::write(&self.inner, &[])
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbours(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.inner.neighbours(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check_vertex(v)?;
        Ok(self.inner.degree(v))
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite().is_some()
    }

    fn regular_degree(&self) -> Option<usize> {
        self.inner.regular_degree()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

impl PyGraph {
    fn check_vertex(&self, v: usize) -> PyResult<()> {
        if v >= self.inner.n() {
            return Err(py_err(Error::VertexOutOfRange { vertex: v, n: self.inner.n() }));
        }
        Ok(())
    }
}

#[pyclass(name = "Gadget", module = "acyclic_lab", frozen)]
struct PyGadget {
    inner: GadgetGraph,
}

#[pymethods]
impl PyGadget {
    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph.clone(),
        }
    }

    #[getter]
    fn terminals(&self) -> Vec<usize> {
        self.inner.terminals.clone()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.tags.iter().map(|t| t.label.clone()).collect()
    }

    #[getter]
    fn canonical_colouring(&self) -> Option<Vec<usize>> {
        self.inner.canonical_colouring.as_ref().map(|f| f.colours().to_vec())
    }

    fn __repr__(&self) -> String {
        format!(
            "Gadget(n={}, terminals={})",
            self.inner.graph.n(),
            self.inner.terminals.len()
        )
    }
}

#[pyclass(name = "Reduction", module = "acyclic_lab", frozen)]
struct PyReduction {
    inner: ReductionOutput,
}

#[pymethods]
impl PyReduction {
    #[getter]
    fn construction(&self) -> &'static str {
        self.inner.construction
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph.clone(),
        }
    }

    /// Provenance of every output vertex as a JSON array.
    fn provenance_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.provenance).map_err(json_err)
    }

    fn failed_claims(&self) -> Vec<String> {
        self.inner.failed_claims().iter().map(|c| format!("{c:?}")).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Reduction({}, n={}, m={})",
            self.inner.construction,
            self.inner.graph.n(),
            self.inner.graph.m()
        )
    }
}

fn kind_of(kind: &str) -> PyResult<ColouringKind> {
    match kind {
        "acyclic" => Ok(ColouringKind::Acyclic),
        "proper" => Ok(ColouringKind::Proper),
        other => Err(PyValueError::new_err(format!(
            "kind must be 'acyclic' or 'proper', got {other:?}"
        ))),
    }
}

fn relation_of(relation: &str) -> PyResult<Relation> {
    match relation {
        "swap" => Ok(Relation::Swap),
        "swap_auto" => Ok(Relation::SwapAuto),
        other => Err(PyValueError::new_err(format!(
            "relation must be 'swap' or 'swap_auto', got {other:?}"
        ))),
    }
}

fn budget_of(budget_secs: Option<f64>, node_limit: Option<u64>) -> PyResult<SolveBudget> {
    let wall_limit = match budget_secs {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(PyValueError::new_err(format!("bad budget {s}"))),
        None => None,
    };
    Ok(SolveBudget { node_limit, wall_limit })
}

fn colouring_for(g: &PyGraph, colours: Vec<usize>, k: Option<usize>) -> PyResult<Colouring> {
    let k = k.unwrap_or_else(|| colours.iter().max().map_or(0, |&c| c + 1));
    let f = Colouring::new(k, colours).map_err(py_err)?;
    f.covers(&g.inner).map_err(py_err)?;
    Ok(f)
}

#[pyfunction]
#[pyo3(signature = (g, colours, k=None))]
fn is_acyclic_colouring(g: &PyGraph, colours: Vec<usize>, k: Option<usize>) -> PyResult<bool> {
    let f = colouring_for(g, colours, k)?;
    Ok(acyclic_lab::is_acyclic_colouring(&g.inner, &f))
}

/// Vertices of a cycle using two colours, or `None`.
#[pyfunction]
fn find_bicoloured_cycle(g: &PyGraph, colours: Vec<usize>) -> PyResult<Option<Vec<usize>>> {
    let f = colouring_for(g, colours, None)?;
    let cycle = acyclic_lab::find_bicoloured_cycle(&g.inner, &f).map_err(py_err)?;
    Ok(cycle.map(|c| c.vertices))
}

/// `("yes", colouring)`, `("no", None)` or `("unknown", None)`.
#[pyfunction]
#[pyo3(signature = (g, k, kind="acyclic", budget_secs=Some(60.0), node_limit=None))]
fn solve(
    py: Python<'_>,
    g: &PyGraph,
    k: usize,
    kind: &str,
    budget_secs: Option<f64>,
    node_limit: Option<u64>,
) -> PyResult<(&'static str, Option<Vec<usize>>)> {
    let kind = kind_of(kind)?;
    let budget = budget_of(budget_secs, node_limit)?;
    let graph = &g.inner;
    let solved = py.detach(|| solver::solve(graph, k, kind, budget)).map_err(py_err)?;
    let witness = match &solved.decision {
        Decision::Yes(f) => Some(f.colours().to_vec()),
        _ => None,
    };
    Ok((solved.decision.label(), witness))
}

/// The acyclic chromatic number, or `None` when the budget runs out.
#[pyfunction]
#[pyo3(signature = (g, budget_secs=Some(60.0)))]
fn acyclic_chromatic_number(py: Python<'_>, g: &PyGraph, budget_secs: Option<f64>) -> PyResult<Option<usize>> {
    let budget = budget_of(budget_secs, None)?;
    let graph = &g.inner;
    match py.detach(|| solver::acyclic_chromatic_number(graph, budget)).map_err(py_err)? {
        ChromaticNumber::Exact { value, .. } => Ok(Some(value)),
        ChromaticNumber::Unknown { .. } => Ok(None),
    }
}

#[pyfunction]
#[pyo3(signature = (g, k, relation="swap", kind="acyclic", max_colourings=10_000_000))]
fn count_classes(
    py: Python<'_>,
    g: &PyGraph,
    k: usize,
    relation: &str,
    kind: &str,
    max_colourings: u64,
) -> PyResult<u64> {
    let (relation, kind) = (relation_of(relation)?, kind_of(kind)?);
    let caps = Caps {
        colourings: max_colourings,
        ..Caps::default()
    };
    let graph = &g.inner;
    let counted = py
        .detach(|| symmetry::count_classes(graph, k, relation, kind, &caps))
        .map_err(py_err)?;
    Ok(counted.count)
}

#[pyfunction]
fn canonical_under_swaps(colours: Vec<usize>) -> PyResult<Vec<usize>> {
    let k = colours.iter().max().map_or(0, |&c| c + 1);
    let f = Colouring::new(k, colours).map_err(py_err)?;
    Ok(symmetry::canonical_under_swaps(&f).colours().to_vec())
}

#[pyfunction]
#[pyo3(signature = (g, cap=100_000))]
fn automorphisms(g: &PyGraph, cap: usize) -> PyResult<Vec<Vec<usize>>> {
    let auts = symmetry::automorphisms(&g.inner, cap).map_err(py_err)?;
    Ok(auts.iter().map(|a| a.as_slice().to_vec()).collect())
}

/// Lower bounds as a JSON object with exact rationals as strings.
#[pyfunction]
fn bound_report(g: &PyGraph) -> PyResult<String> {
    let report = bounds::bound_report(&g.inner, g.inner.n() <= bounds::MAD_VERTEX_LIMIT).map_err(py_err)?;
    serde_json::to_string(&report).map_err(json_err)
}

#[pyfunction]
fn regular_regime(k: usize, d: usize) -> PyResult<&'static str> {
    Ok(match bounds::regular_regime(k, d).map_err(py_err)? {
        bounds::Regime::AlwaysNo => "always_no",
        bounds::Regime::CandidateNpc => "candidate_npc",
        bounds::Regime::Open => "open",
    })
}

#[pyfunction]
fn trivial_yes_threshold(k: usize, d: usize) -> PyResult<bool> {
    bounds::trivial_yes_threshold(k, d).map_err(py_err)
}

#[pyfunction]
fn npc_degree_bound(k: usize) -> PyResult<usize> {
    bounds::npc_degree_bound(k).map_err(py_err)
}

#[pyfunction]
fn g_d(d: usize) -> PyResult<PyGadget> {
    Ok(PyGadget {
        inner: gadgets::g_d(d).map_err(py_err)?,
    })
}

#[pyfunction]
fn chain_gadget(k: usize, t: usize) -> PyResult<PyGadget> {
    Ok(PyGadget {
        inner: gadgets::chain_gadget(k, t).map_err(py_err)?,
    })
}

#[pyfunction]
fn filler_gadget(d: usize) -> PyResult<PyGadget> {
    Ok(PyGadget {
        inner: gadgets::filler_gadget(d).map_err(py_err)?,
    })
}

fn need(value: Option<usize>, name: &str, construction: &str) -> PyResult<usize> {
    value.ok_or_else(|| PyValueError::new_err(format!("{construction} needs {name}")))
}

/// Applies construction `cc`, `c2`, `c3`, `c4`, `c5`, `c6` or `universal`.
#[pyfunction]
#[pyo3(signature = (construction, g, k=None, d=None, q=None))]
fn reduce(construction: &str, g: &PyGraph, k: Option<usize>, d: Option<usize>, q: Option<usize>) -> PyResult<PyReduction> {
    let g = &g.inner;
    let out = match construction {
        "cc" => reductions::coleman_cai(g, need(k, "k", "cc")?),
        "c2" => reductions::construct_bipartite_delta_k_plus_1(g, need(k, "k", "c2")?),
        "c3" => reductions::construct_regular(g, need(k, "k", "c3")?, need(d, "d", "c3")?),
        "c4" => reductions::construct_k23(g),
        "c5" => reductions::construct_swap_auto(g),
        "c6" => reductions::join_kq(g, need(q, "q", "c6")?),
        "universal" => Ok(reductions::universal_output(g)),
        other => return Err(PyValueError::new_err(format!("unknown construction {other:?}"))),
    }
    .map_err(py_err)?;
    Ok(PyReduction { inner: out })
}

/// Runs a verification suite; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite, budget_secs=60))]
fn verify(py: Python<'_>, suite: &str, budget_secs: u64) -> PyResult<(bool, String)> {
    let config = SuiteConfig {
        solve_budget: SolveBudget::wall(Duration::from_secs(budget_secs)),
        ..SuiteConfig::default()
    };
    let report = py
        .detach(|| harness::run_suite(suite, &config))
        .ok_or_else(|| PyValueError::new_err(format!("unknown suite {suite:?}")))?;
    Ok((report.passed(), serde_json::to_string(&report).map_err(json_err)?))
}

#[pymodule]
#[pyo3(name = "acyclic_lab")]
fn acyclic_lab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyGadget>()?;
    m.add_class::<PyReduction>()?;
    m.add("SUITES", harness::SUITES.to_vec())?;
    m.add_function(wrap_pyfunction!(is_acyclic_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(find_bicoloured_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(acyclic_chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(count_classes, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_under_swaps, m)?)?;
    m.add_function(wrap_pyfunction!(automorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(bound_report, m)?)?;
    m.add_function(wrap_pyfunction!(regular_regime, m)?)?;
    m.add_function(wrap_pyfunction!(trivial_yes_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(npc_degree_bound, m)?)?;
    m.add_function(wrap_pyfunction!(g_d, m)?)?;
    m.add_function(wrap_pyfunction!(chain_gadget, m)?)?;
    m.add_function(wrap_pyfunction!(filler_gadget, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
