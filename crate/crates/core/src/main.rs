//! `acyclic-lab`: generate gadgets, apply reductions, solve, count and run
//! verification suites.
//!
//! Exit codes: 0 yes / verified, 1 no / refuted, 2 unknown within budget,
//! 3 usage or input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use acyclic_lab::gadgets::{chain_gadget, filler_gadget, g_d};
use acyclic_lab::graph::catalog::{self, EXCEPTION_NAMES};
use acyclic_lab::harness::files::{read_graph, write_graph_files};
use acyclic_lab::harness::{run_suite, Manifest, Sidecar, SuiteConfig, SUITES};
use acyclic_lab::reductions::{
    coleman_cai, construct_bipartite_delta_k_plus_1, construct_k23, construct_regular,
    construct_swap_auto, join_kq, universal_output,
};
use acyclic_lab::solver::bounds::{
    bound_report, npc_degree_bound, regular_regime, trivial_yes_threshold, MAD_VERTEX_LIMIT,
};
use acyclic_lab::solver::{acyclic_chromatic_number, solve, ChromaticNumber, ColouringKind, Decision, SolveBudget};
use acyclic_lab::symmetry::{count_classes, Caps, Relation};
use acyclic_lab::Error;

const YES: u8 = 0;
const NO: u8 = 1;
const UNKNOWN: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "acyclic-lab", version, about = "Acyclic colouring solver, gadgets and reductions")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a gadget or named graph as `<out>.col` plus sidecar and manifest.
    Gen(GenArgs),
    /// Apply a construction to a DIMACS graph.
    Reduce(ReduceArgs),
    /// Decide colourability, or compute the acyclic chromatic number.
    Solve(SolveArgs),
    /// Count colourings up to colour swaps (and automorphisms).
    Count(CountArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Lower bounds for a graph, or the degree regime for k and d.
    Bound(BoundArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gd,
    Chain,
    Filler,
    Exception,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Exception graph name: k4, q3 or dual-p4-join-k2.
    #[arg(long)]
    name: Option<String>,
    /// Output path without extension.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Cc,
    C2,
    C3,
    C4,
    C5,
    C6,
    Universal,
}

#[derive(Args)]
struct ReduceArgs {
    construction: Construction,
    /// Input graph in DIMACS format.
    input: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BudgetArgs {
    /// Wall-clock limit per solve in seconds.
    #[arg(long, default_value_t = 60.0)]
    budget_secs: f64,
    /// Search node limit per solve.
    #[arg(long)]
    node_limit: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> anyhow::Result<SolveBudget> {
        if !(self.budget_secs.is_finite() && self.budget_secs >= 0.0) {
            bail!("--budget-secs must be a non-negative number");
        }
        Ok(SolveBudget {
            node_limit: self.node_limit,
            wall_limit: Some(Duration::from_secs_f64(self.budget_secs)),
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    /// Palette size; required unless --number is given.
    #[arg(long)]
    k: Option<usize>,
    /// Proper colouring.
    #[arg(long, conflicts_with = "acyclic")]
    chromatic: bool,
    /// Acyclic colouring (the default).
    #[arg(long)]
    acyclic: bool,
    /// Compute the acyclic chromatic number.
    #[arg(long, conflicts_with_all = ["chromatic", "k"])]
    number: bool,
    /// Write the witness colouring here.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Swap,
    #[value(name = "swap_auto", alias = "swap-auto")]
    SwapAuto,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Acyclic,
    Proper,
}

#[derive(Args)]
struct CountArgs {
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "swap")]
    relation: RelationArg,
    #[arg(long, value_enum, default_value = "acyclic")]
    kind: KindArg,
    /// Give up after this many colourings.
    #[arg(long, default_value_t = 10_000_000)]
    max_colourings: u64,
    /// Give up after this many automorphisms.
    #[arg(long, default_value_t = 1_000_000)]
    max_automorphisms: usize,
    /// Print one representative per class.
    #[arg(long)]
    representatives: bool,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the suite names, or `all`.
    suite: String,
    /// Wall-clock limit per solve in seconds.
    #[arg(long, default_value_t = 60)]
    budget_secs: u64,
    /// Wall-clock limit in seconds for the slow class count of c5.
    #[arg(long, default_value_t = 300)]
    count_secs: u64,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    /// Graph to bound; omit to classify `--k` and `--d` only.
    input: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { YES });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if json {
                println!("{}", json!({ "error": format!("{e:#}") }));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(USAGE)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Gen(a) => gen(a, json),
        Command::Reduce(a) => reduce(a, json),
        Command::Solve(a) => solve_cmd(a, json),
        Command::Count(a) => count(a, json),
        Command::Verify(a) => verify(a, json),
        Command::Bound(a) => bound(a, json),
    }
}

fn need<T>(value: Option<T>, flag: &str, what: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| anyhow!("{what} needs --{flag}"))
}

fn params(pairs: &[(&str, Option<Value>)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
        .collect()
}

fn report_files(files: &[PathBuf], summary: Value, json: bool) {
    if json {
        let paths: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
        println!("{}", json!({ "files": paths, "summary": summary }));
    } else {
        for f in files {
            println!("wrote {}", f.display());
        }
    }
}

fn gen(a: GenArgs, json: bool) -> anyhow::Result<u8> {
    let (family, parameters, graph, sidecar) = match a.family {
        Family::Gd => {
            let d = need(a.d, "d", "gen gd")?;
            let p = params(&[("d", Some(json!(d)))]);
            let gadget = g_d(d)?;
            let side = Sidecar::for_gadget("gd", p.clone(), &gadget);
            ("gd", p, gadget.graph, side)
        }
        Family::Chain => {
            let k = need(a.k, "k", "gen chain")?;
            let t = need(a.t, "t", "gen chain")?;
            let p = params(&[("k", Some(json!(k))), ("t", Some(json!(t)))]);
            let gadget = chain_gadget(k, t)?;
            let side = Sidecar::for_gadget("chain", p.clone(), &gadget);
            ("chain", p, gadget.graph, side)
        }
        Family::Filler => {
            let d = need(a.d, "d", "gen filler")?;
            let p = params(&[("d", Some(json!(d)))]);
            let gadget = filler_gadget(d)?;
            let side = Sidecar::for_gadget("filler", p.clone(), &gadget);
            ("filler", p, gadget.graph, side)
        }
        Family::Exception => {
            let name = need(a.name.clone(), "name", "gen exception")?;
            let g = catalog::exception(&name).ok_or_else(|| {
                anyhow!("unknown exception graph {name:?}; expected one of {}", EXCEPTION_NAMES.join(", "))
            })?;
            let p = params(&[("name", Some(json!(name)))]);
            let side = Sidecar::for_graph("exception", p.clone(), &g);
            ("exception", p, g, side)
        }
    };
    let mut manifest = Manifest::new(&format!("gen {family}"), parameters);
    let summary = json!({ "n": graph.n(), "m": graph.m() });
    manifest.outcome = summary.clone();
    let comment = format!("acyclic-lab gen {family}");
    let files = write_graph_files(&a.out, &graph, &[&comment], &sidecar, &manifest)?;
    report_files(&files, summary, json);
    Ok(YES)
}

fn load(path: &Path) -> anyhow::Result<acyclic_lab::Graph> {
    read_graph(path).with_context(|| format!("reading {}", path.display()))
}

fn reduce(a: ReduceArgs, json: bool) -> anyhow::Result<u8> {
    let g = load(&a.input)?;
    let out = match a.construction {
        Construction::Cc => coleman_cai(&g, need(a.k, "k", "reduce cc")?)?,
        Construction::C2 => construct_bipartite_delta_k_plus_1(&g, need(a.k, "k", "reduce c2")?)?,
        Construction::C3 => construct_regular(&g, need(a.k, "k", "reduce c3")?, need(a.d, "d", "reduce c3")?)?,
        Construction::C4 => construct_k23(&g)?,
        Construction::C5 => construct_swap_auto(&g)?,
        Construction::C6 => join_kq(&g, need(a.q, "q", "reduce c6")?)?,
        Construction::Universal => universal_output(&g),
    };
    let p = params(&[
        ("k", a.k.map(|k| json!(k))),
        ("d", a.d.map(|d| json!(d))),
        ("q", a.q.map(|q| json!(q))),
    ]);
    let sidecar = Sidecar::for_reduction(p.clone(), &out)?;
    let mut manifest = Manifest::new(&format!("reduce {}", out.construction), p);
    manifest.hash_input(&a.input)?;
    let failed = out.failed_claims();
    let summary = json!({ "n": out.graph.n(), "m": out.graph.m(), "failed_claims": failed });
    manifest.outcome = summary.clone();
    let comment = format!("acyclic-lab reduce {}", out.construction);
    let files = write_graph_files(&a.out, &out.graph, &[&comment], &sidecar, &manifest)?;
    report_files(&files, summary, json);
    if !failed.is_empty() {
        eprintln!("warning: claimed properties do not hold: {failed:?}");
        return Ok(NO);
    }
    Ok(YES)
}

fn write_manifest(path: &Option<PathBuf>, manifest: &Manifest) -> anyhow::Result<()> {
    if let Some(path) = path {
        std::fs::write(path, manifest.to_json()?).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn solve_cmd(a: SolveArgs, json: bool) -> anyhow::Result<u8> {
    let g = load(&a.input)?;
    let budget = a.budget.budget()?;
    let kind = if a.chromatic { ColouringKind::Proper } else { ColouringKind::Acyclic };
    let mut p = params(&[
        ("kind", Some(json!(kind.name()))),
        ("k", a.k.map(|k| json!(k))),
        ("budget_secs", Some(json!(a.budget.budget_secs))),
        ("node_limit", a.budget.node_limit.map(|n| json!(n))),
    ]);
    let (code, summary, witness) = if a.number {
        p.insert("number".into(), json!(true));
        match acyclic_chromatic_number(&g, budget)? {
            ChromaticNumber::Exact { value, witness } => {
                (YES, json!({ "status": "exact", "chi_a": value }), Some(witness))
            }
            ChromaticNumber::Unknown { lower, upper } => {
                (UNKNOWN, json!({ "status": "unknown", "lower": lower, "upper": upper }), None)
            }
        }
    } else {
        let k = need(a.k, "k", "solve")?;
        let solved = solve(&g, k, kind, budget)?;
        let code = match solved.decision {
            Decision::Yes(_) => YES,
            Decision::No => NO,
            Decision::Unknown => UNKNOWN,
        };
        let summary = json!({ "decision": solved.decision.label(), "nodes": solved.nodes });
        (code, summary, solved.decision.witness().cloned())
    };
    if let (Some(path), Some(f)) = (&a.witness, &witness) {
        std::fs::write(path, f.to_text()).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut manifest = Manifest::new("solve", p);
    manifest.hash_input(&a.input)?;
    // node counts are left out: a wall-clock budget makes them machine dependent
    let mut outcome = summary.clone();
    outcome.as_object_mut().expect("summary object").remove("nodes");
    manifest.outcome = outcome;
    write_manifest(&a.manifest, &manifest)?;
    if json {
        let mut out = summary;
        out["colouring"] = json!(witness.as_ref().map(|f| f.colours().to_vec()));
        println!("{out}");
    } else {
        match (&summary.get("chi_a"), &summary.get("decision")) {
            (Some(v), _) => println!("chi_a {v}"),
            (_, Some(d)) => println!("{}", d.as_str().unwrap_or_default()),
            _ => println!(
                "unknown: {} <= chi_a <= {}",
                summary["lower"], summary["upper"]
            ),
        }
        if let (Some(f), None) = (&witness, &a.witness) {
            print!("{}", f.to_text());
        }
    }
    Ok(code)
}

fn count(a: CountArgs, json: bool) -> anyhow::Result<u8> {
    let g = load(&a.input)?;
    let relation = match a.relation {
        RelationArg::Swap => Relation::Swap,
        RelationArg::SwapAuto => Relation::SwapAuto,
    };
    let kind = match a.kind {
        KindArg::Acyclic => ColouringKind::Acyclic,
        KindArg::Proper => ColouringKind::Proper,
    };
    let caps = Caps {
        colourings: a.max_colourings,
        automorphisms: a.max_automorphisms,
        keep_representatives: a.representatives,
        ..Caps::default()
    };
    let p = params(&[
        ("k", Some(json!(a.k))),
        ("relation", Some(json!(relation.name()))),
        ("kind", Some(json!(kind.name()))),
        ("max_colourings", Some(json!(a.max_colourings))),
        ("max_automorphisms", Some(json!(a.max_automorphisms))),
    ]);
    let mut manifest = Manifest::new("count", p);
    manifest.hash_input(&a.input)?;
    match count_classes(&g, a.k, relation, kind, &caps) {
        Ok(c) => {
            manifest.outcome = json!({ "count": c.count, "colourings": c.colourings });
            write_manifest(&a.manifest, &manifest)?;
            if json {
                println!("{}", serde_json::to_string(&c)?);
            } else {
                println!("{}", c.count);
                for f in c.representatives.iter().flatten() {
                    let line: Vec<String> = f.colours().iter().map(usize::to_string).collect();
                    println!("{}", line.join(" "));
                }
            }
            Ok(YES)
        }
        Err(Error::Overflow { what, cap }) => {
            manifest.outcome = json!({ "overflow": what, "cap": cap });
            write_manifest(&a.manifest, &manifest)?;
            if json {
                println!("{}", json!({ "overflow": what, "cap": cap }));
            } else {
                println!("overflow: more than {cap} {what}");
            }
            Ok(UNKNOWN)
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(a: VerifyArgs, json: bool) -> anyhow::Result<u8> {
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&a.suite.as_str()) {
        vec![a.suite.as_str()]
    } else {
        bail!("unknown suite {:?}; expected one of {} or all", a.suite, SUITES.join(", "));
    };
    let config = SuiteConfig {
        solve_budget: SolveBudget::wall(Duration::from_secs(a.budget_secs)),
        count_wall: Duration::from_secs(a.count_secs),
    };
    let mut failures = 0;
    let mut outcomes = Vec::new();
    let mut reports = Vec::new();
    for name in names {
        let report = run_suite(name, &config).expect("known suite");
        failures += report.failures();
        outcomes.push(report.outcome_summary());
        if !json {
            for c in &report.cases {
                println!("{} {:<8} {} ({} ms)", name, c.verdict.label(), c.name, c.millis);
                if let acyclic_lab::harness::Verdict::Fail { witness } = &c.verdict {
                    println!("    witness: {witness}");
                }
                if let acyclic_lab::harness::Verdict::Skipped { reason } = &c.verdict {
                    println!("    {reason}");
                }
            }
        }
        reports.push(report);
    }
    let p = params(&[
        ("suite", Some(json!(a.suite))),
        ("budget_secs", Some(json!(a.budget_secs))),
        ("count_secs", Some(json!(a.count_secs))),
    ]);
    let mut manifest = Manifest::new("verify", p);
    manifest.outcome = Value::Array(outcomes);
    write_manifest(&a.manifest, &manifest)?;
    if json {
        let out = if reports.len() == 1 {
            serde_json::to_string(&reports[0])?
        } else {
            serde_json::to_string(&reports)?
        };
        println!("{out}");
    }
    Ok(if failures == 0 { YES } else { NO })
}

fn bound(a: BoundArgs, json: bool) -> anyhow::Result<u8> {
    let mut out = serde_json::Map::new();
    if let Some(path) = &a.input {
        let g = load(path)?;
        let report = bound_report(&g, g.n() <= MAD_VERTEX_LIMIT)?;
        out.insert("least_admissible_palette".into(), json!(report.least_admissible_palette(&g)));
        out.insert("bounds".into(), serde_json::to_value(&report)?);
    }
    if let Some(k) = a.k {
        out.insert("npc_degree_bound".into(), json!(npc_degree_bound(k)?));
        if let Some(d) = a.d {
            out.insert("regular_regime".into(), serde_json::to_value(regular_regime(k, d)?)?);
            out.insert("trivial_yes".into(), json!(trivial_yes_threshold(k, d)?));
        }
    } else if a.d.is_some() {
        bail!("--d needs --k");
    }
    if out.is_empty() {
        bail!("bound needs an input graph or --k");
    }
    if json {
        println!("{}", Value::Object(out));
    } else {
        for (key, value) in &out {
            match value {
                Value::Object(fields) => {
                    for (f, v) in fields {
                        println!("{f} {}", v.as_str().map_or(v.to_string(), str::to_string));
                    }
                }
                v => println!("{key} {}", v.as_str().map_or(v.to_string(), str::to_string)),
            }
        }
    }
    Ok(YES)
}
