use std::sync::mpsc;

use serde_json::{json, Value};

use super::{ensure, Miss, Runner, SuiteConfig};
use crate::colouring::{is_acyclic_colouring, is_proper, Colouring};
use crate::gadgets::{chain_gadget, g_d};
use crate::graph::{catalog, Graph};
use crate::reductions::{
    add_universal, coleman_cai, construct_bipartite_delta_k_plus_1, construct_k23,
    construct_regular, construct_swap_auto, join_kq, lift_bipartite_colouring,
    lift_regular_colouring, Provenance,
};
use crate::solver::bounds::{mad, regular_bound, Rational};
use crate::solver::{
    acyclic_chromatic_number, for_each_colouring, solve, solve_by_search, ChromaticNumber,
    ColouringKind, Decision, SolveBudget, Visit,
};
use crate::symmetry::{automorphisms, count_classes, is_unique, Caps, Relation};

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "edges": g.edges() })
}

/// Witness colouring, `None` for a refutation; budget misses skip the case.
fn decide(
    g: &Graph,
    k: usize,
    kind: ColouringKind,
    budget: SolveBudget,
    by_search: bool,
) -> Result<Option<Colouring>, Miss> {
    let solved = if by_search {
        solve_by_search(g, k, kind, budget)?
    } else {
        solve(g, k, kind, budget)?
    };
    match solved.decision {
        Decision::Yes(f) => Ok(Some(f)),
        Decision::No => Ok(None),
        Decision::Unknown => Err(Miss::Skip(format!(
            "{} {k}-colourability of a {}-vertex graph not settled within budget",
            kind.name(),
            g.n()
        ))),
    }
}

/// `χ_a` by search alone, counting up from one colour.
fn chi_by_search(g: &Graph, budget: SolveBudget) -> Result<(usize, Colouring), Miss> {
    let mut k = usize::from(g.n() > 0);
    loop {
        if let Some(f) = decide(g, k, ColouringKind::Acyclic, budget, true)? {
            return Ok((k, f));
        }
        k += 1;
    }
}

fn chi(g: &Graph, budget: SolveBudget) -> Result<usize, Miss> {
    match acyclic_chromatic_number(g, budget)? {
        ChromaticNumber::Exact { value, .. } => Ok(value),
        ChromaticNumber::Unknown { lower, upper } => Err(Miss::Skip(format!(
            "acyclic chromatic number only bracketed in {lower}..={upper}"
        ))),
    }
}

fn count(g: &Graph, k: usize, relation: Relation, kind: ColouringKind) -> Result<u64, Miss> {
    Ok(count_classes(g, k, relation, kind, &Caps::default())?.count)
}

pub(super) fn lower_bounds(r: &mut Runner, config: &SuiteConfig) {
    for n in 1..=7 {
        r.case(format!("connected n={n}"), || {
            for g in catalog::connected_graphs_up_to_iso(n) {
                let (value, f) = chi_by_search(&g, config.solve_budget)?;
                let (nn, m) = (g.n() as u64, g.m() as u64);
                let witness = || json!({ "graph": graph_json(&g), "chi_a": value, "colouring": f.colours() });
                // χ_a > 1 + m/n, cross-multiplied
                ensure(m == 0 || value as u64 * nn > nn + m, witness)?;
                if let Some(b) = regular_bound(&g) {
                    ensure(value >= b, witness)?;
                }
                let half_mad = mad(&g)? / 2;
                ensure(m == 0 || Rational::from_integer(value as u64) > half_mad + 1, witness)?;
            }
            Ok(())
        });
    }
}

pub(super) fn gd_family(r: &mut Runner, config: &SuiteConfig) {
    for d in 1..=6 {
        r.case(format!("G_{d}"), || {
            let gadget = g_d(d)?;
            let g = &gadget.graph;
            let expected = (d + 3).div_ceil(2);
            let witness = |what: &str| json!({ "d": d, "failed": what, "graph": graph_json(g) });
            ensure(g.is_d_regular(d), || witness("regularity"))?;
            let auts = automorphisms(g, 1_000_000)?;
            let mut orbit = vec![false; g.n()];
            for a in &auts {
                orbit[a.image(0)] = true;
            }
            ensure(orbit.iter().all(|&x| x), || witness("vertex transitivity"))?;
            let canonical = gadget.canonical_colouring.as_ref().expect("G_d has a colouring");
            ensure(canonical.palette() == expected && is_acyclic_colouring(g, canonical), || {
                witness("canonical colouring")
            })?;
            let yes = decide(g, expected, ColouringKind::Acyclic, config.solve_budget, true)?;
            ensure(yes.is_some(), || witness("colourable with the bound"))?;
            let below = decide(g, expected - 1, ColouringKind::Acyclic, config.solve_budget, true)?;
            ensure(below.is_none(), || {
                json!({ "d": d, "failed": "refutation below the bound",
                        "colouring": below.as_ref().map(|f| f.colours().to_vec()) })
            })?;
            let value = chi(g, config.solve_budget)?;
            ensure(value == expected, || json!({ "d": d, "chi_a": value, "expected": expected }))
        });
    }
}

/// Whether `x` and `y` are joined by a path using only colours `a` and `b`.
fn bicoloured_path(g: &Graph, f: &Colouring, x: usize, y: usize, a: usize, b: usize) -> bool {
    let allowed = |v: usize| f.colour(v) == a || f.colour(v) == b;
    if !allowed(x) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![x];
    seen[x] = true;
    while let Some(v) = stack.pop() {
        if v == y {
            return true;
        }
        for &w in g.neighbours(v) {
            if !seen[w] && allowed(w) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

pub(super) fn chain_lemma(r: &mut Runner) {
    for k in [3, 4] {
        for t in [1, 2] {
            r.case(format!("k={k} t={t}"), || {
                let chain = chain_gadget(k, t)?;
                let g = &chain.graph;
                let terminals = &chain.terminals;
                let mut bad: Option<Value> = None;
                let total = for_each_colouring(g, k, ColouringKind::Acyclic, |c| {
                    let f = Colouring::new(k, c.to_vec()).expect("palette k");
                    let c1 = f.colour(terminals[0]);
                    if terminals.iter().any(|&x| f.colour(x) != c1) {
                        bad = Some(json!({ "failed": "monochromatic terminals", "colouring": c }));
                        return Visit::Stop;
                    }
                    for c2 in (0..k).filter(|&c2| c2 != c1) {
                        for (i, &x) in terminals.iter().enumerate() {
                            for &y in &terminals[i..] {
                                if !bicoloured_path(g, &f, x, y, c1, c2) {
                                    bad = Some(json!({ "failed": "bicoloured path",
                                        "colouring": c, "terminals": [x, y], "colours": [c1, c2] }));
                                    return Visit::Stop;
                                }
                            }
                        }
                    }
                    Visit::Continue
                })?;
                if let Some(w) = bad {
                    return Err(Miss::Fail(w));
                }
                ensure(total > 0, || json!({ "failed": "no colouring at all" }))?;
                let classes = count(g, k, Relation::SwapAuto, ColouringKind::Acyclic)?;
                ensure(classes == 1, || json!({ "failed": "uniqueness", "swap_auto_classes": classes }))
            });
        }
    }
}

fn small_labelled_graphs() -> impl Iterator<Item = Graph> {
    (1..=4).flat_map(catalog::labelled_graphs)
}

pub(super) fn c1(r: &mut Runner, config: &SuiteConfig) {
    r.case("k=3, labelled graphs n<=4", || {
        for g in small_labelled_graphs() {
            let out = coleman_cai(&g, 3)?;
            let failed = out.failed_claims();
            ensure(failed.is_empty(), || json!({ "graph": graph_json(&g), "failed_claims": failed }))?;
            let source = decide(&g, 3, ColouringKind::Proper, config.solve_budget, false)?;
            let target = decide(&out.graph, 3, ColouringKind::Acyclic, config.solve_budget, false)?;
            ensure(source.is_some() == target.is_some(), || {
                json!({ "graph": graph_json(&g),
                        "source_colouring": source.as_ref().map(|f| f.colours().to_vec()),
                        "output_colouring": target.as_ref().map(|f| f.colours().to_vec()) })
            })?;
        }
        Ok(())
    });
}

/// Colouring of `G` read off the chain terminals of a c2 or c5 output.
fn restrict_to_chains(g: &Graph, provenance: &[Provenance], f: &Colouring) -> Vec<Option<usize>> {
    let mut colours = vec![None; g.n()];
    for (w, p) in provenance.iter().enumerate() {
        if let Provenance::Chain { vertex, terminal: true, .. } = *p {
            colours[vertex].get_or_insert(f.colour(w));
        }
    }
    colours
}

pub(super) fn c2(r: &mut Runner, config: &SuiteConfig) {
    let k = 3;
    let inputs = [
        ("K_2", Graph::complete(2)),
        ("P_3", Graph::path(3)),
        ("C_5", Graph::cycle(5)),
        ("K_4", Graph::complete(4)),
    ];
    for (name, g) in inputs {
        r.case(format!("k=3 {name}"), || {
            let out = construct_bipartite_delta_k_plus_1(&g, k)?;
            let h = &out.graph;
            let failed = out.failed_claims();
            ensure(failed.is_empty(), || json!({ "failed_claims": failed }))?;
            let expected_n = (2 * k * k - k) * 2 * g.m() + k * g.m();
            ensure(h.n() == expected_n, || json!({ "vertices": h.n(), "expected": expected_n }))?;
            let source = decide(&g, k, ColouringKind::Proper, config.solve_budget, false)?;
            let target = decide(h, k, ColouringKind::Acyclic, config.solve_budget, false)?;
            ensure(source.is_some() == target.is_some(), || {
                json!({ "graph": graph_json(&g), "source_colourable": source.is_some(),
                        "output_colourable": target.is_some() })
            })?;
            if let Some(f) = &source {
                let lifted = lift_bipartite_colouring(&g, &out, f)?;
                ensure(is_acyclic_colouring(h, &lifted), || json!({ "failed": "lift", "colouring": lifted.colours() }))?;
            }
            if let Some(f) = &target {
                let back = restrict_to_chains(&g, &out.provenance, f);
                let proper = g.edges().iter().all(|&(u, v)| back[u] != back[v]);
                ensure(proper, || json!({ "failed": "restriction", "colouring": f.colours() }))?;
            }
            Ok(())
        });
    }
}

pub(super) fn c3(r: &mut Runner, config: &SuiteConfig) {
    for (k, d) in [(3, 3), (4, 4)] {
        for (name, g) in [("K_2", Graph::complete(2)), ("P_3", Graph::path(3))] {
            r.case(format!("k={k} d={d} {name}"), || {
                let out = construct_regular(&g, k, d)?;
                let h = &out.graph;
                ensure(h.is_d_regular(d), || json!({ "failed": "regularity", "graph": graph_json(h) }))?;
                let source = decide(&g, k, ColouringKind::Acyclic, config.solve_budget, false)?;
                let Some(f) = source else {
                    return Err(Miss::Fail(json!({ "failed": "input expected colourable" })));
                };
                let lifted = lift_regular_colouring(&g, &out, d, &f)?;
                ensure(is_acyclic_colouring(h, &lifted), || json!({ "failed": "lift", "colouring": lifted.colours() }))?;
                let target = decide(h, k, ColouringKind::Acyclic, config.solve_budget, false)?;
                let Some(w) = target else {
                    return Err(Miss::Fail(json!({ "failed": "output refuted" })));
                };
                for copy in [1, 2] {
                    let colours = out.source_vertices(Some(copy)).iter().map(|&x| w.colour(x)).collect();
                    let restricted = Colouring::new(k, colours)?;
                    ensure(is_acyclic_colouring(&g, &restricted), || {
                        json!({ "failed": "restriction", "copy": copy, "colouring": w.colours() })
                    })?;
                }
                Ok(())
            });
        }
    }
}

pub(super) fn c4(r: &mut Runner) {
    r.case("labelled graphs n<=4", || {
        for g in small_labelled_graphs() {
            let out = construct_k23(&g)?;
            let source = count(&g, 3, Relation::Swap, ColouringKind::Proper)?;
            let target = count(&out.graph, 3, Relation::Swap, ColouringKind::Acyclic)?;
            ensure(source == target, || json!({ "graph": graph_json(&g), "counts": [source, target] }))?;
        }
        Ok(())
    });
    for (name, g, expected) in [
        ("K_3", Graph::complete(3), 1),
        ("P_3", Graph::path(3), 2),
        ("K_4", Graph::complete(4), 0),
    ] {
        r.case(format!("named {name}"), || {
            let out = construct_k23(&g)?;
            let source = count(&g, 3, Relation::Swap, ColouringKind::Proper)?;
            let target = count(&out.graph, 3, Relation::Swap, ColouringKind::Acyclic)?;
            ensure(source == expected && target == expected, || json!({ "counts": [source, target], "expected": expected }))
        });
    }
}

pub(super) fn c5(r: &mut Runner, config: &SuiteConfig) {
    r.case("K_2 swap_auto classes", || {
        let g = Graph::complete(2);
        let out = construct_swap_auto(&g)?;
        let expected = count(&g, 3, Relation::SwapAuto, ColouringKind::Proper)?;
        let h = out.graph.clone();
        let (tx, rx) = mpsc::channel();
        std::thread::spawn(move || {
            let _ = tx.send(count_classes(&h, 3, Relation::SwapAuto, ColouringKind::Acyclic, &Caps::default()));
        });
        match rx.recv_timeout(config.count_wall) {
            Ok(result) => {
                let counted = result?;
                ensure(counted.count == 1 && expected == 1, || {
                    json!({ "classes": counted.count, "colourings": counted.colourings, "source_classes": expected })
                })
            }
            Err(_) => Err(Miss::Skip(format!(
                "class count not finished within {} s",
                config.count_wall.as_secs()
            ))),
        }
    });
}

pub(super) fn c6(r: &mut Runner, config: &SuiteConfig) {
    let inputs = [("C_4", Graph::cycle(4)), ("C_5", Graph::cycle(5)), ("P_4", Graph::path(4))];
    for q in [1, 2] {
        for (name, g) in &inputs {
            r.case(format!("q={q} {name}"), || {
                let out = join_kq(g, q)?;
                let (base, joined) = (chi(g, config.solve_budget)?, chi(&out.graph, config.solve_budget)?);
                ensure(joined == base + q, || json!({ "chi_a": base, "chi_a_join": joined, "q": q }))?;
                let caps = Caps::default();
                let before = is_unique(g, 3, Relation::SwapAuto, ColouringKind::Acyclic, &caps)?;
                let after = is_unique(&out.graph, 3 + q, Relation::SwapAuto, ColouringKind::Acyclic, &caps)?;
                ensure(before == after, || json!({ "uniqueness": [before, after] }))
            });
        }
    }
}

pub(super) fn universal(r: &mut Runner) {
    for (name, g) in [("K_{2,3}", Graph::complete_bipartite(2, 3)), ("P_4", Graph::path(4))] {
        r.case(format!("k=3 {name}"), || {
            let before = count(&g, 3, Relation::Swap, ColouringKind::Acyclic)?;
            let after = count(&add_universal(&g), 4, Relation::Swap, ColouringKind::Acyclic)?;
            ensure(before == after, || json!({ "counts": [before, after] }))
        });
    }
}

/// Every cycle of `g`, each listed once from its smallest vertex.
fn all_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("non-empty path");
        for &w in g.neighbours(last) {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                extend(g, start, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        on[s] = true;
        extend(g, s, &mut vec![s], &mut on, &mut out);
        on[s] = false;
    }
    out
}

pub(super) fn verifier_oracle(r: &mut Runner) {
    for n in 1..=5 {
        r.case(format!("labelled n={n}, all 3-colour assignments"), || {
            for g in catalog::labelled_graphs(n) {
                let cycles = all_cycles(&g);
                for mut code in 0..3usize.pow(n as u32) {
                    let colours: Vec<usize> = (0..n)
                        .map(|_| {
                            let c = code % 3;
                            code /= 3;
                            c
                        })
                        .collect();
                    let f = Colouring::new(3, colours)?;
                    let oracle = is_proper(&g, &f)?
                        && cycles.iter().all(|c| {
                            let first = f.colour(c[0]);
                            let second = c.iter().map(|&v| f.colour(v)).find(|&x| x != first);
                            c.iter().any(|&v| f.colour(v) != first && Some(f.colour(v)) != second)
                        });
                    let verdict = is_acyclic_colouring(&g, &f);
                    ensure(oracle == verdict, || {
                        json!({ "graph": graph_json(&g), "colouring": f.colours(), "oracle": oracle, "verifier": verdict })
                    })?;
                }
            }
            Ok(())
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_enumeration_counts() {
        assert_eq!(all_cycles(&Graph::cycle(5)).len(), 1);
        assert_eq!(all_cycles(&Graph::complete(4)).len(), 7);
        assert_eq!(all_cycles(&Graph::complete(5)).len(), 37);
        assert_eq!(all_cycles(&Graph::path(4)).len(), 0);
    }
}
