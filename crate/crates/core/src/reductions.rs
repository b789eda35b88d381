//! Hardness constructions as deterministic graph transformations. Each
//! output records where every vertex came from and which structural
//! properties it claims; [`ReductionOutput::failed_claims`] checks them.

use serde::Serialize;

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::gadgets::{chain_gadget, filler_colouring, filler_gadget};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Provenance {
    /// A copy of source vertex `vertex`; `copy` is 1 or 2 when the source
    /// graph is duplicated.
    Source { vertex: usize, copy: Option<u8> },
    /// Vertex `index` of the chain gadget replacing `vertex`.
    Chain {
        vertex: usize,
        index: usize,
        terminal: bool,
    },
    /// The j-th vertex (from 1) added for source edge `edge`.
    Connector { edge: (usize, usize), j: usize },
    /// Internal vertex `index` of filler number `filler` at `vertex`.
    Filler {
        vertex: usize,
        filler: usize,
        index: usize,
    },
    /// Vertex `j` (from 1) of the joined complete graph.
    Hub { j: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "property", content = "value", rename_all = "snake_case")]
pub enum ClaimedProperty {
    Bipartite,
    MaxDegreeAtMost(usize),
    Regular(usize),
    Degenerate(usize),
}

impl ClaimedProperty {
    pub fn holds(self, g: &Graph) -> bool {
        match self {
            ClaimedProperty::Bipartite => g.is_bipartite().is_some(),
            ClaimedProperty::MaxDegreeAtMost(b) => g.max_degree() <= b,
            ClaimedProperty::Regular(d) => g.is_d_regular(d),
            ClaimedProperty::Degenerate(k) => g.is_k_degenerate(k).is_some(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionOutput {
    pub construction: &'static str,
    #[serde(skip)]
    pub graph: Graph,
    pub provenance: Vec<Provenance>,
    pub claimed_properties: Vec<ClaimedProperty>,
}

impl ReductionOutput {
    pub fn failed_claims(&self) -> Vec<ClaimedProperty> {
        self.claimed_properties
            .iter()
            .copied()
            .filter(|p| !p.holds(&self.graph))
            .collect()
    }

    /// Output vertices that are copies of source vertices of the given copy
    /// number (`None` for single-copy constructions), indexed by source
    /// vertex.
    pub fn source_vertices(&self, copy: Option<u8>) -> Vec<usize> {
        let mut out: Vec<(usize, usize)> = self
            .provenance
            .iter()
            .enumerate()
            .filter_map(|(i, p)| match *p {
                Provenance::Source { vertex, copy: c } if c == copy => Some((vertex, i)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out.into_iter().map(|(_, i)| i).collect()
    }
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

fn require_k(k: usize) -> Result<()> {
    require(k >= 3, || format!("k must be at least 3, got {k}"))
}

/// Every edge `uv` replaced by `K_{2,k}` on `{u, v}` and `k` new vertices.
fn biclique_replacement(g: &Graph, k: usize, construction: &'static str) -> ReductionOutput {
    let n = g.n();
    let mut provenance: Vec<Provenance> = (0..n)
        .map(|vertex| Provenance::Source { vertex, copy: None })
        .collect();
    let mut edges = Vec::with_capacity(2 * k * g.m());
    for &(u, v) in g.edges() {
        for j in 1..=k {
            let w = provenance.len();
            provenance.push(Provenance::Connector { edge: (u, v), j });
            edges.push((u, w));
            edges.push((v, w));
        }
    }
    ReductionOutput {
        construction,
        graph: Graph::new(provenance.len(), edges).expect("biclique replacement"),
        provenance,
        claimed_properties: vec![ClaimedProperty::Degenerate(2), ClaimedProperty::Bipartite],
    }
}

/// `G` is k-colourable iff the output is k-acyclic colourable.
pub fn coleman_cai(g: &Graph, k: usize) -> Result<ReductionOutput> {
    require_k(k)?;
    Ok(biclique_replacement(g, k, "cc"))
}

/// Three-vertex biclique replacement; preserves the number of colourings
/// up to swaps between proper 3-colourings of `G` and 3-acyclic
/// colourings of the output.
pub fn construct_k23(g: &Graph) -> Result<ReductionOutput> {
    let delta = g.max_degree();
    require(delta <= 8, || format!("maximum degree {delta} exceeds 8"))?;
    let mut out = biclique_replacement(g, 3, "c4");
    out.claimed_properties.push(ClaimedProperty::MaxDegreeAtMost(24));
    Ok(out)
}

/// Chains for every vertex with `terminals(v)` terminals each, and `per_edge`
/// connectors per source edge wired to the first `per_edge` terminals of
/// the block reserved for the neighbour (blocks of `block` terminals in
/// ascending neighbour order).
fn chains_and_connectors(
    g: &Graph,
    k: usize,
    terminals: impl Fn(usize) -> usize,
    block: usize,
    construction: &'static str,
) -> Result<ReductionOutput> {
    let mut provenance = Vec::new();
    let mut edges = Vec::new();
    // terminal_of[v] lists the output indices of chain(v)'s terminals
    let mut terminal_of: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (v, slot) in terminal_of.iter_mut().enumerate() {
        let t = terminals(v);
        if t == 0 {
            continue;
        }
        let chain = chain_gadget(k, t)?;
        let offset = provenance.len();
        for index in 0..chain.graph.n() {
            provenance.push(Provenance::Chain {
                vertex: v,
                index,
                terminal: chain.terminals.contains(&index),
            });
        }
        edges.extend(chain.graph.edges().iter().map(|&(a, b)| (a + offset, b + offset)));
        *slot = chain.terminals.iter().map(|&x| x + offset).collect();
    }
    let block_of = |v: usize, u: usize| {
        g.neighbours(v)
            .binary_search(&u)
            .expect("neighbour listed")
    };
    for &(u, v) in g.edges() {
        let (bu, bv) = (block_of(u, v), block_of(v, u));
        for j in 0..block {
            let w = provenance.len();
            provenance.push(Provenance::Connector {
                edge: (u, v),
                j: j + 1,
            });
            edges.push((terminal_of[u][bu * block + j], w));
            edges.push((terminal_of[v][bv * block + j], w));
        }
    }
    Ok(ReductionOutput {
        construction,
        graph: Graph::new(provenance.len(), edges)?,
        provenance,
        claimed_properties: vec![
            ClaimedProperty::Bipartite,
            ClaimedProperty::MaxDegreeAtMost(k + 1),
        ],
    })
}

/// Bipartite output of maximum degree `k+1`: `G` is k-colourable iff the
/// output is k-acyclic colourable. Isolated vertices of `G` contribute
/// nothing.
pub fn construct_bipartite_delta_k_plus_1(g: &Graph, k: usize) -> Result<ReductionOutput> {
    require_k(k)?;
    let delta = g.max_degree();
    require(delta <= 2 * (k - 1), || {
        format!("maximum degree {delta} exceeds 2(k-1) = {}", 2 * (k - 1))
    })?;
    chains_and_connectors(g, k, |v| k * g.degree(v), k, "c2")
}

/// `λ(v)`: 1-based position of v after sorting by degree, ties by index.
pub fn degree_rank(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut lambda = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        lambda[v] = i + 1;
    }
    lambda
}

/// Chains with pairwise distinct terminal counts `3·deg(v) + λ(v)` and
/// three connectors per edge; the last `λ(v)` terminals of each chain are
/// left unwired.
pub fn construct_swap_auto(g: &Graph) -> Result<ReductionOutput> {
    let delta = g.max_degree();
    require(delta <= 8, || format!("maximum degree {delta} exceeds 8"))?;
    let lambda = degree_rank(g);
    chains_and_connectors(g, 3, |v| 3 * g.degree(v) + lambda[v], 3, "c5")
}

/// Two copies of `G` padded to a d-regular graph with `d − deg(v)` filler
/// gadgets between `v⁽¹⁾` and `v⁽²⁾` for every v.
pub fn construct_regular(g: &Graph, k: usize, d: usize) -> Result<ReductionOutput> {
    require_k(k)?;
    let delta = g.max_degree();
    require(delta <= d, || format!("maximum degree {delta} exceeds d = {d}"))?;
    require(d <= 2 * k - 3, || format!("d = {d} exceeds 2k-3 = {}", 2 * k - 3))?;
    require(d >= 2, || format!("d must be at least 2, got {d}"))?;
    let n = g.n();
    let filler = filler_gadget(d)?;
    let inner = filler.graph.n() - 2;
    let (tx, ty) = (filler.terminals[0], filler.terminals[1]);
    let mut whole = g.disjoint_union(g);
    // None marks filler terminals, which merge into source copies
    let mut provenance: Vec<Option<Provenance>> = (0..2 * n)
        .map(|i| {
            Some(Provenance::Source {
                vertex: i % n,
                copy: Some(1 + (i / n) as u8),
            })
        })
        .collect();
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    groups.extend((0..n).map(|v| vec![n + v]));
    for v in 0..n {
        for f in 0..d - g.degree(v) {
            let offset = whole.n();
            whole = whole.disjoint_union(&filler.graph);
            provenance.extend((0..inner).map(|index| {
                Some(Provenance::Filler {
                    vertex: v,
                    filler: f,
                    index,
                })
            }));
            provenance.extend([None, None]);
            groups[v].push(offset + tx);
            groups[n + v].push(offset + ty);
        }
    }
    let (graph, map) = whole.identify_vertices_with_map(&groups)?;
    let mut kept = vec![None; graph.n()];
    for (old, p) in provenance.into_iter().enumerate() {
        if p.is_some() {
            kept[map[old]] = p;
        }
    }
    Ok(ReductionOutput {
        construction: "c3",
        graph,
        provenance: kept.into_iter().map(|p| p.expect("every vertex has a source")).collect(),
        claimed_properties: vec![ClaimedProperty::Regular(d)],
    })
}

/// Join of `G` with `K_q`; `χ_a` grows by exactly `q` when `G` has no
/// universal vertex.
pub fn join_kq(g: &Graph, q: usize) -> Result<ReductionOutput> {
    require(q >= 1, || "q must be at least 1".to_string())?;
    if let Some(u) = g.has_universal_vertex() {
        return Err(Error::Precondition(format!(
            "input has a universal vertex ({u}); the join formula needs none"
        )));
    }
    let n = g.n();
    let provenance = (0..n)
        .map(|vertex| Provenance::Source { vertex, copy: None })
        .chain((1..=q).map(|j| Provenance::Hub { j }))
        .collect();
    Ok(ReductionOutput {
        construction: "c6",
        graph: g.join(&Graph::complete(q)),
        provenance,
        claimed_properties: Vec::new(),
    })
}

/// `G` joined with `K_1`.
pub fn add_universal(g: &Graph) -> Graph {
    g.join(&Graph::complete(1))
}

pub fn universal_output(g: &Graph) -> ReductionOutput {
    let provenance = (0..g.n())
        .map(|vertex| Provenance::Source { vertex, copy: None })
        .chain([Provenance::Hub { j: 1 }])
        .collect();
    ReductionOutput {
        construction: "universal",
        graph: add_universal(g),
        provenance,
        claimed_properties: Vec::new(),
    }
}

fn check_lift_input(out: &ReductionOutput, expected: &str, g: &Graph, f: &Colouring) -> Result<()> {
    require(out.construction == expected, || {
        format!("lift for {expected} applied to a {} output", out.construction)
    })?;
    f.covers(g)
}

/// The k-acyclic colouring of a `construct_bipartite_delta_k_plus_1`
/// output induced by a proper k-colouring `f` of `G`: chain(v) takes the
/// canonical chain colouring with colours 0 and `f(v)` swapped, and each
/// connector of `uv` the smallest colour outside `{f(u), f(v)}`.
pub fn lift_bipartite_colouring(
    g: &Graph,
    out: &ReductionOutput,
    f: &Colouring,
) -> Result<Colouring> {
    check_lift_input(out, "c2", g, f)?;
    let k = f.palette();
    require(k >= 3, || format!("lift needs at least 3 colours, got {k}"))?;
    let mut canonical: Vec<Option<Colouring>> = vec![None; g.n()];
    let mut colours = Vec::with_capacity(out.graph.n());
    for p in &out.provenance {
        let c = match *p {
            Provenance::Chain { vertex, index, .. } => {
                let chain = canonical[vertex].get_or_insert_with(|| {
                    chain_gadget(k, k * g.degree(vertex))
                        .and_then(|c| c.canonical_colouring.ok_or(Error::NotAcyclic))
                        .expect("chain colouring")
                });
                let fv = f.colour(vertex);
                match chain.colour(index) {
                    0 => fv,
                    c if c == fv => 0,
                    c => c,
                }
            }
            Provenance::Connector { edge: (u, v), .. } => (0..k)
                .find(|&c| c != f.colour(u) && c != f.colour(v))
                .expect("k ≥ 3"),
            _ => return Err(Error::Precondition("unexpected vertex in c2 output".into())),
        };
        colours.push(c);
    }
    Colouring::new(k, colours)
}

/// The k-acyclic colouring of a `construct_regular` output induced by a
/// k-acyclic colouring `f` of `G`: both copies coloured by f, and every
/// filler at v coloured with `x ↦ c1`, `y ↦ c2` for the two smallest
/// colours different from `f(v)`.
pub fn lift_regular_colouring(
    g: &Graph,
    out: &ReductionOutput,
    d: usize,
    f: &Colouring,
) -> Result<Colouring> {
    check_lift_input(out, "c3", g, f)?;
    let k = f.palette();
    let mut by_vertex: Vec<Option<Colouring>> = vec![None; g.n()];
    let mut colours = Vec::with_capacity(out.graph.n());
    for p in &out.provenance {
        let c = match *p {
            Provenance::Source { vertex, .. } => f.colour(vertex),
            Provenance::Filler { vertex, index, .. } => {
                let fv = f.colour(vertex);
                if by_vertex[vertex].is_none() {
                    let mut pair = (0..k).filter(|&c| c != fv);
                    let (c1, c2) = (pair.next(), pair.next());
                    let (Some(c1), Some(c2)) = (c1, c2) else {
                        return Err(Error::Precondition(format!(
                            "lift needs at least 3 colours, got {k}"
                        )));
                    };
                    by_vertex[vertex] = Some(filler_colouring(d, k, c1, c2, fv)?);
                }
                by_vertex[vertex].as_ref().expect("filled").colour(index)
            }
            _ => return Err(Error::Precondition("unexpected vertex in c3 output".into())),
        };
        colours.push(c);
    }
    Colouring::new(k, colours)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::is_acyclic_colouring;
    use crate::graph::catalog;

    fn all_claims_hold(out: &ReductionOutput) {
        assert!(out.failed_claims().is_empty(), "{}: {:?}", out.construction, out.failed_claims());
    }

    #[test]
    fn coleman_cai_shapes() {
        let k3 = coleman_cai(&Graph::complete(3), 3).unwrap();
        assert_eq!((k3.graph.n(), k3.graph.m()), (12, 18));
        all_claims_hold(&k3);
        assert_eq!(coleman_cai(&Graph::complete(2), 3).unwrap().graph.n(), 5);
        assert!(coleman_cai(&Graph::complete(2), 2).is_err());
    }

    #[test]
    fn bipartite_construction_sizes() {
        let k2 = construct_bipartite_delta_k_plus_1(&Graph::complete(2), 3).unwrap();
        assert_eq!(k2.graph.n(), 33);
        all_claims_hold(&k2);
        for g in [Graph::path(3), Graph::cycle(5), Graph::complete(4)] {
            for k in 3..=4 {
                let out = construct_bipartite_delta_k_plus_1(&g, k).unwrap();
                let m = g.m();
                assert_eq!(out.graph.n(), (2 * k * k - k) * 2 * m + k * m);
                all_claims_hold(&out);
            }
        }
        assert_eq!(
            construct_bipartite_delta_k_plus_1(&Graph::complete(4), 3).unwrap().graph.n(),
            198
        );
        assert!(construct_bipartite_delta_k_plus_1(&Graph::complete(6), 3).is_err());
    }

    #[test]
    fn bipartite_lift_is_acyclic() {
        let cases = [
            (Graph::complete(2), vec![0, 1]),
            (Graph::path(3), vec![0, 1, 0]),
            (Graph::cycle(5), vec![0, 1, 0, 1, 2]),
            (Graph::complete(3), vec![2, 0, 1]),
        ];
        for (g, c) in cases {
            let out = construct_bipartite_delta_k_plus_1(&g, 3).unwrap();
            let f = Colouring::new(3, c).unwrap();
            let h = lift_bipartite_colouring(&g, &out, &f).unwrap();
            assert!(is_acyclic_colouring(&out.graph, &h), "{g:?}");
        }
    }

    #[test]
    fn regular_construction_shapes() {
        let p3 = construct_regular(&Graph::path(3), 3, 3).unwrap();
        assert_eq!(p3.graph.n(), 36);
        all_claims_hold(&p3);
        let k2 = construct_regular(&Graph::complete(2), 3, 3).unwrap();
        all_claims_hold(&k2);
        let c4 = construct_regular(&Graph::cycle(4), 4, 4).unwrap();
        all_claims_hold(&c4);
        assert!(construct_regular(&Graph::complete(4), 3, 2).is_err());
        assert!(construct_regular(&Graph::path(3), 3, 4).is_err());
        assert_eq!(p3.source_vertices(Some(2)), vec![3, 4, 5]);
    }

    #[test]
    fn regular_lift_is_acyclic() {
        for (k, d) in [(3, 3), (4, 4), (4, 5)] {
            for g in [Graph::complete(2), Graph::path(3), Graph::cycle(4)] {
                if g.max_degree() > d {
                    continue;
                }
                let out = construct_regular(&g, k, d).unwrap();
                let f = Colouring::new(k, [0, 1, 0, 2][..g.n()].to_vec()).unwrap();
                assert!(is_acyclic_colouring(&g, &f));
                let h = lift_regular_colouring(&g, &out, d, &f).unwrap();
                assert!(is_acyclic_colouring(&out.graph, &h), "{g:?} k={k} d={d}");
            }
        }
    }

    #[test]
    fn k23_construction() {
        let out = construct_k23(&Graph::complete(3)).unwrap();
        assert_eq!(out.graph.n(), 12);
        all_claims_hold(&out);
        let star = Graph::new(10, (1..10).map(|v| (0, v))).unwrap();
        assert!(construct_k23(&star).is_err());
    }

    #[test]
    fn swap_auto_construction() {
        let k2 = construct_swap_auto(&Graph::complete(2)).unwrap();
        assert_eq!(k2.graph.n(), 48);
        all_claims_hold(&k2);
        let p3 = construct_swap_auto(&Graph::path(3)).unwrap();
        let mut terminals = vec![0; 3];
        for p in &p3.provenance {
            if let Provenance::Chain {
                vertex,
                terminal: true,
                ..
            } = *p
            {
                terminals[vertex] += 1;
            }
        }
        assert_eq!(terminals, vec![4, 9, 5]);
        all_claims_hold(&p3);
        assert_eq!(degree_rank(&Graph::path(3)), vec![1, 3, 2]);
    }

    #[test]
    fn joins() {
        let out = join_kq(&Graph::cycle(4), 1).unwrap();
        assert_eq!(out.graph.n(), 5);
        assert_eq!(out.graph.degree(4), 4);
        assert!(join_kq(&Graph::complete(4), 1).is_err());
        assert_eq!(add_universal(&Graph::empty(1)), Graph::complete(2));
        let p3 = add_universal(&Graph::path(3));
        assert_eq!(p3.m(), 5);
        assert_eq!(add_universal(&catalog::petersen()).n(), 11);
    }
}
