//! The G_d family, chain gadgets and filler gadgets, each with a canonical
//! acyclic colouring.

use serde::Serialize;

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexRole, VertexTag};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetGraph {
    #[serde(skip)]
    pub graph: Graph,
    pub terminals: Vec<usize>,
    pub tags: Vec<VertexTag>,
    #[serde(serialize_with = "ser_colouring")]
    pub canonical_colouring: Option<Colouring>,
}

fn ser_colouring<S: serde::Serializer>(
    c: &Option<Colouring>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match c {
        Some(f) => s.serialize_some(f.colours()),
        None => s.serialize_none(),
    }
}

/// Vertex labels `(i, j)` with `i ≠ j` in `0..=p+1`, lexicographic.
fn pair_labels(p: usize) -> Vec<(usize, usize)> {
    let r = p + 2;
    (0..r)
        .flat_map(|i| (0..r).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

fn g_pairs(p: usize, drop_matching: bool) -> GadgetGraph {
    let labels = pair_labels(p);
    let mut edges = Vec::new();
    for (a, &(i, j)) in labels.iter().enumerate() {
        for (b, &(k, l)) in labels.iter().enumerate().skip(a + 1) {
            let adjacent = j == k || i == l;
            let matched = j == k && i == l;
            if adjacent && !(drop_matching && matched) {
                edges.push((a, b));
            }
        }
    }
    let graph = Graph::new(labels.len(), edges).expect("pair graph");
    let tags = labels
        .iter()
        .map(|&(i, j)| VertexTag::new(format!("({i},{j})"), VertexRole::Plain))
        .collect();
    let colours = labels.iter().map(|&(i, _)| i).collect();
    GadgetGraph {
        graph,
        terminals: Vec::new(),
        tags,
        canonical_colouring: Some(Colouring::new(p + 2, colours).expect("f((i,j)) = i")),
    }
}

/// `G_{2p+1}`: `(i,j) ~ (k,l)` iff `j = k` or `i = l`.
pub fn g_odd(p: usize) -> GadgetGraph {
    g_pairs(p, false)
}

/// `G_{2p}`: `G_{2p+1}` without the perfect matching `(i,j) - (j,i)`.
pub fn g_even(p: usize) -> Result<GadgetGraph> {
    if p == 0 {
        return Err(Error::Precondition("G_{2p} needs p ≥ 1".into()));
    }
    Ok(g_pairs(p, true))
}

/// The d-regular member of the family.
pub fn g_d(d: usize) -> Result<GadgetGraph> {
    if d == 0 {
        return Err(Error::Precondition("G_d needs d ≥ 1".into()));
    }
    if d % 2 == 1 {
        Ok(g_odd((d - 1) / 2))
    } else {
        g_even(d / 2)
    }
}

/// Chain gadget with `2t` levels: odd levels hold `k−1` vertices, even
/// levels `k` vertices of which the last is a terminal. Levels `2i−1` and
/// `2i` form `K_{k−1,k}`; position j of level `2i` is matched to position
/// j of level `2i+1`.
pub fn chain_gadget(k: usize, t: usize) -> Result<GadgetGraph> {
    if k < 3 || t == 0 {
        return Err(Error::Precondition(format!(
            "chain gadget needs k ≥ 3 and t ≥ 1, got k = {k}, t = {t}"
        )));
    }
    let block = 2 * k - 1;
    let odd = |i: usize, j: usize| i * block + j; // j < k-1
    let even = |i: usize, j: usize| i * block + (k - 1) + j; // j < k
    let mut edges = Vec::new();
    let mut tags = Vec::with_capacity(t * block);
    let mut colours = Vec::with_capacity(t * block);
    let mut terminals = Vec::with_capacity(t);
    for i in 0..t {
        for j in 0..k - 1 {
            tags.push(VertexTag::new(
                format!("L{}.{}", 2 * i + 1, j + 1),
                VertexRole::ChainLevel(2 * i as u32 + 1),
            ));
            colours.push(j + 1);
        }
        for j in 0..k {
            let terminal = j == k - 1;
            let role = if terminal {
                VertexRole::Terminal
            } else {
                VertexRole::ChainLevel(2 * i as u32 + 2)
            };
            let label = if terminal {
                format!("v'{}", i + 1)
            } else {
                format!("L{}.{}", 2 * i + 2, j + 1)
            };
            tags.push(VertexTag::new(label, role));
            colours.push(0);
        }
        terminals.push(even(i, k - 1));
        for a in 0..k - 1 {
            for b in 0..k {
                edges.push((odd(i, a), even(i, b)));
            }
        }
        if i + 1 < t {
            for j in 0..k - 1 {
                edges.push((even(i, j), odd(i + 1, j)));
            }
        }
    }
    Ok(GadgetGraph {
        graph: Graph::new(t * block, edges)?,
        terminals,
        tags,
        canonical_colouring: Some(Colouring::new(k, colours)?),
    })
}

/// Lexicographically smallest edge of `G_d`, and `G_d` itself.
fn filler_base(d: usize) -> Result<(GadgetGraph, (usize, usize))> {
    let base = g_d(d)?;
    let xy = *base.graph.edges().first().expect("G_d has edges");
    Ok((base, xy))
}

/// `G_d − xy` plus pendant terminals: internal vertices first, then the
/// terminal attached to x, then the one attached to y.
pub fn filler_gadget(d: usize) -> Result<GadgetGraph> {
    if d < 2 {
        return Err(Error::Precondition(format!("filler gadget needs d ≥ 2, got {d}")));
    }
    let (base, (x, y)) = filler_base(d)?;
    let n = base.graph.n();
    let (tx, ty) = (n, n + 1);
    let edges = base
        .graph
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != (x, y))
        .chain([(x, tx), (y, ty)]);
    let mut tags: Vec<VertexTag> = base
        .tags
        .iter()
        .enumerate()
        .map(|(v, t)| {
            let label = match v {
                _ if v == x => format!("x{}", t.label),
                _ if v == y => format!("y{}", t.label),
                _ => t.label.clone(),
            };
            VertexTag::new(label, VertexRole::FillerInternal)
        })
        .collect();
    tags.push(VertexTag::new("tx", VertexRole::Terminal));
    tags.push(VertexTag::new("ty", VertexRole::Terminal));
    Ok(GadgetGraph {
        graph: Graph::new(n + 2, edges)?,
        terminals: vec![tx, ty],
        tags,
        canonical_colouring: None,
    })
}

/// Internal attachment vertices `(x, y)` of `filler_gadget(d)`.
pub fn filler_attachments(d: usize) -> Result<(usize, usize)> {
    Ok(filler_base(d)?.1)
}

/// A k-acyclic colouring of `filler_gadget(d)` with `x ↦ c1`, `y ↦ c2`
/// and both terminals `cv`, obtained by permuting the canonical colouring
/// of `G_d`.
pub fn filler_colouring(d: usize, k: usize, c1: usize, c2: usize, cv: usize) -> Result<Colouring> {
    if d < 2 {
        return Err(Error::Precondition(format!("filler gadget needs d ≥ 2, got {d}")));
    }
    let needed = (d + 3).div_ceil(2);
    if k < needed {
        return Err(Error::Precondition(format!(
            "filler colouring for d = {d} needs at least {needed} colours, got {k}"
        )));
    }
    if c1 == c2 || c1 == cv || c2 == cv || c1 >= k || c2 >= k || cv >= k {
        return Err(Error::Precondition(format!(
            "colours c1 = {c1}, c2 = {c2}, cv = {cv} must be distinct and below {k}"
        )));
    }
    let (base, (x, y)) = filler_base(d)?;
    let canon = base.canonical_colouring.expect("G_d colouring");
    let (fx, fy) = (canon.colour(x), canon.colour(y));
    // σ(fx) = c1, σ(fy) = c2, remaining canonical colours in increasing
    // order onto the unused palette colours in increasing order
    let mut sigma = vec![usize::MAX; canon.palette()];
    sigma[fx] = c1;
    sigma[fy] = c2;
    let mut spare = (0..k).filter(|&c| c != c1 && c != c2);
    for s in sigma.iter_mut().filter(|s| **s == usize::MAX) {
        *s = spare.next().expect("palette large enough");
    }
    let mut colours: Vec<usize> = canon.colours().iter().map(|&c| sigma[c]).collect();
    colours.extend([cv, cv]);
    Colouring::new(k, colours)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::is_acyclic_colouring;

    #[test]
    fn g_odd_examples() {
        let k2 = g_odd(0);
        assert_eq!(k2.graph, Graph::complete(2));
        assert_eq!(k2.tags[0].label, "(0,1)");
        let g5 = g_odd(2);
        assert_eq!((g5.graph.n(), g5.graph.m()), (12, 30));
        assert!(g5.graph.is_d_regular(5));
        let g3 = g_odd(1);
        assert_eq!(g3.graph.n(), 6);
        assert!(g3.graph.is_d_regular(3));
    }

    #[test]
    fn g_even_examples() {
        // deleting the matching from the prism leaves two triangles
        let g2 = g_even(1).unwrap();
        assert!(g2.graph.is_d_regular(2));
        assert_eq!(g2.graph.components(), vec![vec![0, 3, 4], vec![1, 2, 5]]);
        let g4 = g_even(2).unwrap();
        assert_eq!((g4.graph.n(), g4.graph.m()), (12, 24));
        assert!(g4.graph.is_d_regular(4));
        assert!(g_even(0).is_err());
    }

    #[test]
    fn g_d_family_is_regular_with_acyclic_canonical_colouring() {
        for d in 1..=8 {
            let g = g_d(d).unwrap();
            assert!(g.graph.is_d_regular(d), "d = {d}");
            let f = g.canonical_colouring.as_ref().unwrap();
            assert_eq!(f.palette(), (d + 3).div_ceil(2));
            assert!(is_acyclic_colouring(&g.graph, f), "d = {d}");
        }
    }

    #[test]
    fn odd_adjacency_between_colour_classes() {
        // u in V_i is adjacent to v in V_j iff u = (i,j) or v = (j,i)
        for p in 0..=3 {
            let g = g_odd(p);
            let labels = pair_labels(p);
            for (a, &(ai, aj)) in labels.iter().enumerate() {
                for (b, &(bi, bj)) in labels.iter().enumerate() {
                    if a == b || ai == bi {
                        continue;
                    }
                    let expected = aj == bi || bj == ai;
                    assert_eq!(g.graph.has_edge(a, b), expected);
                }
            }
        }
    }

    #[test]
    fn odd_family_is_nested_on_labels() {
        for p in 1..=3 {
            let (small, big) = (g_odd(p - 1), g_odd(p));
            let index = |g: &GadgetGraph, l: &str| g.tags.iter().position(|t| t.label == l).unwrap();
            for &(u, v) in small.graph.edges() {
                let (lu, lv) = (&small.tags[u].label, &small.tags[v].label);
                assert!(big.graph.has_edge(index(&big, lu), index(&big, lv)));
            }
            // the shared labels induce exactly the smaller graph
            let shared: Vec<usize> = small.tags.iter().map(|t| index(&big, &t.label)).collect();
            assert_eq!(big.graph.induced_subgraph(&shared).m(), small.graph.m());
        }
    }

    #[test]
    fn chain_examples() {
        let c31 = chain_gadget(3, 1).unwrap();
        assert_eq!(c31.graph, Graph::complete_bipartite(2, 3));
        assert_eq!(c31.terminals, vec![4]);
        let c32 = chain_gadget(3, 2).unwrap();
        assert_eq!(c32.graph.n(), 10);
        assert_eq!(c32.terminals, vec![4, 9]);
        assert!(c32.graph.is_bipartite().is_some());
        assert_eq!(c32.graph.max_degree(), 4);
        assert_eq!(chain_gadget(4, 1).unwrap().graph, Graph::complete_bipartite(3, 4));
        assert!(chain_gadget(2, 1).is_err());
    }

    #[test]
    fn chain_canonical_colourings_are_acyclic() {
        for k in 3..=5 {
            for t in 1..=3 {
                let c = chain_gadget(k, t).unwrap();
                assert_eq!(c.graph.n(), t * (2 * k - 1));
                assert!(c.graph.max_degree() <= k + 1);
                assert!(is_acyclic_colouring(&c.graph, c.canonical_colouring.as_ref().unwrap()));
            }
        }
    }

    #[test]
    fn filler_shapes() {
        let f3 = filler_gadget(3).unwrap();
        assert_eq!(f3.graph.n(), 8);
        assert_eq!(f3.terminals, vec![6, 7]);
        // a path on five vertices through x and y, plus the untouched triangle
        let f2 = filler_gadget(2).unwrap();
        assert_eq!(f2.graph.n(), 8);
        assert_eq!(f2.graph.m(), 7);
        assert_eq!(f2.graph.components(), vec![vec![0, 3, 4, 6, 7], vec![1, 2, 5]]);
        for d in 2..=6 {
            let f = filler_gadget(d).unwrap();
            for v in 0..f.graph.n() {
                let want = if f.terminals.contains(&v) { 1 } else { d };
                assert_eq!(f.graph.degree(v), want, "d = {d}, v = {v}");
            }
        }
        assert_eq!(filler_attachments(3).unwrap(), (0, 2));
        assert_eq!(filler_attachments(2).unwrap(), (0, 3));
    }

    #[test]
    fn filler_colouring_examples() {
        let g3 = filler_gadget(3).unwrap().graph;
        let h = filler_colouring(3, 3, 1, 2, 0).unwrap();
        assert!(is_acyclic_colouring(&g3, &h));
        assert_eq!((h.colour(0), h.colour(2), h.colour(6)), (1, 2, 0));
        assert!(filler_colouring(3, 3, 1, 1, 0).is_err());
        let g4 = filler_gadget(4).unwrap().graph;
        let (x, y) = filler_attachments(4).unwrap();
        let h = filler_colouring(4, 4, 0, 2, 3).unwrap();
        assert!(is_acyclic_colouring(&g4, &h));
        assert_eq!((h.colour(x), h.colour(y)), (0, 2));
        assert!(filler_colouring(4, 3, 0, 1, 2).is_err());
    }
}
