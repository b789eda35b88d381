//! Named small graphs used as test data, and exhaustive enumeration of
//! small graphs up to isomorphism.

use std::collections::BTreeSet;

use super::Graph;

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).expect("Petersen graph")
}

/// The 3-cube `Q_3` on bit strings of length three.
pub fn cube() -> Graph {
    let edges = (0..8usize).flat_map(|u| {
        (0..3)
            .map(move |b| (u, u ^ (1 << b)))
            .filter(|&(u, v)| u < v)
    });
    Graph::new(8, edges).expect("3-cube")
}

/// Circular ladder `CL_n`: inner cycle `0..n`, outer cycle `n..2n`, spokes
/// `i - n+i`.
pub fn circular_ladder(n: usize) -> Graph {
    let inner = (0..n).map(|i| (i, (i + 1) % n));
    let outer = (0..n).map(|i| (n + i, n + (i + 1) % n));
    let spokes = (0..n).map(|i| (i, n + i));
    Graph::new(2 * n, inner.chain(outer).chain(spokes)).expect("circular ladder")
}

/// Six vertices laid on a zig-zag path, with a 3-colouring `0,1,2,0,1,2`
/// whose classes 0 and 2 induce a 4-cycle.
pub fn bicoloured_square_example() -> (Graph, Vec<usize>) {
    let g = Graph::new(
        6,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (0, 2),
            (2, 4),
            (1, 3),
            (3, 5),
            (0, 5),
        ],
    )
    .expect("example graph");
    (g, vec![0, 1, 2, 0, 1, 2])
}

/// The cubic planar graph made of two triangles `abc`, `fgh` and the
/// connecting structure `b-d`, `c-e`, `d-e`, `a-f`, `d-g`, `e-h`.
pub fn dual_of_p4_join_k2() -> Graph {
    Graph::new(
        8,
        [
            (0, 1),
            (1, 2),
            (0, 2),
            (1, 3),
            (2, 4),
            (3, 4),
            (0, 5),
            (3, 6),
            (4, 7),
            (5, 6),
            (6, 7),
            (5, 7),
        ],
    )
    .expect("exceptional cubic graph")
}

/// Cubic planar 3-connected graphs known to need four colours for an
/// acyclic colouring.
pub fn exception(name: &str) -> Option<Graph> {
    match name {
        "k4" => Some(Graph::complete(4)),
        "q3" => Some(cube()),
        "dual-p4-join-k2" => Some(dual_of_p4_join_k2()),
        _ => None,
    }
}

pub const EXCEPTION_NAMES: [&str; 3] = ["k4", "q3", "dual-p4-join-k2"];

fn pair_bit(u: usize, v: usize) -> usize {
    let (a, b) = (u.min(v), u.max(v));
    b * (b - 1) / 2 + a
}

fn from_code(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    for b in 1..n {
        for a in 0..b {
            if code >> pair_bit(a, b) & 1 == 1 {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("decoded graph")
}

/// Smallest adjacency code over all relabelings that respect a sorted
/// vertex invariant. Only meant for n ≤ 8.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical_code is brute force");
    let invariant = |v: usize| {
        let mut nd: Vec<usize> = g.neighbours(v).iter().map(|&w| g.degree(w)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| invariant(v));
    let keys: Vec<_> = order.iter().map(|&v| invariant(v)).collect();
    // class_start[p]..class_end[p] are the positions sharing p's invariant
    let mut class_of_pos = vec![0usize; n];
    for p in 1..n {
        class_of_pos[p] = if keys[p] == keys[p - 1] {
            class_of_pos[p - 1]
        } else {
            p
        };
    }
    let mut best = u64::MAX;
    let mut pos_of = vec![usize::MAX; n];
    let mut assigned = Vec::with_capacity(n);
    fn rec(
        g: &Graph,
        order: &[usize],
        class_of_pos: &[usize],
        pos_of: &mut [usize],
        assigned: &mut Vec<usize>,
        code: u64,
        best: &mut u64,
    ) {
        let p = assigned.len();
        if p == order.len() {
            *best = (*best).min(code);
            return;
        }
        let start = class_of_pos[p];
        let mut end = start;
        while end < order.len() && class_of_pos[end] == start {
            end += 1;
        }
        for &v in &order[start..end] {
            if pos_of[v] != usize::MAX {
                continue;
            }
            let mut c = code;
            for &w in g.neighbours(v) {
                if pos_of[w] != usize::MAX {
                    c |= 1 << pair_bit(pos_of[w], p);
                }
            }
            pos_of[v] = p;
            assigned.push(v);
            rec(g, order, class_of_pos, pos_of, assigned, c, best);
            assigned.pop();
            pos_of[v] = usize::MAX;
        }
    }
    rec(g, &order, &class_of_pos, &mut pos_of, &mut assigned, 0, &mut best);
    best
}

/// All graphs on `n` vertices, one per isomorphism class, in canonical
/// code order.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut level: BTreeSet<u64> = BTreeSet::new();
    level.insert(0);
    for k in 1..n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let base = from_code(k, code);
            for mask in 0u64..(1 << k) {
                let edges = base
                    .edges()
                    .iter()
                    .copied()
                    .chain((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| (i, k)));
                let g = Graph::new(k + 1, edges).expect("extended graph");
                next.insert(canonical_code(&g));
            }
        }
        level = next;
    }
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    level.into_iter().map(|c| from_code(n, c)).collect()
}

pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    graphs_up_to_iso(n)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}

/// Every labelled graph on `n` vertices (`2^(n choose 2)` of them).
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs < 63);
    (0u64..(1 << pairs)).map(move |code| from_code(n, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| graphs_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> = (1..=6).map(|n| connected_graphs_up_to_iso(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_code_is_isomorphism_invariant() {
        let p = petersen();
        let relabel: Vec<usize> = vec![3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        let q = Graph::new(10, p.edges().iter().map(|&(u, v)| (relabel[u], relabel[v]))).unwrap();
        assert_eq!(canonical_code(&p), canonical_code(&q));
        assert_ne!(canonical_code(&Graph::path(4)), canonical_code(&Graph::cycle(4)));
    }

    #[test]
    fn named_graphs_are_cubic() {
        for g in [petersen(), cube(), circular_ladder(3), dual_of_p4_join_k2()] {
            assert!(g.is_d_regular(3));
        }
        assert_eq!(labelled_graphs(4).count(), 64);
    }
}
