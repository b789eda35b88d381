//! Immutable simple undirected graphs on dense vertex indices `0..n`.
//!
//! Every constructor normalises edges to `u < v`, sorts and deduplicates
//! them, and derives sorted adjacency lists, so two graphs compare equal
//! exactly when they have the same vertex count and edge set.

pub mod catalog;
pub mod dimacs;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// Two-sided partition certifying bipartiteness. `side[v]` is 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub side: Vec<u8>,
}

impl Bipartition {
    pub fn part(&self, s: u8) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v] == s).collect()
    }
}

/// Role of a vertex inside a generated gadget or reduction output.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexRole {
    Plain,
    Terminal,
    Connector,
    ChainLevel(u32),
    Copy(u8),
    FillerInternal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexTag {
    pub label: String,
    pub role: VertexRole,
}

impl VertexTag {
    pub fn new(label: impl Into<String>, role: VertexRole) -> Self {
        VertexTag {
            label: label.into(),
            role,
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let g = Graph { n, edges: list, adj };
        debug_assert!(g.check_invariants());
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).expect("edgeless graph")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path")
    }

    /// `K_{a,b}` with side A = `0..a` and side B = `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::new(a + b, edges).expect("complete bipartite graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_d_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|nb| nb.len() == d)
    }

    /// Returns `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.is_d_regular(d).then_some(d)
    }

    /// BFS 2-colouring. Each component's smallest vertex goes on side 0.
    pub fn is_bipartite(&self) -> Option<Bipartition> {
        let mut side = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(Bipartition { side })
    }

    /// Returns a left-to-right order in which every vertex has at most `k`
    /// neighbours to its left, or `None` if the graph is not k-degenerate.
    pub fn is_k_degenerate(&self, k: usize) -> Option<Vec<usize>> {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut removal = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (0..self.n).find(|&v| !removed[v] && deg[v] <= k)?;
            removed[v] = true;
            removal.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        removal.reverse();
        Some(removal)
    }

    pub fn has_universal_vertex(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        (0..self.n).find(|&v| self.degree(v) == self.n - 1)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `b`'s vertices are shifted by `a.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, edges).expect("disjoint union of simple graphs")
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let cross = (0..self.n).flat_map(|u| (0..other.n).map(move |v| (u, v + shift)));
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .chain(cross);
        Graph::new(self.n + other.n, edges).expect("join of simple graphs")
    }

    /// Collapses each group to a single vertex. See
    /// [`Graph::identify_vertices_with_map`] for the index convention.
    pub fn identify_vertices(&self, groups: &[Vec<usize>]) -> Result<Graph> {
        self.identify_vertices_with_map(groups).map(|(g, _)| g)
    }

    /// Collapses each group to one vertex and renumbers densely, keeping the
    /// relative order of surviving vertices; a group survives at the
    /// position of its smallest member. Parallel edges are merged. Returns
    /// the new graph and the old-to-new vertex map.
    pub fn identify_vertices_with_map(&self, groups: &[Vec<usize>]) -> Result<(Graph, Vec<usize>)> {
        let mut rep: Vec<usize> = (0..self.n).collect();
        let mut grouped = vec![false; self.n];
        for group in groups {
            for &v in group {
                if v >= self.n {
                    return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
                }
                if grouped[v] {
                    return Err(Error::OverlappingGroups(v));
                }
                grouped[v] = true;
            }
            for (i, &u) in group.iter().enumerate() {
                for &v in &group[i + 1..] {
                    if self.has_edge(u, v) {
                        return Err(Error::IdentifiesAdjacent(u.min(v), u.max(v)));
                    }
                }
            }
            if let Some(&r) = group.iter().min() {
                for &v in group {
                    rep[v] = r;
                }
            }
        }
        let mut new_index = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if rep[v] == v {
                new_index[v] = next;
                next += 1;
            }
        }
        let map: Vec<usize> = (0..self.n).map(|v| new_index[rep[v]]).collect();
        let edges = self.edges.iter().map(|&(u, v)| (map[u], map[v]));
        Ok((Graph::new(next, edges)?, map))
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph")
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Graph {
        let e = (u.min(v), u.max(v));
        let edges = self.edges.iter().copied().filter(|&x| x != e);
        Graph::new(self.n, edges).expect("edge deletion")
    }

    /// Simplicity and adjacency symmetry.
    pub fn check_invariants(&self) -> bool {
        if self.adj.len() != self.n {
            return false;
        }
        let sorted = self.edges.windows(2).all(|w| w[0] < w[1]);
        let loopless = self.edges.iter().all(|&(u, v)| u < v && v < self.n);
        let degree_sum: usize = self.adj.iter().map(Vec::len).sum();
        let symmetric = (0..self.n).all(|u| {
            self.adj[u].windows(2).all(|w| w[0] < w[1])
                && self.adj[u]
                    .iter()
                    .all(|&v| self.adj[v].binary_search(&u).is_ok()
                        && self.edges.binary_search(&(u.min(v), u.max(v))).is_ok())
        });
        sorted && loopless && symmetric && degree_sum == 2 * self.edges.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::path(3)
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(Graph::complete_bipartite(2, 3).max_degree(), 3);
        assert_eq!(Graph::empty(1).max_degree(), 0);
        assert_eq!(Graph::empty(0).max_degree(), 0);
    }

    #[test]
    fn regularity() {
        assert!(Graph::cycle(4).is_d_regular(2));
        assert!(!p3().is_d_regular(1));
        assert_eq!(Graph::complete(4).regular_degree(), Some(3));
        assert_eq!(p3().regular_degree(), None);
    }

    #[test]
    fn bipartite_witness() {
        let b = Graph::cycle(4).is_bipartite().unwrap();
        assert_eq!(b.part(0), vec![0, 2]);
        assert_eq!(b.part(1), vec![1, 3]);
        assert!(Graph::complete(3).is_bipartite().is_none());
    }

    #[test]
    fn degeneracy() {
        assert!(Graph::complete(4).is_k_degenerate(2).is_none());
        let tree = Graph::new(5, [(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        let order = tree.is_k_degenerate(1).unwrap();
        let mut pos = [0; 5];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        for v in 0..5 {
            let left = tree.neighbours(v).iter().filter(|&&w| pos[w] < pos[v]).count();
            assert!(left <= 1);
        }
    }

    #[test]
    fn universal_vertex() {
        assert!(Graph::complete(4).has_universal_vertex().is_some());
        assert!(Graph::cycle(5).has_universal_vertex().is_none());
        let wheel = Graph::cycle(4).join(&Graph::empty(1));
        assert_eq!(wheel.has_universal_vertex(), Some(4));
    }

    #[test]
    fn union_and_join_counts() {
        let k2 = Graph::complete(2);
        let u = k2.disjoint_union(&k2);
        assert_eq!((u.n(), u.m()), (4, 2));
        assert_eq!(Graph::empty(0).disjoint_union(&Graph::cycle(3)), Graph::cycle(3));
        let u = p3().disjoint_union(&p3());
        assert_eq!((u.n(), u.m()), (6, 4));

        let j = Graph::cycle(4).join(&Graph::empty(1));
        assert_eq!((j.n(), j.m()), (5, 8));
        assert_eq!(Graph::empty(1).join(&Graph::empty(1)), Graph::complete(2));
        let j = Graph::cycle(4).join(&Graph::complete(2));
        assert_eq!((j.n(), j.m()), (6, 13));
    }

    #[test]
    fn identification() {
        // Endpoints of P_3 merge; the two edges collapse to one.
        let g = p3().identify_vertices(&[vec![0, 2]]).unwrap();
        assert_eq!(g, Graph::complete(2));

        let err = Graph::complete(2).identify_vertices(&[vec![0, 1]]);
        assert!(matches!(err, Err(Error::IdentifiesAdjacent(0, 1))));

        let k2k2 = Graph::complete(2).disjoint_union(&Graph::complete(2));
        let g = k2k2.identify_vertices(&[vec![1, 2]]).unwrap();
        assert_eq!(g, Graph::new(3, [(0, 1), (1, 2)]).unwrap());

        assert!(matches!(
            p3().identify_vertices(&[vec![0, 2], vec![2]]),
            Err(Error::OverlappingGroups(2))
        ));
    }

    #[test]
    fn bicliques() {
        let g = Graph::complete_bipartite(2, 3);
        assert_eq!((g.n(), g.m()), (5, 6));
        assert_eq!(Graph::complete_bipartite(1, 1), Graph::complete(2));
        assert_eq!(Graph::complete_bipartite(3, 4).m(), 12);
    }

    #[test]
    fn constructor_rejects_loops_and_merges_duplicates() {
        assert!(matches!(Graph::new(2, [(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(Graph::new(2, [(0, 2)]).is_err());
        let g = Graph::new(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }
}
