//! Colourings and the acyclic-colouring verifier.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A total assignment of colours `0..palette` to the vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Colouring {
    palette: usize,
    colours: Vec<usize>,
}

impl Colouring {
    pub fn new(palette: usize, colours: Vec<usize>) -> Result<Colouring> {
        if let Some((vertex, &colour)) = colours.iter().enumerate().find(|(_, &c)| c >= palette) {
            return Err(Error::ColourOutOfRange {
                vertex,
                colour,
                palette,
            });
        }
        Ok(Colouring { palette, colours })
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Colour class `f⁻¹(c)` in increasing vertex order.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.colours.len()).filter(|&v| self.colours[v] == c).collect()
    }

    /// Same assignment on a larger palette.
    pub fn widen(&self, palette: usize) -> Result<Colouring> {
        Colouring::new(palette, self.colours.clone())
    }

    pub fn covers(&self, g: &Graph) -> Result<()> {
        if self.colours.len() != g.n() {
            return Err(Error::ColouringSize {
                expected: g.n(),
                got: self.colours.len(),
            });
        }
        Ok(())
    }

    /// Text form: `k <palette>` followed by one `<vertex> <colour>` line per
    /// vertex, vertices numbered from 1 as in the DIMACS edge list.
    pub fn to_text(&self) -> String {
        let mut out = format!("k {}\n", self.palette);
        for (v, c) in self.colours.iter().enumerate() {
            let _ = writeln!(out, "{} {}", v + 1, c);
        }
        out
    }

    pub fn parse_text(text: &str, n: usize) -> Result<Colouring> {
        let mut tokens = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('c'))
            .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
        let bad = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        match tokens.next() {
            Some((_, "k")) => {}
            Some((line, _)) => return Err(bad(line, "expected `k <palette>` header")),
            None => return Err(bad(0, "empty colouring file")),
        }
        let (line, tok) = tokens.next().ok_or_else(|| bad(0, "missing palette size"))?;
        let palette: usize = tok.parse().map_err(|_| bad(line, "bad palette size"))?;
        let mut colours = vec![None; n];
        while let Some((line, vtok)) = tokens.next() {
            let v: usize = vtok.parse().map_err(|_| bad(line, "bad vertex"))?;
            let (line, ctok) = tokens.next().ok_or_else(|| bad(line, "vertex without colour"))?;
            let c: usize = ctok.parse().map_err(|_| bad(line, "bad colour"))?;
            if v == 0 || v > n {
                return Err(bad(line, "vertex outside 1..=n"));
            }
            if colours[v - 1].replace(c).is_some() {
                return Err(bad(line, "vertex assigned twice"));
            }
        }
        let colours = colours
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or_else(|| bad(0, &format!("vertex {} unassigned", v + 1))))
            .collect::<Result<Vec<_>>>()?;
        Colouring::new(palette, colours)
    }
}

/// A cycle whose vertices use exactly two colours. The closing edge runs
/// from the last vertex back to the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
    pub colours: (usize, usize),
}

impl CycleWitness {
    pub fn is_valid(&self, g: &Graph, f: &Colouring) -> bool {
        let vs = &self.vertices;
        let distinct = {
            let mut s = vs.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == vs.len()
        };
        let (a, b) = self.colours;
        vs.len() >= 3
            && distinct
            && a != b
            && vs.iter().all(|&v| v < f.len() && (f.colour(v) == a || f.colour(v) == b))
            && (0..vs.len()).all(|i| g.has_edge(vs[i], vs[(i + 1) % vs.len()]))
    }
}

pub fn is_proper(g: &Graph, f: &Colouring) -> Result<bool> {
    f.covers(g)?;
    Ok(first_monochromatic_edge(g, f).is_none())
}

fn first_monochromatic_edge(g: &Graph, f: &Colouring) -> Option<(usize, usize)> {
    g.edges()
        .iter()
        .copied()
        .find(|&(u, v)| f.colour(u) == f.colour(v))
}

/// First bicoloured cycle found by scanning colour pairs in increasing
/// order and running a DFS over `G[V_i ∪ V_j]` from the smallest vertex,
/// visiting neighbours in increasing order.
pub fn find_bicoloured_cycle(g: &Graph, f: &Colouring) -> Result<Option<CycleWitness>> {
    f.covers(g)?;
    if let Some((u, v)) = first_monochromatic_edge(g, f) {
        return Err(Error::Improper(u, v));
    }
    let k = f.palette();
    let mut parent = vec![usize::MAX; g.n()];
    let mut visited = vec![false; g.n()];
    for a in 0..k {
        for b in a + 1..k {
            let in_pair = |v: usize| f.colour(v) == a || f.colour(v) == b;
            visited.iter_mut().for_each(|x| *x = false);
            for root in (0..g.n()).filter(|&v| in_pair(v)) {
                if visited[root] {
                    continue;
                }
                visited[root] = true;
                parent[root] = usize::MAX;
                // explicit stack of (vertex, next neighbour index)
                let mut stack = vec![(root, 0usize)];
                while let Some(top) = stack.last_mut() {
                    let (u, idx) = *top;
                    let nb = g.neighbours(u);
                    if idx == nb.len() {
                        stack.pop();
                        continue;
                    }
                    top.1 += 1;
                    let w = nb[idx];
                    if !in_pair(w) || w == parent[u] {
                        continue;
                    }
                    if visited[w] {
                        // back edge to the ancestor w
                        let mut cycle = vec![u];
                        let mut x = u;
                        while x != w {
                            x = parent[x];
                            cycle.push(x);
                        }
                        cycle.reverse();
                        return Ok(Some(CycleWitness {
                            vertices: cycle,
                            colours: (a, b),
                        }));
                    }
                    visited[w] = true;
                    parent[w] = u;
                    stack.push((w, 0));
                }
            }
        }
    }
    Ok(None)
}

/// Proper, and every pair of colour classes induces a forest. A colouring
/// that does not cover the graph is simply not acyclic.
pub fn is_acyclic_colouring(g: &Graph, f: &Colouring) -> bool {
    matches!(is_proper(g, f), Ok(true)) && matches!(find_bicoloured_cycle(g, f), Ok(None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    fn col(k: usize, c: &[usize]) -> Colouring {
        Colouring::new(k, c.to_vec()).unwrap()
    }

    fn prism_colouring() -> Colouring {
        // inner 0,1,2 and outer 1,2,0
        col(3, &[0, 1, 2, 1, 2, 0])
    }

    #[test]
    fn proper_examples() {
        let k2 = Graph::complete(2);
        assert!(is_proper(&k2, &col(2, &[0, 1])).unwrap());
        assert!(!is_proper(&k2, &col(2, &[0, 0])).unwrap());
        assert!(is_proper(&catalog::circular_ladder(3), &prism_colouring()).unwrap());
        assert!(is_proper(&k2, &col(2, &[0])).is_err());
    }

    #[test]
    fn square_example_has_witness_on_classes_0_and_2() {
        let (g, c) = catalog::bicoloured_square_example();
        let f = col(3, &c);
        let w = find_bicoloured_cycle(&g, &f).unwrap().unwrap();
        assert_eq!(w.colours, (0, 2));
        assert_eq!(w.vertices.len(), 4);
        assert!(w.is_valid(&g, &f));
    }

    #[test]
    fn c4_alternating_is_its_own_witness() {
        let g = Graph::cycle(4);
        let f = col(2, &[0, 1, 0, 1]);
        let w = find_bicoloured_cycle(&g, &f).unwrap().unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
        assert!(!is_acyclic_colouring(&g, &f));
    }

    #[test]
    fn prism_colouring_is_acyclic() {
        let g = catalog::circular_ladder(3);
        assert_eq!(find_bicoloured_cycle(&g, &prism_colouring()).unwrap(), None);
        assert!(is_acyclic_colouring(&g, &prism_colouring()));
    }

    #[test]
    fn biclique_side_colouring() {
        let g = Graph::complete_bipartite(2, 3);
        assert!(is_acyclic_colouring(&g, &col(3, &[1, 2, 0, 0, 0])));
    }

    #[test]
    fn improper_input_is_rejected_by_cycle_search() {
        let g = Graph::complete(2);
        assert!(matches!(
            find_bicoloured_cycle(&g, &col(2, &[1, 1])),
            Err(Error::Improper(0, 1))
        ));
    }

    #[test]
    fn text_format_round_trip() {
        let f = col(3, &[2, 0, 1]);
        assert_eq!(f.to_text(), "k 3\n1 2\n2 0\n3 1\n");
        assert_eq!(Colouring::parse_text(&f.to_text(), 3).unwrap(), f);
        assert!(Colouring::parse_text("k 3 1 0 1 1", 2).is_err());
        assert!(Colouring::parse_text("k 2 1 5", 1).is_err());
        assert!(Colouring::parse_text("k 2 1 0", 2).is_err());
    }
}
