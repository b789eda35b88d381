//! Partial colourings with feasibility tests and bicoloured-path queries.

use crate::graph::Graph;

pub(crate) const NONE: u8 = u8::MAX;

/// Largest palette the solver accepts.
pub const MAX_PALETTE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColouringKind {
    Proper,
    Acyclic,
}

impl ColouringKind {
    pub fn name(self) -> &'static str {
        match self {
            ColouringKind::Proper => "proper",
            ColouringKind::Acyclic => "acyclic",
        }
    }
}

pub(crate) struct Partial<'g> {
    pub g: &'g Graph,
    pub k: usize,
    pub kind: ColouringKind,
    pub colour: Vec<u8>,
    stamp: Vec<u32>,
    generation: u32,
    parent: Vec<usize>,
    queue: Vec<usize>,
    mark: Vec<u32>,
    mark_generation: u32,
}

impl<'g> Partial<'g> {
    pub fn new(g: &'g Graph, k: usize, kind: ColouringKind) -> Self {
        assert!(k <= MAX_PALETTE);
        let n = g.n();
        Partial {
            g,
            k,
            kind,
            colour: vec![NONE; n],
            stamp: vec![0; n],
            generation: 0,
            parent: vec![usize::MAX; n],
            queue: Vec::with_capacity(n),
            mark: vec![0; n],
            mark_generation: 0,
        }
    }

    fn next_generation(&mut self) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.generation
    }

    /// If giving `u` colour `c` would close a cycle with two neighbours of
    /// colour `other`, returns the connecting path between those neighbours
    /// inside `G[V_c ∪ V_other]`.
    pub fn closing_path(&mut self, u: usize, c: u8, other: u8) -> Option<Vec<usize>> {
        let g = self.g;
        let gen = self.next_generation();
        // component labels: stamp == gen marks visited; parent links give paths
        for &start in g.neighbours(u) {
            if self.colour[start] != other || self.stamp[start] == gen {
                continue;
            }
            self.stamp[start] = gen;
            self.parent[start] = usize::MAX;
            self.queue.clear();
            self.queue.push(start);
            let mut head = 0;
            while head < self.queue.len() {
                let x = self.queue[head];
                head += 1;
                for &y in g.neighbours(x) {
                    if y == u || self.stamp[y] == gen {
                        continue;
                    }
                    let cy = self.colour[y];
                    if cy != c && cy != other {
                        continue;
                    }
                    self.stamp[y] = gen;
                    self.parent[y] = x;
                    if cy == other && g.has_edge(u, y) {
                        let mut path = vec![y];
                        let mut z = y;
                        while self.parent[z] != usize::MAX {
                            z = self.parent[z];
                            path.push(z);
                        }
                        return Some(path);
                    }
                    self.queue.push(y);
                }
            }
        }
        None
    }

    pub fn feasible(&mut self, u: usize, c: u8) -> bool {
        let g = self.g;
        if g.neighbours(u).iter().any(|&x| self.colour[x] == c) {
            return false;
        }
        if self.kind == ColouringKind::Proper {
            return true;
        }
        (0..self.k as u8)
            .filter(|&o| o != c)
            .all(|o| self.closing_path(u, c, o).is_none())
    }

    /// Uncoloured vertices whose domain may shrink once `w` (already
    /// coloured) is fixed: its neighbours, and every uncoloured vertex
    /// adjacent to the component of `w` in `G[V_c ∪ V_other]` for some other
    /// colour `other`.
    pub fn affected_by(&mut self, w: usize, out: &mut Vec<usize>) {
        let g = self.g;
        let c = self.colour[w];
        out.clear();
        self.mark_generation = self.mark_generation.wrapping_add(1);
        if self.mark_generation == 0 {
            self.mark.iter_mut().for_each(|s| *s = 0);
            self.mark_generation = 1;
        }
        let mg = self.mark_generation;
        for &x in g.neighbours(w) {
            if self.colour[x] == NONE && self.mark[x] != mg {
                self.mark[x] = mg;
                out.push(x);
            }
        }
        if self.kind == ColouringKind::Proper {
            return;
        }
        for other in 0..self.k as u8 {
            if other == c {
                continue;
            }
            let gen = self.next_generation();
            self.stamp[w] = gen;
            self.queue.clear();
            self.queue.push(w);
            let mut head = 0;
            while head < self.queue.len() {
                let x = self.queue[head];
                head += 1;
                for &y in g.neighbours(x) {
                    let cy = self.colour[y];
                    if cy == NONE {
                        if self.mark[y] != mg {
                            self.mark[y] = mg;
                            out.push(y);
                        }
                    } else if (cy == c || cy == other) && self.stamp[y] != gen {
                        self.stamp[y] = gen;
                        self.queue.push(y);
                    }
                }
            }
        }
    }
}
