//! Colourings up to colour swaps, and up to swaps and automorphisms.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::colouring::{is_acyclic_colouring, is_proper, Colouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{for_each_colouring, ColouringKind, Visit};

/// A bijection on the palette `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColourPermutation(Vec<usize>);

impl ColourPermutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        if !is_bijection(&map) {
            return Err(Error::Precondition(format!("{map:?} is not a permutation")));
        }
        Ok(ColourPermutation(map))
    }

    pub fn identity(k: usize) -> Self {
        ColourPermutation((0..k).collect())
    }

    pub fn image(&self, c: usize) -> usize {
        self.0[c]
    }

    pub fn apply(&self, f: &Colouring) -> Result<Colouring> {
        if self.0.len() != f.palette() {
            return Err(Error::Precondition(format!(
                "permutation of {} colours applied to a {}-colouring",
                self.0.len(),
                f.palette()
            )));
        }
        Colouring::new(f.palette(), f.colours().iter().map(|&c| self.0[c]).collect())
    }
}

fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&x| x < map.len() && !std::mem::replace(&mut seen[x], true))
}

/// A vertex bijection preserving adjacency and non-adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism(Vec<usize>);

impl Automorphism {
    pub fn new(g: &Graph, map: Vec<usize>) -> Result<Self> {
        if map.len() != g.n() || !is_bijection(&map) {
            return Err(Error::Precondition(format!("{map:?} is not a vertex bijection")));
        }
        // a bijection mapping every edge to an edge is an automorphism of a
        // finite graph, since it then maps E onto E
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| !g.has_edge(map[u], map[v])) {
            return Err(Error::Precondition(format!(
                "edge {u}-{v} is not mapped to an edge"
            )));
        }
        Ok(Automorphism(map))
    }

    pub fn identity(n: usize) -> Self {
        Automorphism((0..n).collect())
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Automorphism(inv)
    }

    /// The colouring `f ∘ ψ⁻¹`, which gives `ψ(v)` the colour `f(v)`.
    pub fn apply(&self, f: &Colouring) -> Colouring {
        let mut out = vec![0; f.len()];
        self.push_forward(f.colours(), &mut out);
        Colouring::new(f.palette(), out).expect("same palette")
    }

    fn push_forward(&self, colours: &[usize], out: &mut [usize]) {
        for (v, &c) in colours.iter().enumerate() {
            out[self.0[v]] = c;
        }
    }
}

/// Relabels colours in order of first appearance along the vertex order.
pub fn canonical_under_swaps(f: &Colouring) -> Colouring {
    Colouring::new(f.palette(), canonical_vec(f.colours(), f.palette())).expect("relabelled")
}

fn canonical_vec(colours: &[usize], k: usize) -> Vec<usize> {
    let mut out = colours.to_vec();
    canonicalize_in_place(&mut out, k);
    out
}

fn canonicalize_in_place(colours: &mut [usize], k: usize) {
    let mut relabel = vec![usize::MAX; k];
    let mut next = 0;
    for c in colours.iter_mut() {
        if relabel[*c] == usize::MAX {
            relabel[*c] = next;
            next += 1;
        }
        *c = relabel[*c];
    }
}

/// Default node limit for the automorphism search.
pub const DEFAULT_AUTOMORPHISM_NODES: u64 = 1_000_000;

/// Stable colour refinement, each vertex labelled by its class index.
/// Classes are numbered by sorting signatures, so the labelling is
/// invariant under isomorphism.
pub fn refined_classes(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut class: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut count = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbours(v).iter().map(|&w| class[w]).collect();
                nb.sort_unstable();
                (class[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let index: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| index.binary_search(&s).expect("own signature"))
            .collect();
        let new_count = index.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

/// Every automorphism of `g`, in lexicographic order of the image vectors
/// as visited by the search. Fails once more than `cap` are found or the
/// search exceeds the default node limit.
pub fn automorphisms(g: &Graph, cap: usize) -> Result<Vec<Automorphism>> {
    automorphisms_with_limit(g, cap, DEFAULT_AUTOMORPHISM_NODES)
}

pub fn automorphisms_with_limit(g: &Graph, cap: usize, node_limit: u64) -> Result<Vec<Automorphism>> {
    let n = g.n();
    let class = refined_classes(g);
    // BFS order per component so that each vertex after a component's root
    // has an already-mapped neighbour to anchor its candidates
    let mut order = Vec::with_capacity(n);
    let mut anchor = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in g.neighbours(x) {
                if !seen[y] {
                    seen[y] = true;
                    anchor[y] = x;
                    order.push(y);
                }
            }
        }
    }
    let mut search = AutSearch {
        g,
        class,
        order,
        anchor,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        cap,
        nodes: 0,
        node_limit,
    };
    search.extend(0)?;
    search.found.sort();
    Ok(search.found)
}

struct AutSearch<'g> {
    g: &'g Graph,
    class: Vec<usize>,
    order: Vec<usize>,
    anchor: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Automorphism>,
    cap: usize,
    nodes: u64,
    node_limit: u64,
}

impl AutSearch<'_> {
    fn consistent(&self, v: usize, c: usize) -> bool {
        let g = self.g;
        let mut mapped_nb = 0;
        for &x in g.neighbours(v) {
            if self.map[x] != usize::MAX {
                mapped_nb += 1;
                if !g.has_edge(self.map[x], c) {
                    return false;
                }
            }
        }
        let used_nb = g.neighbours(c).iter().filter(|&&y| self.used[y]).count();
        mapped_nb == used_nb
    }

    fn extend(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Overflow {
                what: "automorphism search nodes",
                cap: self.node_limit as usize,
            });
        }
        if depth == self.order.len() {
            if self.found.len() == self.cap {
                return Err(Error::Overflow {
                    what: "automorphisms",
                    cap: self.cap,
                });
            }
            self.found.push(Automorphism(self.map.clone()));
            return Ok(());
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = match self.anchor[v] {
            usize::MAX => (0..self.g.n()).collect(),
            a => self.g.neighbours(self.map[a]).to_vec(),
        };
        for c in candidates {
            if self.used[c] || self.class[c] != self.class[v] || !self.consistent(v, c) {
                continue;
            }
            self.map[v] = c;
            self.used[c] = true;
            let r = self.extend(depth + 1);
            self.map[v] = usize::MAX;
            self.used[c] = false;
            r?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Swap,
    SwapAuto,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Swap => "swap",
            Relation::SwapAuto => "swap_auto",
        }
    }
}

/// Limits for exhaustive counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub colourings: u64,
    pub automorphisms: usize,
    pub automorphism_nodes: u64,
    pub keep_representatives: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            colourings: 10_000_000,
            automorphisms: 1_000_000,
            automorphism_nodes: DEFAULT_AUTOMORPHISM_NODES,
            keep_representatives: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub relation: Relation,
    #[serde(serialize_with = "ser_kind")]
    pub kind: ColouringKind,
    pub k: usize,
    pub count: u64,
    /// Total colourings enumerated before merging.
    pub colourings: u64,
    #[serde(serialize_with = "ser_reps")]
    pub representatives: Option<Vec<Colouring>>,
}

fn ser_kind<S: serde::Serializer>(k: &ColouringKind, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(k.name())
}

fn ser_reps<S: serde::Serializer>(
    r: &Option<Vec<Colouring>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    match r {
        None => s.serialize_none(),
        Some(reps) => {
            let mut seq = s.serialize_seq(Some(reps.len()))?;
            for f in reps {
                seq.serialize_element(f.colours())?;
            }
            seq.end()
        }
    }
}

/// Canonical forms of all colourings of the given kind, sorted, plus the
/// raw colouring count.
fn canonical_forms(
    g: &Graph,
    k: usize,
    kind: ColouringKind,
    caps: &Caps,
) -> Result<(Vec<Vec<usize>>, u64)> {
    let mut forms = BTreeSet::new();
    let mut total = 0u64;
    let mut overflow = false;
    let mut buf = Vec::new();
    for_each_colouring(g, k, kind, |c| {
        if total == caps.colourings {
            overflow = true;
            return Visit::Stop;
        }
        total += 1;
        buf.clear();
        buf.extend_from_slice(c);
        canonicalize_in_place(&mut buf, k);
        if !forms.contains(&buf) {
            forms.insert(buf.clone());
        }
        Visit::Continue
    })?;
    if overflow {
        return Err(Error::Overflow {
            what: "colourings",
            cap: caps.colourings as usize,
        });
    }
    Ok((forms.into_iter().collect(), total))
}

/// Number of equivalence classes of k-colourings of the given kind. For
/// `SwapAuto`, classes of swap-canonical forms are merged along the orbits
/// of the automorphism group; the representative of each class is its
/// smallest canonical form.
pub fn count_classes(
    g: &Graph,
    k: usize,
    relation: Relation,
    kind: ColouringKind,
    caps: &Caps,
) -> Result<ClassCount> {
    let (forms, total) = canonical_forms(g, k, kind, caps)?;
    let reps: Vec<usize> = match relation {
        Relation::Swap => (0..forms.len()).collect(),
        Relation::SwapAuto => {
            if forms.is_empty() {
                Vec::new()
            } else {
                let auts = automorphisms_with_limit(g, caps.automorphisms, caps.automorphism_nodes)?;
                orbit_representatives(&forms, &auts, k)
            }
        }
    };
    let representatives = caps.keep_representatives.then(|| {
        reps.iter()
            .map(|&i| Colouring::new(k, forms[i].clone()).expect("canonical form"))
            .collect()
    });
    Ok(ClassCount {
        relation,
        kind,
        k,
        count: reps.len() as u64,
        colourings: total,
        representatives,
    })
}

/// Indices of the first member of each orbit of the sorted `forms` under
/// the group `auts`.
fn orbit_representatives(forms: &[Vec<usize>], auts: &[Automorphism], k: usize) -> Vec<usize> {
    let mut visited = vec![false; forms.len()];
    let mut reps = Vec::new();
    let mut image = vec![0; forms.first().map_or(0, Vec::len)];
    for i in 0..forms.len() {
        if visited[i] {
            continue;
        }
        reps.push(i);
        for a in auts {
            a.push_forward(&forms[i], &mut image);
            canonicalize_in_place(&mut image, k);
            let j = forms
                .binary_search(&image)
                .expect("automorphisms preserve the colouring kind");
            visited[j] = true;
        }
    }
    reps
}

fn check_kind(g: &Graph, f: &Colouring, kind: ColouringKind) -> Result<()> {
    f.covers(g)?;
    let ok = match kind {
        ColouringKind::Proper => is_proper(g, f)?,
        ColouringKind::Acyclic => is_acyclic_colouring(g, f),
    };
    if !ok {
        return Err(Error::Precondition(format!(
            "the given colouring is not {}",
            kind.name()
        )));
    }
    Ok(())
}

/// A colouring of the same kind and palette as `f` that is not equivalent
/// to `f` under `relation`, if one exists.
pub fn another_colouring(
    g: &Graph,
    f: &Colouring,
    relation: Relation,
    kind: ColouringKind,
    caps: &Caps,
) -> Result<Option<Colouring>> {
    check_kind(g, f, kind)?;
    let k = f.palette();
    let mut orbit: BTreeSet<Vec<usize>> = BTreeSet::new();
    orbit.insert(canonical_vec(f.colours(), k));
    if relation == Relation::SwapAuto {
        for a in automorphisms_with_limit(g, caps.automorphisms, caps.automorphism_nodes)? {
            orbit.insert(canonical_vec(a.apply(f).colours(), k));
        }
    }
    let mut found = None;
    let mut seen = 0u64;
    let mut overflow = false;
    for_each_colouring(g, k, kind, |c| {
        seen += 1;
        if seen > caps.colourings {
            overflow = true;
            return Visit::Stop;
        }
        if !orbit.contains(&canonical_vec(c, k)) {
            found = Some(c.to_vec());
            return Visit::Stop;
        }
        Visit::Continue
    })?;
    if let Some(c) = found {
        return Ok(Some(Colouring::new(k, c)?));
    }
    if overflow {
        return Err(Error::Overflow {
            what: "colourings",
            cap: caps.colourings as usize,
        });
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniqueness {
    Unique,
    NotUnique,
    NoneExist,
    Overflow,
}

pub fn is_unique(
    g: &Graph,
    k: usize,
    relation: Relation,
    kind: ColouringKind,
    caps: &Caps,
) -> Result<Uniqueness> {
    match count_classes(g, k, relation, kind, caps) {
        Ok(c) => Ok(match c.count {
            0 => Uniqueness::NoneExist,
            1 => Uniqueness::Unique,
            _ => Uniqueness::NotUnique,
        }),
        Err(Error::Overflow { .. }) => Ok(Uniqueness::Overflow),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::enumerate_colourings;

    fn col(k: usize, c: &[usize]) -> Colouring {
        Colouring::new(k, c.to_vec()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_under_swaps(&col(3, &[2, 0, 1])).colours(), &[0, 1, 2]);
        assert_eq!(canonical_under_swaps(&col(2, &[0, 1, 0])).colours(), &[0, 1, 0]);
        assert_eq!(canonical_under_swaps(&col(2, &[1, 1, 0])).colours(), &[0, 0, 1]);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&Graph::complete(3), 100).unwrap().len(), 6);
        assert_eq!(automorphisms(&Graph::path(3), 100).unwrap().len(), 2);
        assert_eq!(automorphisms(&Graph::cycle(5), 100).unwrap().len(), 10);
        assert_eq!(automorphisms(&Graph::empty(4), 100).unwrap().len(), 24);
        assert_eq!(automorphisms(&crate::graph::catalog::petersen(), 1000).unwrap().len(), 120);
        assert!(matches!(
            automorphisms(&Graph::complete(5), 10),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn automorphism_validation() {
        let p3 = Graph::path(3);
        assert!(Automorphism::new(&p3, vec![2, 1, 0]).is_ok());
        assert!(Automorphism::new(&p3, vec![1, 0, 2]).is_err());
        assert!(Automorphism::new(&p3, vec![0, 0, 2]).is_err());
        assert!(ColourPermutation::new(vec![1, 0, 2]).is_ok());
        assert!(ColourPermutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn count_examples() {
        let caps = Caps::default();
        let p3 = Graph::path(3);
        let c = |g: &Graph, k, r, kind| count_classes(g, k, r, kind, &caps).unwrap().count;
        assert_eq!(c(&p3, 2, Relation::Swap, ColouringKind::Proper), 1);
        assert_eq!(c(&p3, 3, Relation::Swap, ColouringKind::Proper), 2);
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(c(&k23, 3, Relation::Swap, ColouringKind::Acyclic), 1);
        assert_eq!(c(&Graph::cycle(4), 2, Relation::Swap, ColouringKind::Acyclic), 0);
    }

    /// Classes by brute force: two colourings are related when some
    /// permutation pair (σ, ψ) maps one onto the other.
    fn oracle_count(g: &Graph, k: usize, relation: Relation, kind: ColouringKind) -> usize {
        let all: Vec<Vec<usize>> = enumerate_colourings(g, k, kind, usize::MAX)
            .unwrap()
            .into_iter()
            .map(|f| f.colours().to_vec())
            .collect();
        let auts = match relation {
            Relation::Swap => vec![Automorphism::identity(g.n())],
            Relation::SwapAuto => automorphisms(g, 10_000).unwrap(),
        };
        let perms = permutations(k);
        let mut id = (0..all.len()).collect::<Vec<_>>();
        fn find(id: &mut [usize], x: usize) -> usize {
            if id[x] != x {
                let r = find(id, id[x]);
                id[x] = r;
            }
            id[x]
        }
        for i in 0..all.len() {
            for a in &auts {
                for s in &perms {
                    let mut img = vec![0; g.n()];
                    for v in 0..g.n() {
                        img[a.image(v)] = s[all[i][v]];
                    }
                    let j = all.iter().position(|c| *c == img).unwrap();
                    let (ri, rj) = (find(&mut id, i), find(&mut id, j));
                    id[ri] = rj;
                }
            }
        }
        (0..all.len()).filter(|&i| find(&mut id, i) == i).count()
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn counts_match_union_find_oracle() {
        let graphs = [
            Graph::path(4),
            Graph::cycle(5),
            Graph::complete_bipartite(2, 3),
            crate::graph::catalog::circular_ladder(3),
            Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            for k in 2..=4 {
                for kind in [ColouringKind::Proper, ColouringKind::Acyclic] {
                    for relation in [Relation::Swap, Relation::SwapAuto] {
                        let got = count_classes(g, k, relation, kind, &Caps::default()).unwrap();
                        assert_eq!(
                            got.count as usize,
                            oracle_count(g, k, relation, kind),
                            "{g:?} k={k} {kind:?} {relation:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn another_examples() {
        let caps = Caps::default();
        let k23 = Graph::complete_bipartite(2, 3);
        let f = col(3, &[1, 2, 0, 0, 0]);
        assert_eq!(
            another_colouring(&k23, &f, Relation::Swap, ColouringKind::Acyclic, &caps).unwrap(),
            None
        );
        let c6 = Graph::cycle(6);
        let f = col(3, &[0, 1, 2, 0, 1, 2]);
        let other = another_colouring(&c6, &f, Relation::Swap, ColouringKind::Acyclic, &caps)
            .unwrap()
            .unwrap();
        assert!(is_acyclic_colouring(&c6, &other));
        assert_ne!(canonical_under_swaps(&other), canonical_under_swaps(&f));
        let k2 = Graph::complete(2);
        assert_eq!(
            another_colouring(&k2, &col(2, &[0, 1]), Relation::Swap, ColouringKind::Proper, &caps)
                .unwrap(),
            None
        );
        assert!(another_colouring(&k2, &col(2, &[0, 0]), Relation::Swap, ColouringKind::Proper, &caps).is_err());
    }

    #[test]
    fn uniqueness_classification() {
        let caps = Caps::default();
        assert_eq!(
            is_unique(&Graph::cycle(4), 2, Relation::Swap, ColouringKind::Acyclic, &caps).unwrap(),
            Uniqueness::NoneExist
        );
        assert_eq!(
            is_unique(&Graph::complete(2), 2, Relation::Swap, ColouringKind::Proper, &caps).unwrap(),
            Uniqueness::Unique
        );
        let tight = Caps {
            colourings: 2,
            ..Caps::default()
        };
        assert_eq!(
            is_unique(&Graph::empty(3), 2, Relation::Swap, ColouringKind::Proper, &tight).unwrap(),
            Uniqueness::Overflow
        );
    }
}
