//! Conflict-driven backtracking search for a single colouring.
//!
//! The state is one boolean atom `v = c` per vertex and colour; an atom is
//! true once `c` is the only colour left for `v` and false once `c` has
//! been ruled out. Propagation enforces properness, one colour per vertex
//! and, for acyclic colourings, removes every colour that would close a
//! bicoloured cycle through already coloured vertices. Each inference keeps
//! the literals it depends on, and a conflict is traced back to a single
//! literal of the current decision level. The resulting nogood is stored as
//! a clause, so a refuted combination of colours stays refuted when
//! unrelated earlier choices change.
//!
//! Branching picks the uncoloured vertex with the fewest remaining colours,
//! ties by lowest index, and tries its smallest colour. Palette symmetry is
//! removed at the root by fixing the colours of a vertex of maximum degree
//! and of its first neighbour.

use std::time::Instant;

use super::partial::{ColouringKind, Partial, NONE};
use super::SolveBudget;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Value {
    Unset,
    True,
    False,
}

/// Literal over atom `a = v·k + c`: `2a` asserts `v = c`, `2a + 1` denies it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Lit(u32);

impl Lit {
    fn pos(atom: usize) -> Lit {
        Lit(2 * atom as u32)
    }
    fn neg(atom: usize) -> Lit {
        Lit(2 * atom as u32 + 1)
    }
    fn atom(self) -> usize {
        (self.0 / 2) as usize
    }
    fn is_pos(self) -> bool {
        self.0.is_multiple_of(2)
    }
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
    fn index(self) -> usize {
        self.0 as usize
    }
}

/// Why an atom received its value. The antecedents of an implied literal
/// are literals that were already true when it was set.
#[derive(Clone, Debug)]
enum Reason {
    Decision,
    /// Fixed before the first decision.
    Root,
    /// Unit clause; the implied literal sits at position 0.
    Clause(usize),
    /// `v = c` is false because `v` already has the colour of this atom.
    SameVertex(usize),
    /// `v = c` is false because the neighbour in this atom has colour `c`.
    Neighbour(usize),
    /// `v = c` is false because these true atoms would close a bicoloured
    /// cycle through `v`.
    Cycle(Box<[usize]>),
    /// `v = c` is true because every other colour of `v` is false.
    LastColour,
}

pub(crate) enum RawOutcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

type Conflict = Vec<Lit>;

pub(crate) struct Search<'g> {
    state: Partial<'g>,
    k: usize,
    value: Vec<Value>,
    level: Vec<u32>,
    reason: Vec<Reason>,
    trail: Vec<Lit>,
    /// Trail length at the start of each decision level.
    level_start: Vec<usize>,
    queue_head: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    seen: Vec<bool>,
    scratch: Vec<usize>,
    nodes: u64,
    budget: SolveBudget,
    started: Instant,
}

impl<'g> Search<'g> {
    pub fn new(g: &'g Graph, k: usize, kind: ColouringKind, budget: SolveBudget) -> Self {
        let atoms = g.n() * k;
        Search {
            state: Partial::new(g, k, kind),
            k,
            value: vec![Value::Unset; atoms],
            level: vec![0; atoms],
            reason: vec![Reason::Decision; atoms],
            trail: Vec::with_capacity(atoms),
            level_start: Vec::new(),
            queue_head: 0,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * atoms],
            seen: vec![false; atoms],
            scratch: Vec::new(),
            nodes: 0,
            budget,
            started: Instant::now(),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn atom(&self, v: usize, c: usize) -> usize {
        v * self.k + c
    }

    fn decision_level(&self) -> u32 {
        self.level_start.len() as u32
    }

    fn lit_value(&self, l: Lit) -> Value {
        match (self.value[l.atom()], l.is_pos()) {
            (Value::Unset, _) => Value::Unset,
            (Value::True, true) | (Value::False, false) => Value::True,
            _ => Value::False,
        }
    }

    /// The literal currently true on `atom`.
    fn true_lit(&self, atom: usize) -> Lit {
        match self.value[atom] {
            Value::True => Lit::pos(atom),
            Value::False => Lit::neg(atom),
            Value::Unset => unreachable!("atom is unset"),
        }
    }

    fn antecedents(&self, l: Lit, reason: &Reason, out: &mut Vec<Lit>) {
        match reason {
            Reason::Decision | Reason::Root => {}
            Reason::Clause(id) => {
                out.extend(self.clauses[*id].iter().filter(|&&x| x != l).map(|x| x.not()))
            }
            Reason::SameVertex(a) | Reason::Neighbour(a) => out.push(Lit::pos(*a)),
            Reason::Cycle(atoms) => out.extend(atoms.iter().map(|&a| Lit::pos(a))),
            Reason::LastColour => {
                let (v, c) = (l.atom() / self.k, l.atom() % self.k);
                out.extend((0..self.k).filter(|&x| x != c).map(|x| Lit::neg(self.atom(v, x))));
            }
        }
    }

    /// Makes `l` true. Fails with a conflict when it is already false.
    fn enqueue(&mut self, l: Lit, reason: Reason) -> Result<(), Conflict> {
        match self.lit_value(l) {
            Value::True => Ok(()),
            Value::False => {
                let mut conflict = vec![self.true_lit(l.atom())];
                self.antecedents(l, &reason, &mut conflict);
                Err(conflict)
            }
            Value::Unset => {
                let a = l.atom();
                self.value[a] = if l.is_pos() { Value::True } else { Value::False };
                self.level[a] = self.decision_level();
                self.reason[a] = reason;
                self.trail.push(l);
                Ok(())
            }
        }
    }

    fn propagate(&mut self) -> Result<(), Conflict> {
        while self.queue_head < self.trail.len() {
            let l = self.trail[self.queue_head];
            self.queue_head += 1;
            self.propagate_clauses(l.not())?;
            let (v, c) = (l.atom() / self.k, l.atom() % self.k);
            if l.is_pos() {
                self.propagate_colour(v, c)?;
            } else {
                self.propagate_removal(v)?;
            }
        }
        Ok(())
    }

    /// Visits the clauses watching `falsified`.
    fn propagate_clauses(&mut self, falsified: Lit) -> Result<(), Conflict> {
        let mut ws = std::mem::take(&mut self.watches[falsified.index()]);
        let mut i = 0;
        let mut result = Ok(());
        while i < ws.len() {
            let id = ws[i];
            let clause = &mut self.clauses[id];
            if clause[0] == falsified {
                clause.swap(0, 1);
            }
            let first = clause[0];
            if self.lit_value(first) == Value::True {
                i += 1;
                continue;
            }
            let clause = &self.clauses[id];
            let replacement = (2..clause.len()).find(|&j| self.lit_value(clause[j]) != Value::False);
            if let Some(j) = replacement {
                let clause = &mut self.clauses[id];
                clause.swap(1, j);
                let w = clause[1];
                self.watches[w.index()].push(id);
                ws.swap_remove(i);
                continue;
            }
            i += 1;
            if let Err(conflict) = self.enqueue(first, Reason::Clause(id)) {
                result = Err(conflict);
                break;
            }
        }
        // watches added meanwhile, if any, stay registered
        let added = std::mem::take(&mut self.watches[falsified.index()]);
        ws.extend(added);
        self.watches[falsified.index()] = ws;
        result
    }

    fn propagate_removal(&mut self, v: usize) -> Result<(), Conflict> {
        let mut remaining = (0..self.k).filter(|&c| self.value[self.atom(v, c)] != Value::False);
        match (remaining.next(), remaining.next()) {
            (None, _) => Err((0..self.k).map(|c| Lit::neg(self.atom(v, c))).collect()),
            (Some(c), None) => self.enqueue(Lit::pos(self.atom(v, c)), Reason::LastColour),
            _ => Ok(()),
        }
    }

    fn propagate_colour(&mut self, v: usize, c: usize) -> Result<(), Conflict> {
        let me = self.atom(v, c);
        for x in (0..self.k).filter(|&x| x != c) {
            self.enqueue(Lit::neg(self.atom(v, x)), Reason::SameVertex(me))?;
        }
        let g = self.state.g;
        for &u in g.neighbours(v) {
            self.enqueue(Lit::neg(self.atom(u, c)), Reason::Neighbour(me))?;
        }
        self.state.colour[v] = c as u8;
        if self.state.kind == ColouringKind::Proper {
            return Ok(());
        }
        for other in (0..self.k as u8).filter(|&o| o as usize != c) {
            if let Some(path) = self.state.closing_path(v, c as u8, other) {
                let mut conflict: Conflict = path.iter().map(|&x| self.coloured_lit(x)).collect();
                conflict.push(Lit::pos(me));
                return Err(conflict);
            }
        }
        let mut affected = std::mem::take(&mut self.scratch);
        self.state.affected_by(v, &mut affected);
        let mut result = Ok(());
        'outer: for &u in &affected {
            for x in 0..self.k {
                let a = self.atom(u, x);
                if self.value[a] == Value::False {
                    continue;
                }
                for other in (0..self.k as u8).filter(|&o| o as usize != x) {
                    let Some(path) = self.state.closing_path(u, x as u8, other) else {
                        continue;
                    };
                    let atoms = path.iter().map(|&y| self.coloured_lit(y).atom()).collect();
                    if let Err(conflict) = self.enqueue(Lit::neg(a), Reason::Cycle(atoms)) {
                        result = Err(conflict);
                        break 'outer;
                    }
                    break;
                }
            }
        }
        self.scratch = affected;
        result
    }

    fn coloured_lit(&self, v: usize) -> Lit {
        Lit::pos(self.atom(v, self.state.colour[v] as usize))
    }

    fn backtrack(&mut self, to_level: u32) {
        if self.decision_level() <= to_level {
            return;
        }
        let start = self.level_start[to_level as usize];
        for &l in &self.trail[start..] {
            let a = l.atom();
            self.value[a] = Value::Unset;
            let (v, c) = (a / self.k, a % self.k);
            if l.is_pos() && self.state.colour[v] as usize == c {
                self.state.colour[v] = NONE;
            }
        }
        self.trail.truncate(start);
        self.level_start.truncate(to_level as usize);
        self.queue_head = self.trail.len();
    }

    /// Traces a conflict back to the first unique implication point.
    /// Returns the learned clause, asserting literal first, and the level
    /// to jump back to.
    fn analyse(&mut self, conflict: Conflict) -> (Vec<Lit>, u32) {
        let current = self.decision_level();
        let mut pending = 0usize;
        let mut lower: Vec<Lit> = Vec::new();
        let mut todo = conflict;
        let mut index = self.trail.len();
        loop {
            for l in todo.drain(..) {
                let a = l.atom();
                if self.seen[a] || self.level[a] == 0 {
                    continue;
                }
                self.seen[a] = true;
                if self.level[a] == current {
                    pending += 1;
                } else {
                    lower.push(l);
                }
            }
            let l = loop {
                index -= 1;
                let l = self.trail[index];
                if self.seen[l.atom()] {
                    break l;
                }
            };
            self.seen[l.atom()] = false;
            pending -= 1;
            if pending == 0 {
                let mut learned = vec![l.not()];
                learned.extend(lower.iter().map(|x| x.not()));
                for x in &lower {
                    self.seen[x.atom()] = false;
                }
                let mut back = 0;
                if learned.len() > 1 {
                    let deepest = (1..learned.len())
                        .max_by_key(|&i| self.level[learned[i].atom()])
                        .expect("clause has a second literal");
                    learned.swap(1, deepest);
                    back = self.level[learned[1].atom()];
                }
                return (learned, back);
            }
            self.antecedents(l, &self.reason[l.atom()], &mut todo);
        }
    }

    fn learn(&mut self, learned: Vec<Lit>) -> Result<(), Conflict> {
        let asserting = learned[0];
        if learned.len() == 1 {
            return self.enqueue(asserting, Reason::Root);
        }
        let id = self.clauses.len();
        self.watches[learned[0].index()].push(id);
        self.watches[learned[1].index()].push(id);
        self.clauses.push(learned);
        self.enqueue(asserting, Reason::Clause(id))
    }

    fn over_budget(&self) -> bool {
        if self.budget.node_limit.is_some_and(|limit| self.nodes > limit) {
            return true;
        }
        match self.budget.wall_limit {
            Some(limit) => self.nodes.is_multiple_of(256) && self.started.elapsed() > limit,
            None => false,
        }
    }

    fn pick(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..self.state.g.n()).filter(|&v| self.state.colour[v] == NONE) {
            let size = (0..self.k)
                .filter(|&c| self.value[self.atom(v, c)] != Value::False)
                .count();
            if best.is_none_or(|(s, _)| size < s) {
                best = Some((size, v));
            }
        }
        let (_, v) = best?;
        let c = (0..self.k)
            .find(|&c| self.value[self.atom(v, c)] == Value::Unset)
            .expect("an uncoloured vertex keeps two colours");
        Some((v, c))
    }

    fn fix_palette_symmetry(&mut self) -> Result<(), Conflict> {
        let g = self.state.g;
        let Some(w) = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) else {
            return Ok(());
        };
        self.enqueue(Lit::pos(self.atom(w, 0)), Reason::Root)?;
        if let Some(&x) = g.neighbours(w).first() {
            if self.k >= 2 {
                self.enqueue(Lit::pos(self.atom(x, 1)), Reason::Root)?;
            }
        }
        Ok(())
    }

    pub fn run(&mut self) -> RawOutcome {
        if self.k == 0 {
            return if self.state.g.n() == 0 {
                RawOutcome::Found(Vec::new())
            } else {
                RawOutcome::Exhausted
            };
        }
        if self.fix_palette_symmetry().is_err() {
            return RawOutcome::Exhausted;
        }
        loop {
            match self.propagate() {
                Ok(()) => {
                    let Some((v, c)) = self.pick() else {
                        let colours = self.state.colour.iter().map(|&c| c as usize).collect();
                        return RawOutcome::Found(colours);
                    };
                    self.nodes += 1;
                    if self.over_budget() {
                        return RawOutcome::OutOfBudget;
                    }
                    self.level_start.push(self.trail.len());
                    self.enqueue(Lit::pos(self.atom(v, c)), Reason::Decision)
                        .expect("decision on an unset atom");
                }
                Err(conflict) => {
                    if self.decision_level() == 0 {
                        return RawOutcome::Exhausted;
                    }
                    self.nodes += 1;
                    if self.over_budget() {
                        return RawOutcome::OutOfBudget;
                    }
                    let (learned, back) = self.analyse(conflict);
                    self.backtrack(back);
                    if self.learn(learned).is_err() {
                        return RawOutcome::Exhausted;
                    }
                }
            }
        }
    }
}
