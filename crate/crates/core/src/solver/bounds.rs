//! Lower bounds on the acyclic chromatic number and degree-regime
//! classifiers, all in exact integer or rational arithmetic.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Rational = Ratio<u64>;

/// Largest graph for which `mad` is computed by subset enumeration.
pub const MAD_VERTEX_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// `1 + m/n`; the acyclic chromatic number is strictly larger whenever
    /// the graph has an edge.
    #[serde(serialize_with = "ser_ratio")]
    pub density_bound: Rational,
    /// `⌈(d+3)/2⌉` for d-regular graphs with `d ≥ 1`; a non-strict bound.
    pub regular_bound: Option<usize>,
    /// `1 + mad/2`, strict like the density bound.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub mad_bound: Option<Rational>,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_ratio<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl BoundReport {
    /// Smallest palette not excluded by any of the bounds.
    pub fn least_admissible_palette(&self, g: &Graph) -> usize {
        if g.n() == 0 {
            return 0;
        }
        let mut k = 1;
        if g.m() > 0 {
            k = k.max(strictly_above(self.density_bound));
            if let Some(mad) = self.mad_bound {
                k = k.max(strictly_above(mad));
            }
        }
        if let Some(r) = self.regular_bound {
            k = k.max(r);
        }
        k
    }
}

/// Least integer strictly greater than `r`.
pub fn strictly_above(r: Rational) -> usize {
    (r.floor().to_integer() + 1) as usize
}

pub fn density_bound(g: &Graph) -> Rational {
    if g.n() == 0 {
        return Rational::from_integer(1);
    }
    Rational::from_integer(1) + Rational::new(g.m() as u64, g.n() as u64)
}

/// True when palette size `k` is ruled out by `χ_a > 1 + m/n`, i.e.
/// `k ≤ 1 + m/n`, decided by cross-multiplication.
pub fn density_excludes(g: &Graph, k: usize) -> bool {
    g.m() > 0 && (k == 0 || (k as u128 - 1) * g.n() as u128 <= g.m() as u128)
}

pub fn regular_bound(g: &Graph) -> Option<usize> {
    match g.regular_degree() {
        Some(d) if d >= 1 && g.n() > 0 => Some((d + 3).div_ceil(2)),
        _ => None,
    }
}

/// Maximum average degree `max 2|E(H)|/|V(H)|` over connected induced
/// subgraphs; a densest subgraph can always be taken connected.
pub fn mad(g: &Graph) -> Result<Rational> {
    let n = g.n();
    if n > MAD_VERTEX_LIMIT {
        return Err(Error::Refused(format!(
            "mad needs subset enumeration; {n} vertices exceeds the limit of {MAD_VERTEX_LIMIT}"
        )));
    }
    if n == 0 {
        return Ok(Rational::from_integer(0));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut best = Rational::from_integer(0);
    for set in 1u32..(1 << n) {
        let size = set.count_ones() as u64;
        let twice_edges: u64 = (0..n)
            .filter(|&v| set >> v & 1 == 1)
            .map(|v| (adj[v] & set).count_ones() as u64)
            .sum();
        let avg = Rational::new(twice_edges, size);
        if avg <= best || !connected_subset(&adj, set) {
            continue;
        }
        best = avg;
    }
    Ok(best)
}

fn connected_subset(adj: &[u32], set: u32) -> bool {
    let start = set & set.wrapping_neg();
    let mut reached = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & set & !reached;
        reached |= new;
        frontier |= new;
    }
    reached == set
}

pub fn bound_report(g: &Graph, enable_mad: bool) -> Result<BoundReport> {
    let mad_bound = if enable_mad {
        Some(Rational::from_integer(1) + mad(g)? / 2)
    } else {
        None
    };
    Ok(BoundReport {
        density_bound: density_bound(g),
        regular_bound: regular_bound(g),
        mad_bound,
    })
}

fn require_k_at_least_3(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::Precondition(format!("k must be at least 3, got {k}")));
    }
    Ok(())
}

/// `d ≤ 0.38·k^{3/4}`, checked as `d⁴·100⁴ ≤ 38⁴·k³`.
pub fn trivial_yes_threshold(k: usize, d: usize) -> Result<bool> {
    require_k_at_least_3(k)?;
    let (k, d) = (k as u128, d as u128);
    Ok(d.pow(4) * 100u128.pow(4) <= 38u128.pow(4) * k.pow(3))
}

pub fn ceil_sqrt(k: u64) -> u64 {
    let r = k.isqrt();
    if r * r == k {
        r
    } else {
        r + 1
    }
}

/// `k(k − 1 + ⌈√k⌉)`: a maximum degree at which k-acyclic colourability
/// is already NP-complete.
pub fn npc_degree_bound(k: usize) -> Result<usize> {
    require_k_at_least_3(k)?;
    let k = k as u64;
    Ok((k * (k - 1 + ceil_sqrt(k))) as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// No d-regular graph is k-acyclic colourable.
    AlwaysNo,
    /// `k+1 ≤ d ≤ 2k−3`: NP-complete on d-regular graphs.
    CandidateNpc,
    Open,
}

/// Complexity regime of k-acyclic colourability on d-regular graphs.
pub fn regular_regime(k: usize, d: usize) -> Result<Regime> {
    require_k_at_least_3(k)?;
    Ok(if d >= 2 * k - 2 {
        Regime::AlwaysNo
    } else if k < d && d <= 2 * k - 3 {
        Regime::CandidateNpc
    } else {
        Regime::Open
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: u64, b: u64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn density_examples() {
        assert_eq!(density_bound(&Graph::cycle(5)), r(2, 1));
        assert_eq!(density_bound(&Graph::complete(4)), r(5, 2));
        assert!(density_excludes(&Graph::cycle(5), 2));
        assert!(!density_excludes(&Graph::cycle(5), 3));
        assert!(density_excludes(&Graph::complete(4), 2));
        assert!(!density_excludes(&Graph::complete(4), 3));
        assert!(!density_excludes(&Graph::empty(3), 1));
        assert!(density_excludes(&Graph::complete(2), 0));
    }

    #[test]
    fn regular_bound_examples() {
        assert_eq!(regular_bound(&Graph::cycle(4)), Some(3));
        assert_eq!(regular_bound(&Graph::complete(4)), Some(3));
        assert_eq!(regular_bound(&Graph::empty(3)), None);
        assert_eq!(regular_bound(&Graph::path(3)), None);
    }

    #[test]
    fn mad_examples() {
        assert_eq!(mad(&Graph::complete(4)).unwrap(), r(3, 1));
        // the triangle is the densest part of a triangle with a pendant path
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(mad(&g).unwrap(), r(2, 1));
        assert!(mad(&Graph::empty(21)).is_err());
        let rep = bound_report(&Graph::complete(4), true).unwrap();
        assert_eq!(rep.mad_bound, Some(r(5, 2)));
    }

    #[test]
    fn thresholds() {
        assert!(trivial_yes_threshold(3, 0).unwrap());
        assert!(!trivial_yes_threshold(3, 2).unwrap());
        assert!(trivial_yes_threshold(256, 24).unwrap());
        assert!(!trivial_yes_threshold(256, 25).unwrap());
        assert!(trivial_yes_threshold(2, 0).is_err());
    }

    #[test]
    fn npc_degree_examples() {
        assert_eq!(npc_degree_bound(3).unwrap(), 12);
        assert_eq!(npc_degree_bound(4).unwrap(), 20);
        assert_eq!(npc_degree_bound(9).unwrap(), 99);
        assert_eq!(npc_degree_bound(10).unwrap(), 10 * (9 + 4));
    }

    #[test]
    fn regimes() {
        assert_eq!(regular_regime(4, 6).unwrap(), Regime::AlwaysNo);
        assert_eq!(regular_regime(4, 5).unwrap(), Regime::CandidateNpc);
        assert_eq!(regular_regime(3, 2).unwrap(), Regime::Open);
        assert_eq!(regular_regime(5, 7).unwrap(), Regime::CandidateNpc);
        assert_eq!(regular_regime(5, 6).unwrap(), Regime::CandidateNpc);
        assert_eq!(regular_regime(5, 5).unwrap(), Regime::Open);
    }
}
