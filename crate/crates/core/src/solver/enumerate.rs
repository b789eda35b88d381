//! Exhaustive enumeration of colourings in lexicographic order.

use super::partial::{ColouringKind, Partial, MAX_PALETTE, NONE};
use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Stop,
}

/// Calls `visit` on every colouring of the given kind with colours
/// `0..k`, in lexicographic order of the colour vectors. Returns how many
/// colourings were visited; stops early when the visitor asks to.
pub fn for_each_colouring(
    g: &Graph,
    k: usize,
    kind: ColouringKind,
    mut visit: impl FnMut(&[usize]) -> Visit,
) -> Result<u64> {
    if k > MAX_PALETTE {
        return Err(Error::Refused(format!(
            "enumeration supports at most {MAX_PALETTE} colours"
        )));
    }
    let n = g.n();
    let mut state = Partial::new(g, k, kind);
    let mut colours = vec![0usize; n];
    let mut count = 0u64;
    if n == 0 {
        visit(&colours);
        return Ok(1);
    }
    // next[v] is the next colour to try at depth v
    let mut next = vec![0u8; n];
    let mut v = 0usize;
    loop {
        let mut placed = false;
        while (next[v] as usize) < k {
            let c = next[v];
            next[v] += 1;
            if state.feasible(v, c) {
                state.colour[v] = c;
                colours[v] = c as usize;
                placed = true;
                break;
            }
        }
        if placed {
            if v + 1 == n {
                count += 1;
                let stop = visit(&colours) == Visit::Stop;
                state.colour[v] = NONE;
                if stop {
                    return Ok(count);
                }
                continue;
            }
            v += 1;
            next[v] = 0;
        } else {
            if v == 0 {
                return Ok(count);
            }
            v -= 1;
            state.colour[v] = NONE;
        }
    }
}

/// All colourings of the given kind in lexicographic order, failing with
/// `Overflow` once there are more than `cap`.
pub fn enumerate_colourings(
    g: &Graph,
    k: usize,
    kind: ColouringKind,
    cap: usize,
) -> Result<Vec<Colouring>> {
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_colouring(g, k, kind, |c| {
        if out.len() == cap {
            overflow = true;
            return Visit::Stop;
        }
        out.push(c.to_vec());
        Visit::Continue
    })?;
    if overflow {
        return Err(Error::Overflow {
            what: "colourings",
            cap,
        });
    }
    out.into_iter().map(|c| Colouring::new(k, c)).collect()
}
