//! DIMACS-col edge lists: `p edge <n> <m>` followed by `e <u> <v>` lines
//! with 1-based endpoints. Lines starting with `c` are comments.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err("duplicate problem line"));
                }
                match fields.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(err("expected `p edge <n> <m>`")),
                }
                let n = parse_number(fields.next(), line_no)?;
                let m = parse_number(fields.next(), line_no)?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| err("edge line before problem line"))?;
                let u = parse_number(fields.next(), line_no)?;
                let v = parse_number(fields.next(), line_no)?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(err("endpoint outside 1..=n"));
                }
                if u == v {
                    return Err(err("self-loop"));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(err("unrecognised line")),
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing problem line".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {m} edges but {} were listed", edges.len()),
        });
    }
    Graph::new(n, edges)
}

fn parse_number(field: Option<&str>, line: usize) -> Result<usize> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::Parse {
            line,
            msg: "expected a non-negative integer".into(),
        })
}

/// Writes edges in lexicographic order. `comments` become leading `c` lines.
pub fn write(g: &Graph, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
