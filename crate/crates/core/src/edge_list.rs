//! Plain-text edge lists: a header line `n m`, then `m` lines `u v`
//! (0-indexed). Text after `#` is ignored, as are blank lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::EdgeList {
        line: 1,
        reason: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        if edges.len() == m {
            return Err(Error::EdgeList {
                line,
                reason: format!("more than the declared {m} edges"),
            });
        }
        let (u, v) = parse_pair(line, body)?;
        for x in [u, v] {
            if x >= n {
                return Err(Error::EdgeList {
                    line,
                    reason: format!("vertex {x} out of range for n={n}"),
                });
            }
        }
        if u == v {
            return Err(Error::EdgeList {
                line,
                reason: format!("loop at vertex {u}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::EdgeList {
            line: text.lines().count().max(1),
            reason: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize)> {
    let bad = |reason: String| Error::EdgeList { line, reason };
    let mut it = body.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| bad(format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| bad(format!("`{tok}` is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(bad(format!("unexpected token `{extra}`")));
    }
    Ok((a, b))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
