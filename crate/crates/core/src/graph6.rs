//! graph6 short form (n ≤ 62).
//!
//! Layout: one header byte `n + 63`, then the upper triangle of the adjacency
//! matrix in column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed six
//! bits per byte (most significant first), each byte offset by 63 and the
//! final byte zero-padded.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count the short form can express.
pub const GRAPH6_MAX_VERTICES: usize = 62;

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 line. Surrounding ASCII whitespace is ignored.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_ascii().as_bytes();
    let Some(&header) = bytes.first() else {
        return Err(err(0, "empty input"));
    };
    if !(63..=126).contains(&header) {
        return Err(err(0, format!("header byte {header} outside 63..=126")));
    }
    if header == 126 {
        return Err(err(0, "long-form graph6 (n > 62) is not supported"));
    }
    let n = (header - 63) as usize;
    let expected = 1 + body_len(n);
    if let Some((i, &b)) = bytes
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, b)| !(63..=126).contains(*b))
    {
        return Err(err(i, format!("byte {b} outside 63..=126")));
    }
    if bytes.len() < expected {
        return Err(err(
            bytes.len(),
            format!(
                "truncated: expected {expected} bytes for n={n}, got {}",
                bytes.len()
            ),
        ));
    }
    if bytes.len() > expected {
        return Err(err(
            expected,
            format!("trailing data: expected {expected} bytes for n={n}"),
        ));
    }

    let mut adj = vec![0u64; n];
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[1 + bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let last = expected - 1;
        let pad_mask = (1u8 << (6 - bit % 6)) - 1;
        if (bytes[last] - 63) & pad_mask != 0 {
            return Err(err(last, "nonzero padding bits"));
        }
    }
    Graph::from_adjacency(adj)
}

/// Encodes a graph with at most 62 vertices.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "graph6 short form vertex count",
            got: n,
            cap: GRAPH6_MAX_VERTICES,
        });
    }
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
