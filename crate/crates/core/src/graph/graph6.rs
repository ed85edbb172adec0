//! graph6 text encoding, restricted to the single-byte size form.
//!
//! A line is one size byte `n + 63` followed by the upper triangle of the
//! adjacency matrix in column-major order (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed six bits per byte, most significant bit first, each byte offset by 63.

use thiserror::Error;

use super::{Graph, GraphError};

/// Largest vertex count expressible with the single-byte size form.
pub const GRAPH6_MAX_VERTICES: usize = 62;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed header at byte {offset}: {reason}")]
    MalformedHeader { offset: usize, reason: &'static str },
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    OutOfRange { offset: usize, byte: u8 },
    #[error("truncated bit stream at byte {offset}: expected {expected} data bytes, found {found}")]
    Truncated { offset: usize, expected: usize, found: usize },
    #[error("unexpected trailing data at byte {offset}")]
    TrailingData { offset: usize },
    #[error("graph has {0} vertices; the single-byte size form holds at most {GRAPH6_MAX_VERTICES}")]
    TooLarge(usize),
}

/// Parses one graph6 line. A trailing line break and an optional `>>graph6<<`
/// prefix are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (base, line) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, line),
    };
    let bytes = line.as_bytes();
    let Some(&size) = bytes.first() else {
        return Err(Graph6Error::MalformedHeader { offset: base, reason: "empty input" });
    };
    if !(63..=126).contains(&size) {
        return Err(Graph6Error::OutOfRange { offset: base, byte: size });
    }
    if size == 126 {
        return Err(Graph6Error::MalformedHeader { offset: base, reason: "multi-byte size form is not supported" });
    }
    let n = (size - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[1..];
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::OutOfRange { offset: base + 1 + i, byte: b });
        }
    }
    if data.len() < expected {
        return Err(Graph6Error::Truncated { offset: base + bytes.len(), expected, found: data.len() });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingData { offset: base + 1 + expected });
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let group = data[k / 6] - 63;
            if group >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_masks(adj))
}

/// Encodes `g` as a graph6 line without header or line break.
pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.vertex_count();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + (n * n / 12) + 1);
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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

impl From<GraphError> for Graph6Error {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooManyVertices(n) => Graph6Error::TooLarge(n),
            // from_masks never produces the other variants
            other => unreachable!("{other}"),
        }
    }
}
