//! graph6 and DOT serialization of graphs of lines.

use std::fmt::Write;

use thiserror::Error;

use crate::linegraph::{LineGraph, NO_COLOR};

/// Largest vertex count expressible in the short and medium graph6 headers.
pub const GRAPH6_MAX_VERTICES: usize = 258_047;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("graph6 input is empty")]
    Empty,
    #[error("graph6 byte {0:#x} is outside 63..=126")]
    BadByte(u8),
    #[error("graph6 body has {actual} bytes, expected {expected}")]
    Length { expected: usize, actual: usize },
    #[error("graph has {0} vertices, more than graph6 supports here")]
    TooLarge(usize),
}

/// graph6 text (no trailing newline) of the uncoloured graph.
pub fn to_graph6(g: &LineGraph) -> Result<String, FormatError> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= GRAPH6_MAX_VERTICES {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    } else {
        return Err(FormatError::TooLarge(n));
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(63 + acc);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(63 + (acc << (6 - bits)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parses one graph6 line; edges get [`NO_COLOR`].
pub fn from_graph6(text: &str) -> Result<LineGraph, FormatError> {
    let bytes = text.trim_end().as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::BadByte(b));
    }
    let (n, body) = match bytes {
        [] => return Err(FormatError::Empty),
        [126, 126, ..] => return Err(FormatError::TooLarge(usize::MAX)),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(FormatError::Length {
                    expected: 3,
                    actual: rest.len(),
                });
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let expected = total_bits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::Length {
            expected,
            actual: body.len(),
        });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j, NO_COLOR));
            }
            k += 1;
        }
    }
    Ok(LineGraph::from_edges(n, edges, Vec::new()).expect("graph6 describes a simple graph"))
}

/// DOT text with vertex labels `l_i` and the special line of each edge as
/// its `special` attribute.
pub fn to_dot(g: &LineGraph, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph \"{}\" {{", name.replace('"', "\\\""));
    for v in 0..g.num_vertices() {
        let _ = writeln!(s, "  {v} [label=\"l_{v}\"];");
    }
    for (u, v, c) in g.edges() {
        match g.color_names().get(c as usize) {
            Some(cname) => {
                let _ = writeln!(s, "  {u} -- {v} [special=\"{cname}\", label=\"{cname}\"];");
            }
            None => {
                let _ = writeln!(s, "  {u} -- {v};");
            }
        }
    }
    s.push_str("}\n");
    s
}
