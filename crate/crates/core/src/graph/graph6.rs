//! graph6 encoding (header-less variant).
//!
//! Format: order N(n) followed by the upper triangle of the adjacency matrix,
//! column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed six bits per
//! byte, each byte offset by 63.

use thiserror::Error;

use super::{Graph, DEFAULT_MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    OutOfRangeChar { offset: usize, byte: u8 },
    #[error("graph6 body too short: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after graph6 body")]
    TrailingBytes(usize),
    #[error("order {order} exceeds the vertex cap {cap}")]
    OrderExceedsCap { order: usize, cap: usize },
    #[error("nonzero padding bits in final graph6 byte")]
    NonzeroPadding,
}

pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    from_graph6_with_cap(text, DEFAULT_MAX_ORDER)
}

pub fn from_graph6_with_cap(text: &str, cap: usize) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::OutOfRangeChar { offset, byte });
        }
    }
    let (n, header_len) = decode_order(bytes)?;
    if n > cap {
        return Err(Graph6Error::OrderExceedsCap { order: n, cap });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() < body_len {
        return Err(Graph6Error::Truncated { expected: body_len, found: body.len() });
    }
    if body.len() > body_len {
        return Err(Graph6Error::TrailingBytes(body.len() - body_len));
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices below n");
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[body_len - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(g)
}

fn decode_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let group = |s: &[u8]| s.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match bytes {
        [] => Err(Graph6Error::MalformedHeader),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Graph6Error::MalformedHeader);
            }
            let n = group(&rest[..6]);
            if n <= 258_047 {
                return Err(Graph6Error::MalformedHeader);
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::MalformedHeader);
            }
            let n = group(&rest[..3]);
            if n <= 62 {
                return Err(Graph6Error::MalformedHeader);
            }
            Ok((n, 4))
        }
        [b, ..] => Ok(((b - 63) as usize, 1)),
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ascii")
}
