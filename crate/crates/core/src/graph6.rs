//! graph6 codec (upper triangle, column-major, six bits per printable byte).

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + BIAS) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + BIAS) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + BIAS) as char);
    }
    out
}

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 line. Trailing newline and the optional `>>graph6<<`
/// header are tolerated; anything else malformed reports its byte offset.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let (base, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    if let Some(pos) = body.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(err(base + pos, format!("illegal byte 0x{:02x}", body[pos])));
    }
    let Some(&first) = body.first() else {
        return Err(err(base, "empty line"));
    };
    let (n, header_len) = if first != b'~' {
        ((first - BIAS) as usize, 1)
    } else {
        if body.get(1) == Some(&b'~') {
            return Err(err(base + 1, "order needs the 8-byte form, above 64"));
        }
        if body.len() < 4 {
            return Err(err(base + body.len(), "truncated length header"));
        }
        let n = body[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
        if n <= 62 {
            return Err(err(base, format!("order {n} must use the short header")));
        }
        (n, 4)
    };
    if n == 0 {
        return Err(err(base, "order 0 is not supported"));
    }
    if n > MAX_ORDER {
        return Err(err(base, format!("order {n} exceeds {MAX_ORDER}")));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() != expected {
        return Err(err(
            base + header_len + data.len().min(expected),
            format!("expected {expected} data bytes for order {n}, found {}", data.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge_mut(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[expected - 1] - BIAS;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(base + header_len + expected - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}
