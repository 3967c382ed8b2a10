//! graph6 encoding (the `nauty` interchange format), restricted to graphs that fit
//! [`SmallGraph`].

use crate::error::{Error, Result};

use super::graph::{SmallGraph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &SmallGraph) -> String {
    let n = g.n();
    let mut out = String::new();
    // n <= 32 always uses the single-byte size form
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub fn from_graph6(text: &str) -> Result<SmallGraph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (offset, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, line),
    };
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(offset + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let (n, header_len) = decode_size(bytes, offset)?;
    if n > MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "graph6 encodes {n} vertices, limit is {MAX_VERTICES}"
        )));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() != expected {
        return Err(Error::parse(
            offset + header_len + data.len().min(expected),
            format!("expected {expected} edge bytes for n={n}, found {}", data.len()),
        ));
    }
    let mut g = SmallGraph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::parse(
                offset + header_len + expected - 1,
                "nonzero padding bits",
            ));
        }
    }
    Ok(g)
}

fn decode_size(bytes: &[u8], offset: usize) -> Result<(usize, usize)> {
    let first = *bytes
        .first()
        .ok_or_else(|| Error::parse(offset, "empty graph6 string"))?;
    if first != 126 {
        return Ok(((first - 63) as usize, 1));
    }
    let wide = bytes.get(1) == Some(&126);
    let (start, len) = if wide { (2, 6) } else { (1, 3) };
    if bytes.len() < start + len {
        return Err(Error::parse(offset + bytes.len(), "truncated size header"));
    }
    let n = bytes[start..start + len]
        .iter()
        .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    Ok((n, start + len))
}

/// Parses one graph per non-empty line.
pub fn read_graph6_lines(text: &str) -> Result<Vec<SmallGraph>> {
    let mut out = Vec::new();
    let mut line_start = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if !trimmed.is_empty() {
            out.push(from_graph6(trimmed).map_err(|e| match e {
                Error::Parse { offset, message } => Error::Parse {
                    offset: line_start + offset,
                    message,
                },
                other => other,
            })?);
        }
        line_start += line.len();
    }
    Ok(out)
}
