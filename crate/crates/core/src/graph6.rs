//! graph6 encoding: size header `N(n)`, then the upper triangle
//! `x(0,1), x(0,2), x(1,2), x(0,3), ...` packed big-endian into 6-bit groups,
//! zero padded, each group offset by 63.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

const BIAS: u8 = 63;
const LONG: u8 = 126;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else if n < 258_048 {
        out.push(LONG);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(LONG);
        out.push(LONG);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Returns `(n, header_len)`.
fn decode_size(s: &[u8]) -> Result<(usize, usize)> {
    let group = |b: u8| -> Result<usize> {
        if !(BIAS..=LONG).contains(&b) {
            return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
        }
        Ok((b - BIAS) as usize)
    };
    let read = |bytes: &[u8]| -> Result<usize> {
        bytes.iter().try_fold(0usize, |acc, &b| Ok((acc << 6) | group(b)?))
    };
    match s {
        [] => Err(Error::Graph6("empty input".into())),
        [LONG, LONG, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated size header".into()));
            }
            Ok((read(&rest[..6])?, 8))
        }
        [LONG, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated size header".into()));
            }
            Ok((read(&rest[..3])?, 4))
        }
        [b, ..] => Ok((group(*b)?, 1)),
    }
}

pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    out
}

pub fn encode_string(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 is ASCII")
}

pub fn decode(s: &[u8]) -> Result<Graph> {
    let (n, hdr) = decode_size(s)?;
    let body = &s[hdr..];
    let nbits = n * n.saturating_sub(1) / 2;
    let expect = nbits.div_ceil(6);
    if body.len() < expect {
        return Err(Error::Graph6(format!(
            "truncated body: expected {expect} bytes, got {}",
            body.len()
        )));
    }
    if body.len() > expect {
        return Err(Error::Graph6(format!(
            "trailing data: expected {expect} bytes, got {}",
            body.len()
        )));
    }
    let mut b = GraphBuilder::new(n).map_err(|e| Error::Graph6(e.to_string()))?;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if !(BIAS..=LONG).contains(&byte) {
                return Err(Error::Graph6(format!("byte {byte} outside 63..=126")));
            }
            if (byte - BIAS) >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if let Some(&last) = body.last() {
        if !(BIAS..=LONG).contains(&last) {
            return Err(Error::Graph6(format!("byte {last} outside 63..=126")));
        }
        let pad = expect * 6 - nbits;
        if pad > 0 && (last - BIAS) & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(b.build())
}

pub fn decode_str(s: &str) -> Result<Graph> {
    decode(s.as_bytes())
}

/// Reads one graph per non-empty line. An optional `>>graph6<<` header on
/// the first line is skipped.
pub fn read_all<R: BufRead>(r: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Graph6(e.to_string()))?;
        let mut line = line.trim();
        if lineno == 0 {
            line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        }
        if line.is_empty() {
            continue;
        }
        out.push(decode_str(line).map_err(|e| match e {
            Error::Graph6(m) => Error::Graph6(format!("line {}: {m}", lineno + 1)),
            other => other,
        })?);
    }
    Ok(out)
}

pub fn write_all<W: Write>(mut w: W, graphs: &[Graph]) -> std::io::Result<()> {
    for g in graphs {
        w.write_all(&encode(g))?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
