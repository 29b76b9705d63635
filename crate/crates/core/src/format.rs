//! The BBD text format.
//!
//! ```text
//! a 2
//! 10
//! 01
//!
//! 10
//! 01
//! ```
//!
//! The first block holds the `x_i -> y_j` rows, the second the `y_i -> x_j`
//! rows. Every line, including the last, ends in `\n`.

use std::fmt::Write as _;

use crate::digraph::{BalancedBipartiteDigraph, VertexRef};
use crate::error::{Error, Result};

pub fn render(d: &BalancedBipartiteDigraph) -> String {
    let a = d.order();
    let mut out = String::with_capacity((2 * a + 3) * (a + 1));
    writeln!(out, "a {a}").unwrap();
    let block = |out: &mut String, mk: fn(usize) -> VertexRef, to: fn(usize) -> VertexRef| {
        for i in 0..a {
            for j in 0..a {
                out.push(if d.has_arc(mk(i), to(j)) { '1' } else { '0' });
            }
            out.push('\n');
        }
    };
    block(&mut out, VertexRef::x, VertexRef::y);
    out.push('\n');
    block(&mut out, VertexRef::y, VertexRef::x);
    out
}

pub fn parse(text: &str) -> Result<BalancedBipartiteDigraph> {
    let err = |line: usize, message: String| Error::Parse { line, message };

    if !text.ends_with('\n') {
        let last = text.split('\n').count();
        return Err(err(last, "missing trailing newline".into()));
    }
    let lines: Vec<&str> = text[..text.len() - 1].split('\n').collect();

    let header = lines[0];
    let a: usize = header
        .strip_prefix("a ")
        .and_then(|n| {
            // Reject signs, spaces and leading zeros so the format stays bit-exact.
            let canonical = !n.is_empty()
                && n.bytes().all(|b| b.is_ascii_digit())
                && !(n.len() > 1 && n.starts_with('0'));
            canonical.then(|| n.parse().ok()).flatten()
        })
        .ok_or_else(|| err(1, format!("expected header `a <integer>`, found `{header}`")))?;
    if a == 0 || a > crate::digraph::MAX_ORDER {
        return Err(err(
            1,
            format!("order must be in 1..={}, got {a}", crate::digraph::MAX_ORDER),
        ));
    }

    let expected = 2 * a + 2;
    let mut d = BalancedBipartiteDigraph::empty(a)?;
    for (idx, line) in lines.iter().enumerate().skip(1) {
        let lineno = idx + 1;
        if lineno > expected {
            return Err(err(lineno, format!("unexpected extra line (expected {expected} lines)")));
        }
        if lineno == a + 2 {
            if !line.is_empty() {
                return Err(err(lineno, "expected an empty separator line".into()));
            }
            continue;
        }
        let (row, from, to): (usize, fn(usize) -> VertexRef, fn(usize) -> VertexRef) =
            if lineno <= a + 1 {
                (lineno - 2, VertexRef::x, VertexRef::y)
            } else {
                (lineno - a - 3, VertexRef::y, VertexRef::x)
            };
        if line.len() != a {
            return Err(err(
                lineno,
                format!("row has length {}, expected {a}", line.chars().count()),
            ));
        }
        for (j, b) in line.bytes().enumerate() {
            match b {
                b'0' => {}
                b'1' => d.insert_arc(from(row), to(j))?,
                other => {
                    return Err(err(
                        lineno,
                        format!("illegal byte {:?} at column {}", other as char, j + 1),
                    ))
                }
            }
        }
    }
    if lines.len() < expected {
        return Err(err(
            lines.len() + 1,
            format!("file ends after {} lines, expected {expected}", lines.len()),
        ));
    }
    Ok(d)
}
