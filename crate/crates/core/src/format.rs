//! Arc-list text format.
//!
//! Comment lines start with `#`. The first non-comment line is `n m`,
//! followed by exactly `m` lines `u v` with 0-based endpoints. Parsing is
//! strict: bad counts, extra tokens or trailing non-comment content are
//! errors.

use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub fn parse_arc_list(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 0, message: "missing 'n m' header".into() })?;
    let mut it = header.split_whitespace();
    let n = parse_field(it.next(), line_no, "n")?;
    let m = parse_field(it.next(), line_no, "m")?;
    if it.next().is_some() {
        return Err(Error::Parse { line: line_no, message: "header has extra tokens".into() });
    }

    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("expected {m} arc lines, file ended early"),
        })?;
        let mut it = line.split_whitespace();
        let u = parse_field(it.next(), line_no, "u")?;
        let v = parse_field(it.next(), line_no, "v")?;
        if it.next().is_some() {
            return Err(Error::Parse { line: line_no, message: "arc line has extra tokens".into() });
        }
        arcs.push((u, v));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse { line: line_no, message: "trailing content after arc list".into() });
    }
    Digraph::build(n, &arcs)
}

fn parse_field(tok: Option<&str>, line: usize, name: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse { line, message: format!("missing field '{name}'") })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("field '{name}' is not a non-negative integer: {tok:?}"),
    })
}

/// Writes the digraph back out in the same format, arcs sorted ascending.
pub fn write_arc_list(d: &Digraph) -> String {
    let mut out = format!("{} {}\n", d.vertex_count(), d.arc_count());
    for &(u, v) in d.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
