//! Text formats.
//!
//! Graphs: the first non-comment line is `n <count>`, followed by one line
//! `u v m` per vertex pair with 0-based indices and multiplicity `m >= 1`.
//! Lines starting with `#` and blank lines are ignored.
//!
//! Divisors: one line of whitespace-separated integers, or a JSON array.

use std::fmt::Write as _;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::Multigraph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(parse_err(lineno, "expected header `n <count>`"));
                }
                n = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| parse_err(lineno, "vertex count is not an integer"))?,
                );
            }
            Some(_) => {
                if fields.len() != 3 {
                    return Err(parse_err(lineno, "expected `u v m`"));
                }
                let num = |s: &str| -> Result<u64> {
                    s.parse().map_err(|_| {
                        parse_err(lineno, format!("`{s}` is not a non-negative integer"))
                    })
                };
                let (u, v, m) = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
                let m =
                    u32::try_from(m).map_err(|_| parse_err(lineno, "multiplicity too large"))?;
                edges.push((u as usize, v as usize, m));
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing header `n <count>`"))?;
    Multigraph::from_edges(n, &edges)
}

pub fn write_graph(g: &Multigraph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v, m) in g.edges() {
        let _ = writeln!(out, "{u} {v} {m}");
    }
    out
}

/// Graphviz rendering; parallel edges are drawn individually.
pub fn write_dot(g: &Multigraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v, m) in g.edges() {
        for _ in 0..m {
            let _ = writeln!(out, "  {u} -- {v};");
        }
    }
    out.push_str("}\n");
    out
}

/// Parses either a JSON array or whitespace-separated integers.
pub fn parse_divisor(text: &str) -> Result<Divisor> {
    let trimmed = text.trim();
    let chips: Vec<i64> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(|e| parse_err(e.line(), e.to_string()))?
    } else {
        let lines: Vec<&str> = trimmed
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.len() != 1 {
            return Err(parse_err(1, "divisor must be a single line of integers"));
        }
        lines[0]
            .split_whitespace()
            .map(|s| {
                s.parse()
                    .map_err(|_| parse_err(1, format!("`{s}` is not an integer")))
            })
            .collect::<Result<_>>()?
    };
    Ok(Divisor::new(chips))
}

pub fn write_divisor(d: &Divisor) -> String {
    let parts: Vec<String> = d.chips().iter().map(i64::to_string).collect();
    parts.join(" ") + "\n"
}
