//! Text formats for graphs.
//!
//! The native format is a header line `n m` followed by `m` lines `u v` with
//! 0-based ids; lines starting with `#` are comments. DIMACS `.col` files
//! (`p edge n m`, `e u v` with 1-based ids, `c` comments) are also read.

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::graph::{Graph, Vertex};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

/// Parses the native `n m` / `u v` edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header line"))?;
    let mut toks = header.split_whitespace();
    let n = parse_num(toks.next(), hline, "vertex count")?;
    let m = parse_num(toks.next(), hline, "edge count")?;
    if toks.next().is_some() {
        return Err(parse_err(hline, "header must be 'n m'"));
    }

    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let mut toks = line.split_whitespace();
        let u = parse_num(toks.next(), lineno, "endpoint")?;
        let v = parse_num(toks.next(), lineno, "endpoint")?;
        if toks.next().is_some() {
            return Err(parse_err(lineno, "edge line must be 'u v'"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            hline,
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    Graph::from_edge_list(n, &edges)
}

/// Parses a DIMACS `.col` graph.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut n = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err(lineno, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(parse_err(
                            lineno,
                            format!("unsupported problem type {other:?}"),
                        ))
                    }
                }
                n = Some(parse_num(toks.next(), lineno, "vertex count")?);
                parse_num(toks.next(), lineno, "edge count")?;
            }
            Some("e") => {
                if n.is_none() {
                    return Err(parse_err(lineno, "edge before problem line"));
                }
                let u = parse_num(toks.next(), lineno, "endpoint")?;
                let v = parse_num(toks.next(), lineno, "endpoint")?;
                if u == 0 || v == 0 {
                    return Err(parse_err(lineno, "DIMACS ids are 1-based"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(tok) => return Err(parse_err(lineno, format!("unknown line type '{tok}'"))),
            None => {}
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing problem line"))?;
    Graph::from_edge_list(n, &edges)
}

/// Parses either format, choosing DIMACS when a `p` line appears before any
/// other content line.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'));
    match first {
        Some(l) if l.starts_with('p') => parse_dimacs(text),
        _ => parse_edge_list(text),
    }
}

/// Writes the native edge-list format, edges in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
