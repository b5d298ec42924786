//! Text edge-list format.
//!
//! ```text
//! blockham v1 k=2 sizes=3,2
//! 0 1
//! 1 3
//! ```
//!
//! The header is the first significant line. Each following line holds one
//! edge `u v` with `u < v`, 0-indexed. Blank lines and lines starting with
//! `#` are ignored. The writer emits edges in lexicographic order.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{BlockPartition, BlockedGraph};

/// Largest vertex count accepted from text.
pub const MAX_VERTICES: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn parse_header(line_no: usize, line: &str) -> Result<BlockPartition, ParseError> {
    let mut fields = line.split_whitespace();
    if fields.next() != Some("blockham") || fields.next() != Some("v1") {
        return Err(err(line_no, "expected header `blockham v1 k=<k> sizes=<n1,...>`"));
    }
    let mut k = None;
    let mut sizes = None;
    for field in fields {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(line_no, format!("malformed header field `{field}`")))?;
        match key {
            "k" => {
                let v: usize =
                    value.parse().map_err(|_| err(line_no, format!("bad block count `{value}`")))?;
                k = Some(v);
            }
            "sizes" => {
                let parsed: Result<Vec<usize>, _> = value.split(',').map(str::parse).collect();
                sizes = Some(
                    parsed.map_err(|_| err(line_no, format!("bad size list `{value}`")))?,
                );
            }
            other => return Err(err(line_no, format!("unknown header key `{other}`"))),
        }
    }
    let k = k.ok_or_else(|| err(line_no, "header lacks k="))?;
    let sizes = sizes.ok_or_else(|| err(line_no, "header lacks sizes="))?;
    if sizes.len() != k {
        return Err(err(line_no, format!("k={k} but {} sizes given", sizes.len())));
    }
    let total = sizes.iter().try_fold(0usize, |acc, &s| acc.checked_add(s));
    if total.is_none_or(|t| t > MAX_VERTICES) {
        return Err(err(line_no, format!("more than {MAX_VERTICES} vertices")));
    }
    BlockPartition::new(sizes).map_err(|e| err(line_no, e.to_string()))
}

fn parse_vertex(line_no: usize, token: Option<&str>, n: usize) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| err(line_no, "expected two vertex indices"))?;
    let v: usize = token.parse().map_err(|_| err(line_no, format!("bad vertex `{token}`")))?;
    if v >= n {
        return Err(err(line_no, format!("vertex {v} out of range for n = {n}")));
    }
    Ok(v)
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edge_list(text: &str) -> Result<BlockedGraph, ParseError> {
    let mut lines = significant_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let partition = parse_header(hline, header)?;
    let n = partition.n();
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (line_no, line) in lines {
        let mut tokens = line.split_whitespace();
        let u = parse_vertex(line_no, tokens.next(), n)?;
        let v = parse_vertex(line_no, tokens.next(), n)?;
        if tokens.next().is_some() {
            return Err(err(line_no, "trailing tokens after edge"));
        }
        if u >= v {
            return Err(err(line_no, format!("edge `{u} {v}` must satisfy u < v")));
        }
        if !seen.insert((u, v)) {
            return Err(err(line_no, format!("duplicate edge `{u} {v}`")));
        }
        edges.push((u, v));
    }
    Ok(BlockedGraph::from_unique_edges(partition, &edges))
}

pub fn header_line(partition: &BlockPartition) -> String {
    let sizes: Vec<String> = partition.sizes().iter().map(usize::to_string).collect();
    format!("blockham v1 k={} sizes={}", partition.k(), sizes.join(","))
}

pub fn to_edge_list(graph: &BlockedGraph) -> String {
    let mut out = header_line(graph.partition());
    out.push('\n');
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_edge_list(path: impl AsRef<Path>) -> std::io::Result<Result<BlockedGraph, ParseError>> {
    Ok(parse_edge_list(&std::fs::read_to_string(path)?))
}

pub fn write_edge_list(graph: &BlockedGraph, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, to_edge_list(graph))
}
