//! Text formats for graphs and matchings.
//!
//! Graph files are UTF-8 lines. Lines starting with `#` are ignored. The first
//! data line is `<n> <m>`, followed by exactly `m` lines `<u> <v>` with
//! `0 <= u, v < n`, `u != v`, each undirected edge listed once. Matching files
//! hold one `<u> <v>` line per edge.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Matching, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: expected two non-negative integers, found {text:?}")]
    BadLine { line: usize, text: String },
    #[error("header declares {expected} edges but {found} were listed")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn pair(line: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let bad = || ParseError::BadLine {
        line,
        text: text.to_string(),
    };
    let mut it = text.split_whitespace();
    let a = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    let b = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = data_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = pair(line, header)?;
    let edges = lines
        .map(|(line, l)| pair(line, l))
        .collect::<Result<Vec<_>, _>>()?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, &edges)?)
}

/// Serializes with edges sorted by `(min, max)`. Graphs whose ids are not
/// exactly `0..n` are relabeled in id order, and a `# ids:` comment records the
/// original id of each label.
pub fn format_graph(g: &Graph) -> String {
    let dense = g.vertices().iter().enumerate().all(|(i, &v)| i == v);
    let mut out = String::new();
    let owned;
    let g = if dense {
        g
    } else {
        let (compact, ids) = g.compact();
        let ids: Vec<String> = ids.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "# ids: {}", ids.join(" "));
        owned = compact;
        &owned
    };
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_matching(text: &str) -> Result<Matching, ParseError> {
    let edges: Vec<(VertexId, VertexId)> = data_lines(text)
        .map(|(line, l)| pair(line, l))
        .collect::<Result<_, _>>()?;
    Ok(Matching::new(edges))
}

pub fn format_matching(m: &Matching) -> String {
    m.edges()
        .iter()
        .map(|(u, v)| format!("{u} {v}\n"))
        .collect()
}
