//! Line-oriented graph text format and the structured JSON alternative.
//!
//! ```text
//! # comment
//! vertex v1
//! vertex v2
//! edge v1 v2 3          # three parallel edges v1_v2_1 … v1_v2_3
//! edge-label f v2 v1    # one edge named f
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{auto_label, from_adjacency, Graph, GraphBuilder, VertexId};
use crate::error::GraphError;

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> GraphError {
    GraphError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the text format. Vertices and edges keep declaration order.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut b = GraphBuilder::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        if keyword.starts_with('#') {
            continue;
        }
        // trailing comments
        let toks: Vec<(usize, &str)> = toks
            .iter()
            .copied()
            .take_while(|(_, t)| !t.starts_with('#'))
            .collect();
        let end_col = raw.chars().count() + 1;
        let lookup =
            |b: &GraphBuilder, (_, label): (usize, &str)| -> Result<VertexId, GraphError> {
                b.vertex(label).ok_or_else(|| GraphError::UndeclaredVertex {
                    line,
                    label: label.to_string(),
                })
            };
        match keyword {
            "vertex" => {
                if toks.len() != 2 {
                    let c = toks.get(2).map_or(end_col, |t| t.0);
                    return Err(syntax(line, c, "expected `vertex <label>`"));
                }
                b.add_vertex(toks[1].1).map_err(|e| with_line(e, line))?;
            }
            "edge" => {
                if !(3..=4).contains(&toks.len()) {
                    let c = toks.get(4).map_or(end_col, |t| t.0);
                    return Err(syntax(
                        line,
                        c,
                        "expected `edge <src> <dst> [<multiplicity>]`",
                    ));
                }
                let s = lookup(&b, toks[1])?;
                let t = lookup(&b, toks[2])?;
                let k = match toks.get(3) {
                    None => 1,
                    Some(&(c, m)) => match m.parse::<usize>() {
                        Ok(k) if k >= 1 => k,
                        _ => return Err(syntax(line, c, "multiplicity must be an integer >= 1")),
                    },
                };
                b.add_edges(s, t, k).map_err(|e| with_line(e, line))?;
            }
            "edge-label" => {
                if toks.len() != 4 {
                    let c = toks.get(4).map_or(end_col, |t| t.0);
                    return Err(syntax(line, c, "expected `edge-label <name> <src> <dst>`"));
                }
                let s = lookup(&b, toks[2])?;
                let t = lookup(&b, toks[3])?;
                b.add_edge(toks[1].1, s, t)
                    .map_err(|e| with_line(e, line))?;
            }
            other => {
                return Err(syntax(line, col, format!("unknown directive {other:?}")));
            }
        }
    }
    b.build()
}

fn with_line(e: GraphError, line: usize) -> GraphError {
    match e {
        GraphError::DuplicateVertex { label, .. } => GraphError::DuplicateVertex { line, label },
        GraphError::DuplicateEdge { label, .. } => GraphError::DuplicateEdge { line, label },
        other => other,
    }
}

/// Canonical text form. Runs of automatically named parallel edges are
/// folded back into `edge <src> <dst> <k>`; other edges use `edge-label`.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for label in g.vertex_labels() {
        let _ = writeln!(out, "vertex {label}");
    }
    let mut counter: HashMap<(usize, usize), usize> = HashMap::new();
    let mut run: Option<((usize, usize), usize)> = None;
    let flush = |out: &mut String, run: &mut Option<((usize, usize), usize)>| {
        if let Some(((s, t), k)) = run.take() {
            let (s, t) = (&g.vertex_labels()[s], &g.vertex_labels()[t]);
            if k == 1 {
                let _ = writeln!(out, "edge {s} {t}");
            } else {
                let _ = writeln!(out, "edge {s} {t} {k}");
            }
        }
    };
    for e in g.edges() {
        let pair = (e.source.0, e.target.0);
        let next = counter.get(&pair).copied().unwrap_or(0) + 1;
        let expected = auto_label(g.vertex_label(e.source), g.vertex_label(e.target), next);
        if e.label == expected {
            counter.insert(pair, next);
            match &mut run {
                Some((p, k)) if *p == pair => *k += 1,
                _ => {
                    flush(&mut out, &mut run);
                    run = Some((pair, 1));
                }
            }
        } else {
            flush(&mut out, &mut run);
            let _ = writeln!(
                out,
                "edge-label {} {} {}",
                e.label,
                g.vertex_label(e.source),
                g.vertex_label(e.target)
            );
        }
    }
    flush(&mut out, &mut run);
    out
}

/// `{"vertices": [...], "adjacency": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredGraph {
    pub vertices: Vec<String>,
    pub adjacency: Vec<Vec<u64>>,
}

impl From<&Graph> for StructuredGraph {
    fn from(g: &Graph) -> Self {
        let a = g.adjacency_matrix();
        StructuredGraph {
            vertices: g.vertex_labels().to_vec(),
            adjacency: a
                .to_rows()
                .into_iter()
                .map(|r| {
                    r.iter()
                        .map(|x| u64::try_from(x).expect("edge count"))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Parses the structured JSON form; edges are named automatically.
pub fn parse_structured(text: &str) -> Result<Graph, GraphError> {
    let s: StructuredGraph =
        serde_json::from_str(text).map_err(|e| GraphError::Structured(e.to_string()))?;
    if s.vertices.is_empty() {
        return Err(GraphError::NoVertices);
    }
    from_adjacency(&s.vertices, &s.adjacency)
}

impl std::str::FromStr for Graph {
    type Err = GraphError;

    /// Accepts either the text format or, when the first non-blank
    /// character is `{`, the structured JSON form.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text.trim_start().starts_with('{') {
            parse_structured(text)
        } else {
            parse_graph(text)
        }
    }
}
