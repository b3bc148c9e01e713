//! Edge-list text format and JSON documents.
//!
//! Edge lists are line oriented: `x y` or `x -> y` declares an edge, `node z`
//! declares a (possibly isolated) vertex, and lines starting with `#` are
//! comments. Blank lines are ignored.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{validate_name, Edge, EdgeSet, Graph, GraphBuilder, NODE_KEYWORD};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Splits a non-comment line into tokens, treating `->` as a separator.
pub(crate) fn line_tokens(line: &str) -> Vec<&str> {
    line.split_whitespace()
        .flat_map(|tok| tok.split("->"))
        .filter(|t| !t.is_empty())
        .collect()
}

pub(crate) fn is_skipped(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

fn check_token(lineno: usize, tok: &str) -> Result<()> {
    if tok == NODE_KEYWORD {
        return Err(parse_error(lineno, "`node` cannot be used as an edge endpoint"));
    }
    validate_name(tok).map_err(|_| parse_error(lineno, format!("invalid vertex name `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut builder = GraphBuilder::default();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if is_skipped(line) {
            continue;
        }
        let trimmed = line.trim();
        let arrow = trimmed.contains("->");
        let tokens = line_tokens(trimmed);
        let arrow_ok = !arrow || trimmed.matches("->").count() == 1;
        match tokens.as_slice() {
            [kw, z] if *kw == NODE_KEYWORD && !arrow => {
                check_token(lineno, z)?;
                builder.add_vertex(z)?;
            }
            [x, y] if arrow_ok => {
                check_token(lineno, x)?;
                check_token(lineno, y)?;
                builder.add_edge(x, y)?;
            }
            _ => {
                return Err(parse_error(
                    lineno,
                    format!("expected `x y`, `x -> y` or `node z`, found `{trimmed}`"),
                ))
            }
        }
    }
    Ok(builder.build())
}

/// Edges in lexicographic order, then one `node` line per isolated vertex.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let mut touched = vec![false; g.vertex_count()];
    for &e in g.edges() {
        touched[e.tail.index()] = true;
        touched[e.head.index()] = true;
        let (x, y) = g.edge_names(e);
        out.push_str(x);
        out.push(' ');
        out.push_str(y);
        out.push('\n');
    }
    for v in g.vertices() {
        if !touched[v.index()] {
            out.push_str(NODE_KEYWORD);
            out.push(' ');
            out.push_str(g.name(v));
            out.push('\n');
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgesDoc {
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitioningDoc {
    pub parts: Vec<EdgesDoc>,
}

pub(crate) fn edge_pairs<'a, I>(g: &Graph, edges: I) -> Vec<[String; 2]>
where
    I: IntoIterator<Item = &'a Edge>,
{
    edges
        .into_iter()
        .map(|&e| {
            let (x, y) = g.edge_names(e);
            [x.to_string(), y.to_string()]
        })
        .collect()
}

pub fn graph_doc(g: &Graph) -> GraphDoc {
    GraphDoc {
        vertices: g.vertices().map(|v| g.name(v).to_string()).collect(),
        edges: edge_pairs(g, g.edges()),
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&graph_doc(g)).expect("graph doc serializes")
}

/// Resolves a JSON partitioning document into edge sets of `g`; validation is
/// left to [`crate::validate_partitioning`].
pub fn parse_partitioning_doc(g: &Graph, text: &str) -> Result<Vec<EdgeSet>> {
    let doc: PartitioningDoc =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    doc.parts
        .iter()
        .map(|part| EdgeSet::from_names(g, part.edges.iter().map(|[x, y]| (x.as_str(), y.as_str()))))
        .collect()
}
