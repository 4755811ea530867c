//! Text and JSON graph documents.
//!
//! Graph Text Format (GTF) is line oriented:
//!
//! ```text
//! # comment
//! vertex v1
//! vertex v2
//! edge e v1 v2        # one named edge
//! edges v1 v1 2       # two edges named v1__v1__1, v1__v1__2
//! ```
//!
//! Vertices must be declared before use anywhere in the file; declaration
//! order fixes vertex order. The JSON form is
//! `{"vertices": [..], "edges": [{"id", "source", "range"}, ..]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, VertexId};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn token<T>(line: usize, raw: &str, make: fn(String) -> Result<T>) -> Result<T> {
    make(raw.to_string()).map_err(|_| parse_err(line, format!("invalid name `{raw}`")))
}

pub fn parse_gtf(text: &str) -> Result<Graph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or_default();
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["vertex", name] => vertices.push(token(line, name, VertexId::new)?),
            ["edge", id, s, r] => edges.push(Edge::new(
                token(line, id, EdgeId::new)?,
                token(line, s, VertexId::new)?,
                token(line, r, VertexId::new)?,
            )),
            ["edges", s, r, k] => {
                let k: u64 = k
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad edge count `{k}`")))?;
                let source = token(line, s, VertexId::new)?;
                let range = token(line, r, VertexId::new)?;
                for j in 1..=k {
                    edges.push(Edge::new(
                        token(line, &format!("{s}__{r}__{j}"), EdgeId::new)?,
                        source.clone(),
                        range.clone(),
                    ));
                }
            }
            [keyword, ..] if ["vertex", "edge", "edges"].contains(keyword) => {
                return Err(parse_err(
                    line,
                    format!("wrong number of fields for `{keyword}`"),
                ));
            }
            [keyword, ..] => return Err(parse_err(line, format!("unknown directive `{keyword}`"))),
        }
    }
    Graph::new(vertices, edges)
}

/// Canonical GTF: one `vertex` line per vertex, then one `edge` line per edge.
pub fn serialize_gtf(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for e in g.edges() {
        out.push_str(&format!("edge {} {} {}\n", e.id, e.source, e.range));
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    Graph::new(doc.vertices, doc.edges)
}

pub fn serialize_json(g: &Graph) -> String {
    let doc = GraphDocument {
        vertices: g.vertices().to_vec(),
        edges: g.edges().to_vec(),
    };
    serde_json::to_string_pretty(&doc).expect("graph documents always serialize")
}

/// Parses JSON when the first non-blank character is `{`, GTF otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_gtf(text)
    }
}
