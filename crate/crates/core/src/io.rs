//! Graph serialization: role-annotated JSON (round-trips), DOT and edge
//! lists (export; edge lists can also be read back without roles).

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{DiGraph, GraphBuilder, GraphError, Part, Role};
use crate::vset::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    EdgeList,
}

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    id: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    role: Option<Role>,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    edges: Vec<(VertexId, VertexId)>,
}

pub fn encode(g: &DiGraph, format: Format) -> String {
    match format {
        Format::Json => to_json(g),
        Format::Dot => to_dot(g),
        Format::EdgeList => to_edge_list(g),
    }
}

pub fn decode(text: &str, format: Format) -> Result<DiGraph, GraphError> {
    match format {
        Format::Json => from_json(text),
        Format::EdgeList => from_edge_list(text),
        Format::Dot => Err(GraphError::Parse {
            offset: 0,
            message: "DOT is export-only".into(),
        }),
    }
}

pub fn json_value(g: &DiGraph) -> serde_json::Value {
    serde_json::to_value(json_graph(g)).expect("graph serializes")
}

fn json_graph(g: &DiGraph) -> JsonGraph {
    JsonGraph {
        vertices: g
            .vertices()
            .map(|v| JsonVertex {
                id: v,
                name: g.name(v).map(str::to_owned),
                role: g.role(v).cloned(),
            })
            .collect(),
        edges: g.edges().collect(),
    }
}

pub fn to_json(g: &DiGraph) -> String {
    serde_json::to_string(&json_graph(g)).expect("graph serializes")
}

/// Converts a serde_json line/column into a byte offset of `text`.
pub(crate) fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text
        .split_inclusive('\n')
        .take(line - 1)
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

pub(crate) fn json_error(text: &str, e: serde_json::Error) -> GraphError {
    GraphError::Parse {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    }
}

pub fn from_json(text: &str) -> Result<DiGraph, GraphError> {
    let jg: JsonGraph = serde_json::from_str(text).map_err(|e| json_error(text, e))?;
    from_json_graph(jg)
}

pub fn from_json_value(v: serde_json::Value) -> Result<DiGraph, GraphError> {
    let jg: JsonGraph = serde_json::from_value(v).map_err(|e| GraphError::Parse {
        offset: 0,
        message: e.to_string(),
    })?;
    from_json_graph(jg)
}

fn from_json_graph(mut jg: JsonGraph) -> Result<DiGraph, GraphError> {
    jg.vertices.sort_by_key(|v| v.id);
    let mut b = GraphBuilder::new();
    for (i, v) in jg.vertices.into_iter().enumerate() {
        if v.id != i {
            return Err(GraphError::Parse {
                offset: 0,
                message: format!("vertex ids must be 0..n without gaps; found {} at {i}", v.id),
            });
        }
        b.add_vertex(v.name, v.role);
    }
    for (u, v) in jg.edges {
        b.add_edge(u, v)?;
    }
    Ok(b.build())
}

fn role_color(role: &Role) -> &'static str {
    match role.part {
        Part::M => "steelblue",
        Part::D => "lightblue",
        Part::A => "orange",
        Part::B { .. } => "gold",
        Part::C { .. } => "palegreen",
        Part::Connector { .. } => "pink",
        Part::Hub => "gray",
        Part::Clause { .. } => "plum",
        Part::Base => "white",
    }
}

pub fn to_dot(g: &DiGraph) -> String {
    let mut s = String::from("digraph G {\n");
    for v in g.vertices() {
        let label = g.label(v).replace('"', "\\\"");
        match g.role(v) {
            Some(r) => {
                let _ = writeln!(
                    s,
                    "  {v} [label=\"{label}\", style=filled, fillcolor={}, tooltip=\"level {}\"];",
                    role_color(r),
                    r.level
                );
            }
            None => {
                let _ = writeln!(s, "  {v} [label=\"{label}\"];");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -> {v};");
    }
    s.push_str("}\n");
    s
}

/// One `u v` line per arc using vertex labels; isolated vertices appear
/// alone on a line.
pub fn to_edge_list(g: &DiGraph) -> String {
    let mut lines = Vec::new();
    for v in g.vertices() {
        if g.successors(v).is_empty() && g.predecessors(v).is_empty() {
            lines.push(g.label(v));
        }
    }
    for (u, v) in g.edges() {
        lines.push(format!("{} {}", g.label(u), g.label(v)));
    }
    lines.join("\n")
}

/// Reads an edge list; vertices are numbered by first appearance.
pub fn from_edge_list(text: &str) -> Result<DiGraph, GraphError> {
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut b = GraphBuilder::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let mut id = |b: &mut GraphBuilder, t: &str| {
            *ids.entry(t.to_owned())
                .or_insert_with(|| b.add_vertex(Some(t.to_owned()), None))
        };
        match toks.as_slice() {
            [] => {}
            [a] => {
                id(&mut b, a);
            }
            [a, c] => {
                let (u, v) = (id(&mut b, a), id(&mut b, c));
                b.add_edge(u, v).map_err(|e| GraphError::Parse {
                    offset,
                    message: e.to_string(),
                })?;
            }
            _ => {
                return Err(GraphError::Parse {
                    offset,
                    message: "expected `u v`".into(),
                })
            }
        }
        offset += line.len();
    }
    Ok(b.build())
}
