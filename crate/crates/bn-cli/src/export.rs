//! Graph export as JSON and DOT, and JSON import for round trips.

use std::fmt::Write;

use bn_core::graph::LabeledGraph;
use serde::{Deserialize, Serialize};

#[derive(Serialize)]
struct GraphDocRef<'a, P: Serialize> {
    kind: &'a str,
    vertex_count: usize,
    edge_count: usize,
    vertices: &'a [bn_core::graph::Vertex<P>],
    edges: &'a [(usize, usize)],
}

#[derive(Deserialize)]
struct GraphDoc {
    kind: String,
    vertex_count: usize,
    edge_count: usize,
    vertices: Vec<VertexDoc>,
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct VertexDoc {
    id: usize,
    label: String,
    genus: Option<u8>,
    payload: serde_json::Value,
}

/// Pretty JSON with keys in schema order.
pub fn graph_to_json<P: Serialize>(g: &LabeledGraph<P>) -> String {
    let doc = GraphDocRef {
        kind: &g.kind,
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        vertices: g.vertices(),
        edges: g.edges(),
    };
    serde_json::to_string_pretty(&doc).expect("graph documents serialize")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT; elliptic vertices are double circles.
pub fn graph_to_dot<P>(g: &LabeledGraph<P>) -> String {
    let mut out = String::new();
    let name: String = g.kind.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    writeln!(out, "graph {name} {{").unwrap();
    for v in g.vertices() {
        let shape = if v.genus == Some(1) { " shape=doublecircle" } else { "" };
        writeln!(out, "  v{} [label=\"{}\"{shape}];", v.id, escape(&v.label)).unwrap();
    }
    for &(a, b) in g.edges() {
        writeln!(out, "  v{a} -- v{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Parse a JSON export back into a graph, checking the counts and ids.
pub fn graph_from_json(text: &str) -> Result<LabeledGraph<serde_json::Value>, String> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if doc.vertex_count != doc.vertices.len() || doc.edge_count != doc.edges.len() {
        return Err("counts do not match the lists".into());
    }
    if doc.vertices.iter().enumerate().any(|(i, v)| v.id != i) {
        return Err("vertex ids must be 0..n in order".into());
    }
    let n = doc.vertices.len();
    if doc.edges.iter().any(|&(a, b)| a == b || a >= n || b >= n) {
        return Err("bad edge".into());
    }
    let vertices = doc.vertices.into_iter().map(|v| (v.label, v.genus, v.payload)).collect();
    Ok(LabeledGraph::new(&doc.kind, vertices, doc.edges))
}
