//! A small simple-graph type whose vertices carry a canonical label, an
//! optional genus tag and an arbitrary payload.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Vertex<P> {
    pub id: usize,
    /// Canonical key as a string; unique within a graph.
    pub label: String,
    /// 1 for elliptic, 0 for rational, `None` when not meaningful.
    pub genus: Option<u8>,
    pub payload: P,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledGraph<P> {
    pub kind: String,
    vertices: Vec<Vertex<P>>,
    edges: Vec<(usize, usize)>,
}

impl<P> LabeledGraph<P> {
    /// Vertices get ids in the given order. Edges are normalized and sorted.
    ///
    /// Panics on loops, repeated edges, dangling endpoints or repeated labels,
    /// since builders only ever produce simple graphs.
    pub fn new(kind: &str, vertices: Vec<(String, Option<u8>, P)>, edges: Vec<(usize, usize)>) -> Self {
        let n = vertices.len();
        let vertices: Vec<Vertex<P>> = vertices
            .into_iter()
            .enumerate()
            .map(|(id, (label, genus, payload))| Vertex { id, label, genus, payload })
            .collect();
        let labels: BTreeSet<&str> = vertices.iter().map(|v| v.label.as_str()).collect();
        assert_eq!(labels.len(), n, "vertex labels must be unique");
        let mut norm: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a != b, "loop at vertex {a}");
                assert!(a < n && b < n, "edge ({a},{b}) out of range");
                (a.min(b), a.max(b))
            })
            .collect();
        norm.sort_unstable();
        let before = norm.len();
        norm.dedup();
        assert_eq!(before, norm.len(), "parallel edges");
        LabeledGraph { kind: kind.to_string(), vertices, edges: norm }
    }

    pub fn vertices(&self) -> &[Vertex<P>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    /// Labels with genus tags, and edges written as label pairs.
    pub fn labeled_structure(&self) -> (BTreeMap<String, Option<u8>>, BTreeSet<(String, String)>) {
        let verts = self.vertices.iter().map(|v| (v.label.clone(), v.genus)).collect();
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.vertices[a].label.clone(), self.vertices[b].label.clone());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        (verts, edges)
    }

    /// Equality as labeled graphs: same labels, same genus tags, same edges between labels.
    pub fn same_labeled_graph<Q>(&self, other: &LabeledGraph<Q>) -> bool {
        self.labeled_structure() == other.labeled_structure()
    }

    pub fn map_payload<Q>(self, mut f: impl FnMut(P) -> Q) -> LabeledGraph<Q> {
        LabeledGraph {
            kind: self.kind,
            vertices: self
                .vertices
                .into_iter()
                .map(|v| Vertex { id: v.id, label: v.label, genus: v.genus, payload: f(v.payload) })
                .collect(),
            edges: self.edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(labels: &[&str]) -> LabeledGraph<()> {
        let v = labels.iter().map(|l| (l.to_string(), None, ())).collect();
        let e = (1..labels.len()).map(|i| (i, i - 1)).collect();
        LabeledGraph::new("path", v, e)
    }

    #[test]
    fn edges_are_normalized() {
        let g = path(&["a", "b", "c"]);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert!(g.is_connected());
    }

    #[test]
    fn labeled_equality_ignores_ids() {
        let a = path(&["a", "b", "c"]);
        let b = LabeledGraph::new(
            "other",
            vec![("c".into(), None, 1), ("b".into(), None, 2), ("a".into(), None, 3)],
            vec![(0, 1), (2, 1)],
        );
        assert!(a.same_labeled_graph(&b));
        assert!(!a.same_labeled_graph(&path(&["a", "c", "b"])));
    }

    #[test]
    fn disconnected_graph() {
        let g = LabeledGraph::new("x", vec![("a".into(), None, ()), ("b".into(), None, ())], vec![]);
        assert!(!g.is_connected());
    }

    #[test]
    #[should_panic(expected = "parallel")]
    fn parallel_edges_panic() {
        let v = vec![("a".into(), None, ()), ("b".into(), None, ())];
        LabeledGraph::new("x", v, vec![(0, 1), (1, 0)]);
    }
}
