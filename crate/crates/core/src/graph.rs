//! Finite directed multigraphs with named vertices and edges.
//!
//! A [`Graph`] is immutable once built. Vertex and edge order is the order
//! given at construction and is observable: it fixes the row and column order
//! of every matrix derived from the graph before canonical reordering.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

macro_rules! token_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub struct $name(String);

        impl $name {
            pub fn new(name: impl Into<String>) -> Result<Self> {
                let name = name.into();
                if is_token(&name) {
                    Ok(Self(name))
                } else {
                    Err(Error::InvalidName(name))
                }
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl TryFrom<String> for $name {
            type Error = Error;

            fn try_from(value: String) -> Result<Self> {
                Self::new(value)
            }
        }

        impl From<$name> for String {
            fn from(value: $name) -> String {
                value.0
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }
    };
}

token_type!(
    /// Name of a vertex: a nonempty token of ASCII letters, digits and `_`.
    VertexId
);
token_type!(
    /// Name of an edge, same alphabet as [`VertexId`].
    EdgeId
);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub source: VertexId,
    pub range: VertexId,
}

impl Edge {
    pub fn new(id: EdgeId, source: VertexId, range: VertexId) -> Self {
        Self { id, source, range }
    }
}

/// Where a vertex sits with respect to edge directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    /// Emits no edge but receives at least one.
    Sink,
    /// Receives no edge but emits at least one.
    Source,
    /// Neither emits nor receives.
    Isolated,
    /// Emits and receives.
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexRole {
    pub position: Position,
    /// In a finite graph a vertex is regular exactly when it is not a sink.
    pub regular: bool,
}

/// Vertex permutation placing regular vertices first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalOrder {
    /// `order[i]` is the input index of the vertex placed at position `i`.
    pub order: Vec<usize>,
    /// Number of regular vertices; they occupy positions `0..regular_count`.
    pub regular_count: usize,
}

impl CanonicalOrder {
    /// Inverse permutation: input index to canonical position.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
    // Per edge: endpoint vertex indices.
    src: Vec<usize>,
    dst: Vec<usize>,
    // Per vertex: incident edge indices in edge order.
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, checking that names are unique and every endpoint exists.
    pub fn new(vertices: Vec<VertexId>, edges: Vec<Edge>) -> Result<Self> {
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
        }
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut src = Vec::with_capacity(edges.len());
        let mut dst = Vec::with_capacity(edges.len());
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(Error::DuplicateEdge(e.id.to_string()));
            }
            let s = *vertex_index
                .get(&e.source)
                .ok_or_else(|| Error::DanglingEndpoint(e.source.to_string()))?;
            let r = *vertex_index
                .get(&e.range)
                .ok_or_else(|| Error::DanglingEndpoint(e.range.to_string()))?;
            src.push(s);
            dst.push(r);
            out_edges[s].push(i);
            in_edges[r].push(i);
        }
        Ok(Self {
            vertices,
            edges,
            vertex_index,
            edge_index,
            src,
            dst,
            out_edges,
            in_edges,
        })
    }

    /// Builds a graph from raw names, validating each one.
    ///
    /// ```
    /// use ibn_core::Graph;
    /// let g = Graph::from_names(&["v", "w"], &[("e", "v", "w")]).unwrap();
    /// assert_eq!(g.edge_count(), 1);
    /// ```
    pub fn from_names<V, E>(vertices: &[V], edges: &[(E, V, V)]) -> Result<Self>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let vs = vertices
            .iter()
            .map(|v| VertexId::new(v.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let es = edges
            .iter()
            .map(|(id, s, r)| {
                Ok(Edge::new(
                    EdgeId::new(id.as_ref())?,
                    VertexId::new(s.as_ref())?,
                    VertexId::new(r.as_ref())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vs, es)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, index: usize) -> &VertexId {
        &self.vertices[index]
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        // HashMap<VertexId, _> cannot be queried by &str without a valid token,
        // and invalid tokens are never present anyway.
        VertexId::new(name)
            .ok()
            .and_then(|v| self.vertex_index.get(&v).copied())
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        EdgeId::new(name)
            .ok()
            .and_then(|e| self.edge_index.get(&e).copied())
    }

    pub(crate) fn require_vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub(crate) fn require_edge(&self, name: &str) -> Result<usize> {
        self.edge_index(name)
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.vertex_index(name).is_some()
    }

    pub fn has_edge(&self, name: &str) -> bool {
        self.edge_index(name).is_some()
    }

    /// Source vertex index of edge `e`.
    pub fn source_of(&self, e: usize) -> usize {
        self.src[e]
    }

    /// Range vertex index of edge `e`.
    pub fn range_of(&self, e: usize) -> usize {
        self.dst[e]
    }

    /// Edges emitted by vertex `v`, in edge order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Edges received by vertex `v`, in edge order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_edges[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_edges[v].len()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_degree(v) == 0
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_degree(v) == 0
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.is_sink(v) && self.is_source(v)
    }

    pub fn is_regular(&self, v: usize) -> bool {
        !self.is_sink(v)
    }

    pub fn role(&self, v: usize) -> VertexRole {
        let position = match (self.is_source(v), self.is_sink(v)) {
            (true, true) => Position::Isolated,
            (true, false) => Position::Source,
            (false, true) => Position::Sink,
            (false, false) => Position::Internal,
        };
        VertexRole {
            position,
            regular: self.is_regular(v),
        }
    }

    /// Positional role and regularity of every vertex, in vertex order.
    pub fn vertex_roles(&self) -> Vec<(VertexId, VertexRole)> {
        (0..self.vertex_count())
            .map(|v| (self.vertices[v].clone(), self.role(v)))
            .collect()
    }

    pub fn has_sources(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.is_source(v))
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.is_isolated(v))
    }

    /// Number of edges from vertex `i` to vertex `j`.
    pub fn edge_multiplicity(&self, i: usize, j: usize) -> usize {
        self.out_edges[i]
            .iter()
            .filter(|&&e| self.dst[e] == j)
            .count()
    }

    /// Vertices reachable from `start` by paths of length ≥ 0, as a membership mask.
    pub(crate) fn forward_closure(&self, start: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        for v in start {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &e in &self.out_edges[v] {
                let w = self.dst[e];
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// `v ≥ w`: `v = w` or there is a directed path from `v` to `w`.
    pub fn reaches(&self, v: &str, w: &str) -> Result<bool> {
        let v = self.require_vertex(v)?;
        let w = self.require_vertex(w)?;
        Ok(self.forward_closure([v])[w])
    }

    /// Whether `set` is closed under reachability.
    pub fn is_hereditary<S: AsRef<str>>(&self, set: &[S]) -> Result<bool> {
        let members = self.vertex_set(set)?;
        Ok(self.hereditary_violation(&members).is_none())
    }

    pub(crate) fn vertex_set<S: AsRef<str>>(&self, set: &[S]) -> Result<Vec<bool>> {
        let mut members = vec![false; self.vertex_count()];
        for name in set {
            members[self.require_vertex(name.as_ref())?] = true;
        }
        Ok(members)
    }

    /// An edge `(from, to)` leaving the set, if any. A set is hereditary
    /// exactly when no edge leaves it.
    pub(crate) fn hereditary_violation(&self, members: &[bool]) -> Option<(usize, usize)> {
        (0..self.edge_count())
            .find(|&e| members[self.src[e]] && !members[self.dst[e]])
            .map(|e| (self.src[e], self.dst[e]))
    }

    /// Regular vertices first, each block in input order.
    pub fn canonical_order(&self) -> CanonicalOrder {
        let (regular, singular): (Vec<usize>, Vec<usize>) =
            (0..self.vertex_count()).partition(|&v| self.is_regular(v));
        let regular_count = regular.len();
        let mut order = regular;
        order.extend(singular);
        CanonicalOrder {
            order,
            regular_count,
        }
    }

    /// Indices of regular vertices in input order.
    pub fn regular_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.is_regular(v))
            .collect()
    }

    /// The same graph with vertices listed in the order given by `perm`
    /// (`perm[i]` is the old index of the new i-th vertex). Edges keep their order.
    pub fn with_vertex_order(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = HashSet::new();
        if perm.len() != self.vertex_count()
            || !perm
                .iter()
                .all(|&p| p < self.vertex_count() && seen.insert(p))
        {
            return Err(Error::DimensionMismatch(
                "vertex order is not a permutation".into(),
            ));
        }
        let vertices = perm.iter().map(|&p| self.vertices[p].clone()).collect();
        Self::new(vertices, self.edges.clone())
    }

    /// Subgraph on the vertices in `keep`, with every edge whose endpoints are both kept.
    pub(crate) fn induced(&self, keep: &[bool]) -> Self {
        let vertices = (0..self.vertex_count())
            .filter(|&v| keep[v])
            .map(|v| self.vertices[v].clone())
            .collect();
        let edges = (0..self.edge_count())
            .filter(|&e| keep[self.src[e]] && keep[self.dst[e]])
            .map(|e| self.edges[e].clone())
            .collect();
        Self::new(vertices, edges).expect("subgraph of a valid graph is valid")
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn triv() -> Graph {
        Graph::from_names(&["v"], &[] as &[(&str, &str, &str)]).unwrap()
    }

    pub fn loops_chain() -> Graph {
        Graph::from_names(
            &["v1", "v2", "v3"],
            &[
                ("a1", "v1", "v1"),
                ("a2", "v1", "v1"),
                ("e", "v1", "v2"),
                ("f", "v2", "v2"),
                ("g", "v2", "v3"),
            ],
        )
        .unwrap()
    }

    pub fn fed_path() -> Graph {
        Graph::from_names(
            &["v0", "v1", "v2", "v3"],
            &[
                ("d", "v0", "v1"),
                ("a1", "v1", "v1"),
                ("a2", "v1", "v1"),
                ("e", "v1", "v2"),
                ("g", "v2", "v3"),
            ],
        )
        .unwrap()
    }

    pub fn double_loop_path() -> Graph {
        Graph::from_names(
            &["v1", "v2", "v3"],
            &[
                ("a1", "v1", "v1"),
                ("a2", "v1", "v1"),
                ("e", "v1", "v2"),
                ("g", "v2", "v3"),
            ],
        )
        .unwrap()
    }

    pub fn rose(n: usize) -> Graph {
        let edges: Vec<(String, String, String)> = (1..=n)
            .map(|i| (format!("l{i}"), "v".to_string(), "v".to_string()))
            .collect();
        Graph::from_names(&["v".to_string()], &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let vs: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let es: Vec<(String, String, String)> = (1..n)
            .map(|i| (format!("p{i}"), vs[i - 1].clone(), vs[i].clone()))
            .collect();
        Graph::from_names(&vs, &es).unwrap()
    }

    /// Loop `e0` at `v0` plus an edge `e: v0 → v`.
    pub fn loop_exit() -> Graph {
        Graph::from_names(&["v0", "v"], &[("e0", "v0", "v0"), ("e", "v0", "v")]).unwrap()
    }

    /// Chain v2 → v1 → v0 and v3 → v1 feeding a looped v0 with an edge to v.
    pub fn tree_into_loop() -> Graph {
        Graph::from_names(
            &["v3", "v2", "v1", "v0", "v"],
            &[
                ("e3", "v3", "v1"),
                ("e2", "v2", "v1"),
                ("e1", "v1", "v0"),
                ("e0", "v0", "v0"),
                ("e", "v0", "v"),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn builds_example_graphs() {
        let g = triv();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = loops_chain();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 5));
    }

    #[test]
    fn construction_errors_name_the_token() {
        let err = Graph::from_names(&["v1"], &[("e", "v1", "v2")]).unwrap_err();
        assert_eq!(err, Error::DanglingEndpoint("v2".into()));
        let err = Graph::from_names(&["v", "v"], &[] as &[(&str, &str, &str)]).unwrap_err();
        assert_eq!(err, Error::DuplicateVertex("v".into()));
        let err = Graph::from_names(&["v"], &[("e", "v", "v"), ("e", "v", "v")]).unwrap_err();
        assert_eq!(err, Error::DuplicateEdge("e".into()));
        let err = Graph::from_names(&["a-b"], &[] as &[(&str, &str, &str)]).unwrap_err();
        assert_eq!(err, Error::InvalidName("a-b".into()));
    }

    #[test]
    fn roles() {
        let r = triv().vertex_roles();
        assert_eq!(r[0].1.position, Position::Isolated);
        assert!(!r[0].1.regular);

        let r = loops_chain().vertex_roles();
        // v1 carries loops, so it receives edges and is not a source.
        assert_eq!(
            r[0].1,
            VertexRole {
                position: Position::Internal,
                regular: true
            }
        );
        assert_eq!(
            r[1].1,
            VertexRole {
                position: Position::Internal,
                regular: true
            }
        );
        assert_eq!(
            r[2].1,
            VertexRole {
                position: Position::Sink,
                regular: false
            }
        );

        let r = rose(2).vertex_roles();
        assert_eq!(
            r[0].1,
            VertexRole {
                position: Position::Internal,
                regular: true
            }
        );

        let r = fed_path().vertex_roles();
        assert_eq!(
            r[0].1,
            VertexRole {
                position: Position::Source,
                regular: true
            }
        );
    }

    #[test]
    fn reachability() {
        let g = loops_chain();
        assert!(g.reaches("v1", "v3").unwrap());
        assert!(!g.reaches("v3", "v1").unwrap());
        assert!(g.reaches("v3", "v3").unwrap());
        assert_eq!(g.reaches("v1", "x"), Err(Error::UnknownVertex("x".into())));
    }

    #[test]
    fn hereditary_sets() {
        let g = loops_chain();
        assert!(g.is_hereditary(&["v3"]).unwrap());
        assert!(!g.is_hereditary(&["v2"]).unwrap());
        assert!(g.is_hereditary(&["v1", "v2", "v3"]).unwrap());
        assert!(tree_into_loop().is_hereditary(&["v0", "v"]).unwrap());
        assert!(g.is_hereditary(&["nope"]).is_err());
    }

    #[test]
    fn canonical_orders() {
        let c = loops_chain().canonical_order();
        assert_eq!((c.order, c.regular_count), (vec![0, 1, 2], 2));
        let c = triv().canonical_order();
        assert_eq!((c.order, c.regular_count), (vec![0], 0));
        let c = double_loop_path().canonical_order();
        assert_eq!((c.order, c.regular_count), (vec![0, 1, 2], 2));

        let g = Graph::from_names(&["s", "a", "b"], &[("x", "a", "b")]).unwrap();
        let c = g.canonical_order();
        assert_eq!((c.order.clone(), c.regular_count), (vec![1, 0, 2], 1));
        assert_eq!(c.positions(), vec![1, 0, 2]);
    }
}
