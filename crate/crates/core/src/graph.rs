//! Directed graphs with interned vertex names.
//!
//! Vertex ids are dense indices assigned in lexicographic order of the vertex
//! names, so the derived ordering on [`VertexId`] and [`Edge`] coincides with
//! the lexicographic ordering of names. Every ordered output of this crate
//! relies on that.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Reserved word introducing an isolated vertex in the edge-list format.
pub const NODE_KEYWORD: &str = "node";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index exceeds u32"))
    }
}

/// A directed edge `(tail, head)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Edge { tail, head }
    }
}

pub(crate) fn validate_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && !name.chars().any(char::is_whitespace)
        && !name.contains("->")
        && !name.starts_with('#')
        && name != NODE_KEYWORD;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidVertexName(name.to_string()))
    }
}

/// Bijection between vertex names and dense ids, ids sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VertexTable {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl VertexTable {
    /// Names must already be validated.
    pub(crate) fn new(names: BTreeSet<String>) -> Self {
        let names: Vec<String> = names.into_iter().collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId::from_index(i)))
            .collect();
        VertexTable { names, index }
    }

    pub(crate) fn len(&self) -> usize {
        self.names.len()
    }

    pub(crate) fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub(crate) fn get(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub(crate) fn names(&self) -> &[String] {
        &self.names
    }
}

#[derive(Debug)]
struct GraphData {
    vertices: VertexTable,
    /// Sorted by `(tail, head)`, no duplicates.
    edges: Vec<Edge>,
    /// `out_start[v]..out_start[v + 1]` is the range of `edges` with tail `v`.
    out_start: Vec<usize>,
    /// Indices into `edges`, sorted by `(head, tail)`.
    in_order: Vec<usize>,
    in_start: Vec<usize>,
}

/// A directed graph `G = (V, E)`, immutable once built.
///
/// Cloning is cheap and preserves identity: passages and edge sets remember
/// the graph they were built against and refuse to mix with another one.
#[derive(Clone)]
pub struct Graph {
    data: Arc<GraphData>,
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Builds a graph from vertex names and name pairs. Endpoints are added
    /// to the vertex set implicitly.
    pub fn from_names<'a, V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = &'a str>,
        E: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut b = GraphBuilder::default();
        for v in vertices {
            b.add_vertex(v)?;
        }
        for (x, y) in edges {
            b.add_edge(x, y)?;
        }
        Ok(b.build())
    }

    pub(crate) fn from_table(vertices: VertexTable, mut edges: Vec<Edge>) -> Graph {
        edges.sort_unstable();
        edges.dedup();
        let n = vertices.len();

        let mut out_start = vec![0usize; n + 1];
        for e in &edges {
            out_start[e.tail.index() + 1] += 1;
        }
        for v in 0..n {
            out_start[v + 1] += out_start[v];
        }

        let mut in_order: Vec<usize> = (0..edges.len()).collect();
        in_order.sort_unstable_by_key(|&i| (edges[i].head, edges[i].tail));
        let mut in_start = vec![0usize; n + 1];
        for e in &edges {
            in_start[e.head.index() + 1] += 1;
        }
        for v in 0..n {
            in_start[v + 1] += in_start[v];
        }

        Graph {
            data: Arc::new(GraphData {
                vertices,
                edges,
                out_start,
                in_order,
                in_start,
            }),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.data.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.data.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId::from_index)
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.data.edges
    }

    pub fn name(&self, v: VertexId) -> &str {
        self.data.vertices.name(v)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.data.vertices.get(name)
    }

    /// Position of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        if e.tail.index() >= self.vertex_count() {
            return None;
        }
        let range = self.data.out_start[e.tail.index()]..self.data.out_start[e.tail.index() + 1];
        self.data.edges[range.clone()]
            .binary_search(&e)
            .ok()
            .map(|i| range.start + i)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edge_index(e).is_some()
    }

    /// Edges leaving `v`, ordered by head.
    pub fn out_edges(&self, v: VertexId) -> &[Edge] {
        &self.data.edges[self.data.out_start[v.index()]..self.data.out_start[v.index() + 1]]
    }

    /// Edges entering `v`, ordered by tail.
    pub fn in_edges(&self, v: VertexId) -> impl ExactSizeIterator<Item = Edge> + '_ {
        let range = self.data.in_start[v.index()]..self.data.in_start[v.index() + 1];
        self.data.in_order[range]
            .iter()
            .map(move |&i| self.data.edges[i])
    }

    /// Indices (into [`Graph::edges`]) of the edges entering `v`.
    pub(crate) fn in_edge_indices(&self, v: VertexId) -> &[usize] {
        &self.data.in_order[self.data.in_start[v.index()]..self.data.in_start[v.index() + 1]]
    }

    pub(crate) fn out_edge_range(&self, v: VertexId) -> std::ops::Range<usize> {
        self.data.out_start[v.index()]..self.data.out_start[v.index() + 1]
    }

    /// Looks up the edge `(tail, head)` by vertex names.
    pub fn edge_by_names(&self, tail: &str, head: &str) -> Result<Edge> {
        let t = self
            .vertex(tail)
            .ok_or_else(|| Error::UnknownVertex(tail.to_string()))?;
        let h = self
            .vertex(head)
            .ok_or_else(|| Error::UnknownVertex(head.to_string()))?;
        let e = Edge::new(t, h);
        if self.contains_edge(e) {
            Ok(e)
        } else {
            Err(Error::EdgeNotInGraph {
                tail: tail.to_string(),
                head: head.to_string(),
            })
        }
    }

    pub fn edge_names(&self, e: Edge) -> (&str, &str) {
        (self.name(e.tail), self.name(e.head))
    }

    /// True iff both handles refer to the same graph instance.
    pub fn same_graph(&self, other: &Graph) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub(crate) fn edge_not_in_graph(&self, e: Edge) -> Error {
        let name = |v: VertexId| {
            if v.index() < self.vertex_count() {
                self.name(v).to_string()
            } else {
                format!("#{}", v.index())
            }
        };
        Error::EdgeNotInGraph {
            tail: name(e.tail),
            head: name(e.head),
        }
    }
}

/// Structural equality: same vertex names and same edges.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.same_graph(other)
            || (self.data.vertices.names() == other.data.vertices.names()
                && self.data.edges == other.data.edges)
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.data.vertices.names())
            .field(
                "edges",
                &self
                    .edges()
                    .iter()
                    .map(|&e| self.edge_names(e))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
}

impl GraphBuilder {
    pub fn add_vertex(&mut self, name: &str) -> Result<&mut Self> {
        validate_name(name)?;
        self.vertices.insert(name.to_string());
        Ok(self)
    }

    pub fn add_edge(&mut self, tail: &str, head: &str) -> Result<&mut Self> {
        self.add_vertex(tail)?;
        self.add_vertex(head)?;
        self.edges.insert((tail.to_string(), head.to_string()));
        Ok(self)
    }

    pub fn build(self) -> Graph {
        let table = VertexTable::new(self.vertices);
        let edges = self
            .edges
            .iter()
            .map(|(x, y)| Edge::new(table.get(x).unwrap(), table.get(y).unwrap()))
            .collect();
        Graph::from_table(table, edges)
    }
}

/// π₁: the tails of a set of edges.
pub fn initial_vertices<'a, I>(edges: I) -> BTreeSet<VertexId>
where
    I: IntoIterator<Item = &'a Edge>,
{
    edges.into_iter().map(|e| e.tail).collect()
}

/// π₂: the heads of a set of edges.
pub fn terminal_vertices<'a, I>(edges: I) -> BTreeSet<VertexId>
where
    I: IntoIterator<Item = &'a Edge>,
{
    edges.into_iter().map(|e| e.head).collect()
}

/// A subset of a graph's edges, not yet known to be a passage.
#[derive(Clone)]
pub struct EdgeSet {
    graph: Graph,
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    /// Fails if any edge is not in `graph`.
    pub fn new<I>(graph: &Graph, edges: I) -> Result<EdgeSet>
    where
        I: IntoIterator<Item = Edge>,
    {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        if let Some(&e) = edges.iter().find(|&&e| !graph.contains_edge(e)) {
            return Err(graph.edge_not_in_graph(e));
        }
        Ok(EdgeSet {
            graph: graph.clone(),
            edges,
        })
    }

    pub fn from_names<'a, I>(graph: &Graph, pairs: I) -> Result<EdgeSet>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let edges = pairs
            .into_iter()
            .map(|(x, y)| graph.edge_by_names(x, y))
            .collect::<Result<Vec<_>>>()?;
        EdgeSet::new(graph, edges)
    }

    pub fn empty(graph: &Graph) -> EdgeSet {
        EdgeSet {
            graph: graph.clone(),
            edges: BTreeSet::new(),
        }
    }

    pub fn full(graph: &Graph) -> EdgeSet {
        EdgeSet {
            graph: graph.clone(),
            edges: graph.edges().iter().copied().collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(graph: &Graph, edges: BTreeSet<Edge>) -> EdgeSet {
        EdgeSet {
            graph: graph.clone(),
            edges,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn into_edges(self) -> BTreeSet<Edge> {
        self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn initial_vertices(&self) -> BTreeSet<VertexId> {
        initial_vertices(&self.edges)
    }

    pub fn terminal_vertices(&self) -> BTreeSet<VertexId> {
        terminal_vertices(&self.edges)
    }
}

impl PartialEq for EdgeSet {
    fn eq(&self, other: &Self) -> bool {
        self.graph.same_graph(&other.graph) && self.edges == other.edges
    }
}

impl Eq for EdgeSet {}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_edges(f, &self.graph, &self.edges)
    }
}

pub(crate) fn fmt_edges(
    f: &mut fmt::Formatter<'_>,
    graph: &Graph,
    edges: &BTreeSet<Edge>,
) -> fmt::Result {
    f.debug_set()
        .entries(edges.iter().map(|&e| graph.edge_names(e)))
        .finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1() -> Graph {
        Graph::from_names(
            [],
            [
                ("a", "b"),
                ("a", "c"),
                ("b", "e"),
                ("b", "f"),
                ("c", "f"),
                ("c", "d"),
                ("d", "d"),
                ("d", "f"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ids_follow_name_order() {
        let g = Graph::from_names(["z", "m"], [("b", "a")]).unwrap();
        let names: Vec<_> = g.vertices().map(|v| g.name(v)).collect();
        assert_eq!(names, ["a", "b", "m", "z"]);
        assert!(g.vertex("a").unwrap() < g.vertex("b").unwrap());
    }

    #[test]
    fn adjacency() {
        let g = f1();
        let d = g.vertex("d").unwrap();
        let f = g.vertex("f").unwrap();
        let outs: Vec<_> = g.out_edges(d).iter().map(|&e| g.edge_names(e)).collect();
        assert_eq!(outs, [("d", "d"), ("d", "f")]);
        let ins: Vec<_> = g.in_edges(f).map(|e| g.edge_names(e)).collect();
        assert_eq!(ins, [("b", "f"), ("c", "f"), ("d", "f")]);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.vertex_count(), 6);
    }

    #[test]
    fn self_loops_are_edges() {
        let g = f1();
        assert!(g.edge_by_names("d", "d").is_ok());
    }

    #[test]
    fn rejects_bad_names() {
        for bad in ["", "a b", "a->b", "node", "#x", "tab\tx"] {
            assert!(matches!(
                Graph::builder().add_vertex(bad),
                Err(Error::InvalidVertexName(_))
            ));
        }
    }

    #[test]
    fn edge_lookup_errors() {
        let g = f1();
        assert_eq!(
            g.edge_by_names("a", "d"),
            Err(Error::EdgeNotInGraph {
                tail: "a".into(),
                head: "d".into()
            })
        );
        assert_eq!(g.edge_by_names("q", "d"), Err(Error::UnknownVertex("q".into())));
    }

    #[test]
    fn edge_set_binding() {
        let g = f1();
        let h = f1();
        assert_eq!(g, h);
        assert!(!g.same_graph(&h));
        let e = g.edge_by_names("a", "b").unwrap();
        let s1 = EdgeSet::new(&g, [e]).unwrap();
        let s2 = EdgeSet::new(&h, [e]).unwrap();
        assert_ne!(s1, s2);
        let foreign = Edge::new(VertexId::from_index(40), VertexId::from_index(0));
        assert!(EdgeSet::new(&g, [foreign]).is_err());
    }

    #[test]
    fn projections() {
        let g = f1();
        let p2 = EdgeSet::from_names(
            &g,
            [
                ("b", "e"),
                ("b", "f"),
                ("c", "f"),
                ("c", "d"),
                ("d", "d"),
                ("d", "f"),
            ],
        )
        .unwrap();
        let names = |s: BTreeSet<VertexId>| s.into_iter().map(|v| g.name(v)).collect::<Vec<_>>();
        assert_eq!(names(p2.initial_vertices()), ["b", "c", "d"]);
        assert_eq!(names(p2.terminal_vertices()), ["d", "e", "f"]);
        assert!(EdgeSet::empty(&g).initial_vertices().is_empty());
        assert!(EdgeSet::empty(&g).terminal_vertices().is_empty());
        let ab = EdgeSet::from_names(&g, [("a", "b"), ("a", "c")]).unwrap();
        assert_eq!(names(ab.initial_vertices()), ["a"]);
        let dd = EdgeSet::from_names(&g, [("d", "d")]).unwrap();
        assert_eq!(names(dd.terminal_vertices()), ["d"]);
    }
}
