//! Passages, their set algebra, minimal passages and passage partitionings.
//!
//! A passage is a set of edges `P` such that whenever `(x, y)` is in `P`,
//! every edge leaving `x` and every edge entering `y` is in `P` as well.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{fmt_edges, initial_vertices, terminal_vertices, Edge, EdgeSet, Graph, VertexId};
use crate::union_find::UnionFind;

fn closed_under_neighbours(g: &Graph, edges: &BTreeSet<Edge>) -> bool {
    let n = g.vertex_count();
    let mut tail_done = vec![false; n];
    let mut head_done = vec![false; n];
    for e in edges {
        if !tail_done[e.tail.index()] {
            tail_done[e.tail.index()] = true;
            if !g.out_edges(e.tail).iter().all(|f| edges.contains(f)) {
                return false;
            }
        }
        if !head_done[e.head.index()] {
            head_done[e.head.index()] = true;
            if !g.in_edges(e.head).all(|f| edges.contains(&f)) {
                return false;
            }
        }
    }
    true
}

/// Whether `s` is a passage of `g`.
pub fn is_passage(g: &Graph, s: &EdgeSet) -> Result<bool> {
    if !s.graph().same_graph(g) {
        return Err(Error::GraphMismatch);
    }
    Ok(closed_under_neighbours(g, s.edges()))
}

/// One extension step `((π₁(S) × V) ∪ (V × π₂(S))) ∩ E`.
///
/// Passages are exactly the fixpoints of this map.
pub fn fixpoint_step(g: &Graph, s: &EdgeSet) -> Result<EdgeSet> {
    if !s.graph().same_graph(g) {
        return Err(Error::GraphMismatch);
    }
    let mut out = BTreeSet::new();
    for x in s.initial_vertices() {
        out.extend(g.out_edges(x).iter().copied());
    }
    for y in s.terminal_vertices() {
        out.extend(g.in_edges(y));
    }
    Ok(EdgeSet::from_parts_unchecked(g, out))
}

/// A set of edges known to be a passage of its graph.
#[derive(Clone)]
pub struct Passage {
    graph: Graph,
    edges: BTreeSet<Edge>,
}

impl Passage {
    /// Upgrades an edge set, failing with [`Error::NotAPassage`].
    pub fn new(s: EdgeSet) -> Result<Passage> {
        if !closed_under_neighbours(s.graph(), s.edges()) {
            return Err(Error::NotAPassage);
        }
        let graph = s.graph().clone();
        Ok(Passage {
            graph,
            edges: s.into_edges(),
        })
    }

    pub(crate) fn new_unchecked(graph: &Graph, edges: BTreeSet<Edge>) -> Passage {
        debug_assert!(closed_under_neighbours(graph, &edges));
        Passage {
            graph: graph.clone(),
            edges,
        }
    }

    pub fn empty(graph: &Graph) -> Passage {
        Passage::new_unchecked(graph, BTreeSet::new())
    }

    pub fn full(graph: &Graph) -> Passage {
        Passage::new_unchecked(graph, graph.edges().iter().copied().collect())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
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

    /// Smallest edge, which identifies a non-empty minimal passage.
    pub fn first_edge(&self) -> Option<Edge> {
        self.edges.iter().next().copied()
    }

    pub fn initial_vertices(&self) -> BTreeSet<VertexId> {
        initial_vertices(&self.edges)
    }

    pub fn terminal_vertices(&self) -> BTreeSet<VertexId> {
        terminal_vertices(&self.edges)
    }

    pub fn to_edge_set(&self) -> EdgeSet {
        EdgeSet::from_parts_unchecked(&self.graph, self.edges.clone())
    }

    fn check_same(&self, other: &Passage) -> Result<()> {
        if self.graph.same_graph(&other.graph) {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    fn combine(&self, other: &Passage, edges: BTreeSet<Edge>) -> Result<Passage> {
        self.check_same(other)?;
        Ok(Passage::new_unchecked(&self.graph, edges))
    }

    pub fn union(&self, other: &Passage) -> Result<Passage> {
        self.combine(other, self.edges.union(&other.edges).copied().collect())
    }

    pub fn intersect(&self, other: &Passage) -> Result<Passage> {
        self.combine(other, self.edges.intersection(&other.edges).copied().collect())
    }

    pub fn difference(&self, other: &Passage) -> Result<Passage> {
        self.combine(other, self.edges.difference(&other.edges).copied().collect())
    }

    /// `P₁ # P₂`: no shared edge.
    pub fn disjoint(&self, other: &Passage) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.edges.is_disjoint(&other.edges))
    }

    /// `P₁ ▷ P₂`: some terminal vertex of `self` is an initial vertex of `other`.
    pub fn feeds(&self, other: &Passage) -> Result<bool> {
        self.check_same(other)?;
        Ok(feeds_unchecked(self, other))
    }
}

pub(crate) fn feeds_unchecked(p: &Passage, q: &Passage) -> bool {
    let heads = p.terminal_vertices();
    q.edges.iter().any(|e| heads.contains(&e.tail))
}

impl PartialEq for Passage {
    fn eq(&self, other: &Self) -> bool {
        self.graph.same_graph(&other.graph) && self.edges == other.edges
    }
}

impl Eq for Passage {}

impl fmt::Debug for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Passage")?;
        fmt_edges(f, &self.graph, &self.edges)
    }
}

/// The smallest passage containing `seed`.
///
/// Runs the extension step to a fixpoint with a worklist, visiting each tail
/// and each head once.
pub fn closure(g: &Graph, seed: &EdgeSet) -> Result<Passage> {
    if !seed.graph().same_graph(g) {
        return Err(Error::GraphMismatch);
    }
    let n = g.vertex_count();
    let mut tail_done = vec![false; n];
    let mut head_done = vec![false; n];
    let mut result: BTreeSet<Edge> = seed.edges().clone();
    let mut queue: VecDeque<Edge> = result.iter().copied().collect();
    while let Some(e) = queue.pop_front() {
        if !tail_done[e.tail.index()] {
            tail_done[e.tail.index()] = true;
            for &f in g.out_edges(e.tail) {
                if result.insert(f) {
                    queue.push_back(f);
                }
            }
        }
        if !head_done[e.head.index()] {
            head_done[e.head.index()] = true;
            for f in g.in_edges(e.head) {
                if result.insert(f) {
                    queue.push_back(f);
                }
            }
        }
    }
    Ok(Passage::new_unchecked(g, result))
}

/// The unique minimal passage containing `e`.
pub fn minimal_passage_of(g: &Graph, e: Edge) -> Result<Passage> {
    if !g.contains_edge(e) {
        return Err(g.edge_not_in_graph(e));
    }
    closure(g, &EdgeSet::from_parts_unchecked(g, BTreeSet::from([e])))
}

/// All minimal non-empty passages, ordered by smallest edge.
///
/// Edges sharing a tail are merged, then edges sharing a head; the resulting
/// classes are the minimal passages.
pub fn minimal_passages(g: &Graph) -> PassagePartitioning {
    let edges = g.edges();
    let mut uf = UnionFind::new(edges.len());
    for v in g.vertices() {
        let out = g.out_edge_range(v);
        for i in out.clone().skip(1) {
            uf.union(out.start, i);
        }
        let ins = g.in_edge_indices(v);
        for &i in ins.iter().skip(1) {
            uf.union(ins[0], i);
        }
    }
    let parts = uf
        .classes()
        .into_iter()
        .map(|class| Passage::new_unchecked(g, class.into_iter().map(|i| edges[i]).collect()))
        .collect();
    PassagePartitioning {
        graph: g.clone(),
        parts,
    }
}

/// Splits a passage into the minimal passages it is composed of.
pub fn decompose(g: &Graph, p: &Passage) -> Result<Vec<Passage>> {
    if !p.graph.same_graph(g) {
        return Err(Error::GraphMismatch);
    }
    if p.is_empty() {
        return Ok(Vec::new());
    }
    Ok(minimal_passages(g)
        .into_parts()
        .into_iter()
        .filter(|m| {
            let first = m.first_edge().expect("minimal passages are non-empty");
            p.contains(first)
        })
        .collect())
}

/// Pairwise-disjoint non-empty passages covering every edge of one graph.
#[derive(Clone)]
pub struct PassagePartitioning {
    graph: Graph,
    parts: Vec<Passage>,
}

impl PassagePartitioning {
    /// The partitioning `{E}`, or the empty partitioning when `E = ∅`.
    pub fn trivial(g: &Graph) -> PassagePartitioning {
        let parts = if g.edge_count() == 0 {
            Vec::new()
        } else {
            vec![Passage::full(g)]
        };
        PassagePartitioning {
            graph: g.clone(),
            parts,
        }
    }

    pub(crate) fn new_unchecked(g: &Graph, parts: Vec<Passage>) -> PassagePartitioning {
        PassagePartitioning {
            graph: g.clone(),
            parts,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> &[Passage] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Passage> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index of the part containing `e`.
    pub fn part_of(&self, e: Edge) -> Result<usize> {
        self.parts
            .iter()
            .position(|p| p.contains(e))
            .ok_or_else(|| self.graph.edge_not_in_graph(e))
    }

    /// Parts as a set of edge sets, for order-insensitive comparison.
    pub fn canonical(&self) -> BTreeSet<BTreeSet<Edge>> {
        self.parts.iter().map(|p| p.edges.clone()).collect()
    }
}

impl PartialEq for PassagePartitioning {
    fn eq(&self, other: &Self) -> bool {
        self.graph.same_graph(&other.graph) && self.parts == other.parts
    }
}

impl Eq for PassagePartitioning {}

impl fmt::Debug for PassagePartitioning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.parts).finish()
    }
}

/// Checks that `parts` form a passage partitioning of `g`, keeping their order.
pub fn validate_partitioning(g: &Graph, parts: Vec<EdgeSet>) -> Result<PassagePartitioning> {
    let mut owner: Vec<Option<usize>> = vec![None; g.edge_count()];
    let mut passages = Vec::with_capacity(parts.len());
    for (index, part) in parts.into_iter().enumerate() {
        if !part.graph().same_graph(g) {
            return Err(Error::GraphMismatch);
        }
        if part.is_empty() {
            return Err(Error::EmptyPart { index });
        }
        if !closed_under_neighbours(g, part.edges()) {
            return Err(Error::NonPassagePart { index });
        }
        for &e in part.edges() {
            let slot = &mut owner[g.edge_index(e).expect("edge set is bound to g")];
            if let Some(first) = *slot {
                let (tail, head) = g.edge_names(e);
                return Err(Error::OverlappingParts {
                    first,
                    second: index,
                    tail: tail.to_string(),
                    head: head.to_string(),
                });
            }
            *slot = Some(index);
        }
        passages.push(Passage {
            graph: g.clone(),
            edges: part.into_edges(),
        });
    }
    if let Some(i) = owner.iter().position(Option::is_none) {
        let (tail, head) = g.edge_names(g.edges()[i]);
        return Err(Error::IncompleteCover {
            tail: tail.to_string(),
            head: head.to_string(),
        });
    }
    Ok(PassagePartitioning::new_unchecked(g, passages))
}

/// `e1 ~ e2`: both edges lie in the same part.
pub fn same_passage(pp: &PassagePartitioning, e1: Edge, e2: Edge) -> Result<bool> {
    Ok(pp.part_of(e1)? == pp.part_of(e2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_graph;

    const P2: [(&str, &str); 6] = [
        ("b", "e"),
        ("b", "f"),
        ("c", "f"),
        ("c", "d"),
        ("d", "d"),
        ("d", "f"),
    ];

    fn f1() -> Graph {
        parse_graph("a b\na c\nb e\nb f\nc f\nc d\nd d\nd f\n").unwrap()
    }

    fn f3() -> Graph {
        parse_graph("a b\nb c\n").unwrap()
    }

    fn f4() -> Graph {
        parse_graph("a b\na c\nb d\nc d\n").unwrap()
    }

    fn set(g: &Graph, pairs: &[(&str, &str)]) -> EdgeSet {
        EdgeSet::from_names(g, pairs.iter().copied()).unwrap()
    }

    fn passage(g: &Graph, pairs: &[(&str, &str)]) -> Passage {
        Passage::new(set(g, pairs)).unwrap()
    }

    fn edge(g: &Graph, x: &str, y: &str) -> Edge {
        g.edge_by_names(x, y).unwrap()
    }

    #[test]
    fn predicate_examples() {
        let g = f1();
        assert!(is_passage(&g, &set(&g, &[("a", "b"), ("a", "c")])).unwrap());
        assert!(is_passage(&g, &EdgeSet::empty(&g)).unwrap());
        assert!(is_passage(&g, &EdgeSet::full(&g)).unwrap());
        assert!(!is_passage(&g, &set(&g, &[("a", "b")])).unwrap());
        assert!(is_passage(&g, &set(&g, &P2)).unwrap());
        assert_eq!(is_passage(&f1(), &set(&g, &[])), Err(Error::GraphMismatch));
    }

    #[test]
    fn upgrade_rejects_non_passages() {
        let g = f1();
        assert_eq!(Passage::new(set(&g, &[("b", "e")])).unwrap_err(), Error::NotAPassage);
    }

    #[test]
    fn algebra_on_f1() {
        let g = f1();
        let p1 = passage(&g, &[("a", "b"), ("a", "c")]);
        let p2 = passage(&g, &P2);
        assert_eq!(p1.union(&p2).unwrap(), Passage::full(&g));
        assert!(p1.intersect(&p2).unwrap().is_empty());
        assert_eq!(Passage::full(&g).difference(&p2).unwrap(), p1);
        assert!(is_passage(&g, &Passage::full(&g).difference(&p2).unwrap().to_edge_set()).unwrap());
    }

    #[test]
    fn disjointness() {
        let g = f1();
        let p1 = passage(&g, &[("a", "b"), ("a", "c")]);
        let p2 = passage(&g, &P2);
        assert!(p1.disjoint(&p2).unwrap());
        assert!(!p2.disjoint(&p2).unwrap());
        assert!(Passage::empty(&g).disjoint(&p2).unwrap());
        let other = f1();
        assert_eq!(p1.disjoint(&Passage::empty(&other)), Err(Error::GraphMismatch));
        assert_eq!(p1.union(&Passage::empty(&other)), Err(Error::GraphMismatch));
    }

    #[test]
    fn feeding() {
        let g = f3();
        let ab = passage(&g, &[("a", "b")]);
        let bc = passage(&g, &[("b", "c")]);
        assert!(ab.feeds(&bc).unwrap());
        assert!(!bc.feeds(&ab).unwrap());
        assert!(!Passage::empty(&g).feeds(&bc).unwrap());
    }

    #[test]
    fn closure_examples() {
        let g = f1();
        assert_eq!(closure(&g, &set(&g, &[("b", "e")])).unwrap(), passage(&g, &P2));
        assert_eq!(
            closure(&g, &set(&g, &[("a", "b")])).unwrap(),
            passage(&g, &[("a", "b"), ("a", "c")])
        );
        let g3 = f3();
        assert_eq!(closure(&g3, &set(&g3, &[("a", "b")])).unwrap().len(), 1);
        assert!(closure(&g, &EdgeSet::empty(&g)).unwrap().is_empty());
    }

    #[test]
    fn minimal_examples() {
        let g = f1();
        let mp = minimal_passages(&g);
        assert_eq!(mp.len(), 2);
        assert_eq!(mp.parts()[0], passage(&g, &[("a", "b"), ("a", "c")]));
        assert_eq!(mp.parts()[1], passage(&g, &P2));

        let empty = parse_graph("node z").unwrap();
        assert!(minimal_passages(&empty).is_empty());

        let g4 = f4();
        let mp4 = minimal_passages(&g4);
        assert_eq!(mp4.parts().len(), 2);
        assert_eq!(mp4.parts()[0], passage(&g4, &[("a", "b"), ("a", "c")]));
        assert_eq!(mp4.parts()[1], passage(&g4, &[("b", "d"), ("c", "d")]));
    }

    #[test]
    fn minimal_passage_of_examples() {
        let g = f1();
        assert_eq!(minimal_passage_of(&g, edge(&g, "d", "f")).unwrap(), passage(&g, &P2));
        assert_eq!(
            minimal_passage_of(&g, edge(&g, "a", "c")).unwrap(),
            passage(&g, &[("a", "b"), ("a", "c")])
        );
        let g3 = f3();
        assert_eq!(
            minimal_passage_of(&g3, edge(&g3, "b", "c")).unwrap(),
            passage(&g3, &[("b", "c")])
        );
        let missing = Edge::new(g.vertex("a").unwrap(), g.vertex("f").unwrap());
        assert!(matches!(minimal_passage_of(&g, missing), Err(Error::EdgeNotInGraph { .. })));
    }

    #[test]
    fn decompose_examples() {
        let g = f1();
        let mp = minimal_passages(&g);
        assert_eq!(decompose(&g, &Passage::full(&g)).unwrap(), mp.parts().to_vec());
        assert!(decompose(&g, &Passage::empty(&g)).unwrap().is_empty());
        let p2 = passage(&g, &P2);
        assert_eq!(decompose(&g, &p2).unwrap(), vec![p2]);
    }

    #[test]
    fn validation_examples() {
        let g = f1();
        let p1 = set(&g, &[("a", "b"), ("a", "c")]);
        let p2 = set(&g, &P2);
        let pp = validate_partitioning(&g, vec![p1.clone(), p2.clone()]).unwrap();
        assert_eq!(pp.len(), 2);
        assert_eq!(validate_partitioning(&g, vec![EdgeSet::full(&g)]).unwrap().len(), 1);
        assert_eq!(
            validate_partitioning(&g, vec![p1.clone()]).unwrap_err(),
            Error::IncompleteCover {
                tail: "b".into(),
                head: "e".into()
            }
        );
        assert_eq!(
            validate_partitioning(&g, vec![p1.clone(), EdgeSet::empty(&g), p2.clone()]).unwrap_err(),
            Error::EmptyPart { index: 1 }
        );
        assert_eq!(
            validate_partitioning(&g, vec![set(&g, &[("a", "b")])]).unwrap_err(),
            Error::NonPassagePart { index: 0 }
        );
        assert_eq!(
            validate_partitioning(&g, vec![p1, EdgeSet::full(&g)]).unwrap_err(),
            Error::OverlappingParts {
                first: 0,
                second: 1,
                tail: "a".into(),
                head: "b".into()
            }
        );
        let g0 = parse_graph("node z").unwrap();
        assert!(validate_partitioning(&g0, vec![]).unwrap().is_empty());
    }

    #[test]
    fn same_passage_examples() {
        let g = f1();
        let pp = minimal_passages(&g);
        assert!(same_passage(&pp, edge(&g, "b", "e"), edge(&g, "d", "f")).unwrap());
        assert!(!same_passage(&pp, edge(&g, "a", "b"), edge(&g, "b", "e")).unwrap());
        assert!(same_passage(&pp, edge(&g, "c", "d"), edge(&g, "c", "d")).unwrap());
        let missing = Edge::new(g.vertex("a").unwrap(), g.vertex("f").unwrap());
        assert!(same_passage(&pp, missing, missing).is_err());
    }

    #[test]
    fn fixpoint_step_examples() {
        let g = f1();
        let s = set(&g, &[("a", "b")]);
        assert_eq!(fixpoint_step(&g, &s).unwrap(), set(&g, &[("a", "b"), ("a", "c")]));
        let p2 = set(&g, &P2);
        assert_eq!(fixpoint_step(&g, &p2).unwrap(), p2);
    }

    #[test]
    fn repeated_runs_agree() {
        let g = f1();
        let first = minimal_passages(&g);
        for _ in 0..5 {
            assert_eq!(minimal_passages(&g), first);
        }
    }
}
