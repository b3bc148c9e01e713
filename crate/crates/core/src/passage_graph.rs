//! Vertex classification and passage graphs over a partitioning.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{initial_vertices, terminal_vertices, Graph, VertexId};
use crate::passage::{feeds_unchecked, Passage, PassagePartitioning};

/// Input, output and input/output vertices of a single passage.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Boundary {
    pub input: BTreeSet<VertexId>,
    pub output: BTreeSet<VertexId>,
    pub io: BTreeSet<VertexId>,
}

pub fn boundary(p: &Passage) -> Boundary {
    let initial = p.initial_vertices();
    let terminal = p.terminal_vertices();
    Boundary {
        input: initial.difference(&terminal).copied().collect(),
        output: terminal.difference(&initial).copied().collect(),
        io: initial.intersection(&terminal).copied().collect(),
    }
}

/// The five vertex types induced by a partitioning. They partition `V`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexClassification {
    pub isolated: BTreeSet<VertexId>,
    pub input: BTreeSet<VertexId>,
    pub output: BTreeSet<VertexId>,
    pub connecting: BTreeSet<VertexId>,
    pub local: BTreeSet<VertexId>,
}

impl VertexClassification {
    pub fn to_doc(&self, g: &Graph) -> ClassificationDoc {
        let names = |s: &BTreeSet<VertexId>| s.iter().map(|&v| g.name(v).to_string()).collect();
        ClassificationDoc {
            isolated: names(&self.isolated),
            input: names(&self.input),
            output: names(&self.output),
            connecting: names(&self.connecting),
            local: names(&self.local),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationDoc {
    pub isolated: Vec<String>,
    pub input: Vec<String>,
    pub output: Vec<String>,
    pub connecting: Vec<String>,
    pub local: Vec<String>,
}

fn check_binding(g: &Graph, pp: &PassagePartitioning) -> Result<()> {
    if pp.graph().same_graph(g) {
        Ok(())
    } else {
        Err(Error::GraphMismatch)
    }
}

pub fn classify_vertices(g: &Graph, pp: &PassagePartitioning) -> Result<VertexClassification> {
    check_binding(g, pp)?;
    let tails = initial_vertices(g.edges());
    let heads = terminal_vertices(g.edges());

    let mut class = VertexClassification {
        isolated: g
            .vertices()
            .filter(|v| !tails.contains(v) && !heads.contains(v))
            .collect(),
        input: tails.difference(&heads).copied().collect(),
        output: heads.difference(&tails).copied().collect(),
        ..Default::default()
    };

    // Every edge with tail v lies in one part, and likewise for head v, so a
    // vertex on both sides is local or connecting depending on whether those
    // parts coincide.
    let n = g.vertex_count();
    let mut tail_part = vec![usize::MAX; n];
    let mut head_part = vec![usize::MAX; n];
    for (i, part) in pp.parts().iter().enumerate() {
        for e in part.edges() {
            tail_part[e.tail.index()] = i;
            head_part[e.head.index()] = i;
        }
    }
    for v in tails.intersection(&heads) {
        if tail_part[v.index()] == head_part[v.index()] {
            class.local.insert(*v);
        } else {
            class.connecting.insert(*v);
        }
    }
    Ok(class)
}

/// Nodes are the parts of a partitioning; `(i, j)` is an arc iff part `i`
/// feeds part `j`. Self-arcs are kept.
#[derive(Debug, Clone)]
pub struct PassageGraph {
    partitioning: PassagePartitioning,
    arcs: Vec<(usize, usize)>,
}

impl PassageGraph {
    pub fn partitioning(&self) -> &PassagePartitioning {
        &self.partitioning
    }

    pub fn nodes(&self) -> &[Passage] {
        self.partitioning.parts()
    }

    /// Arcs as part indices, sorted.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.arcs.binary_search(&(from, to)).is_ok()
    }
}

pub fn build_passage_graph(g: &Graph, pp: &PassagePartitioning) -> Result<PassageGraph> {
    check_binding(g, pp)?;
    let parts = pp.parts();
    let mut arcs = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for (j, q) in parts.iter().enumerate() {
            if feeds_unchecked(p, q) {
                arcs.push((i, j));
            }
        }
    }
    Ok(PassageGraph {
        partitioning: pp.clone(),
        arcs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelMode {
    /// `P3`
    Index,
    /// `P3 (5 edges)`
    #[default]
    EdgeCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DotOptions {
    pub show_self_arcs: bool,
    pub label_mode: LabelMode,
}

pub fn to_dot(pg: &PassageGraph, options: DotOptions) -> String {
    if pg.nodes().is_empty() {
        return "digraph passages { }\n".to_string();
    }
    let mut out = String::from("digraph passages {\n");
    for (i, p) in pg.nodes().iter().enumerate() {
        let label = match options.label_mode {
            LabelMode::Index => format!("P{}", i + 1),
            LabelMode::EdgeCount => {
                let unit = if p.len() == 1 { "edge" } else { "edges" };
                format!("P{} ({} {unit})", i + 1, p.len())
            }
        };
        writeln!(out, "  P{} [label=\"{label}\"];", i + 1).unwrap();
    }
    for &(i, j) in pg.arcs() {
        if i == j && !options.show_self_arcs {
            continue;
        }
        writeln!(out, "  P{} -> P{};", i + 1, j + 1).unwrap();
    }
    out.push_str("}\n");
    out
}
