//! Passages in directed graphs.
//!
//! A passage is a set of edges such that any two edges sharing a tail, or
//! sharing a head, are either both inside or both outside the set. Passages
//! are closed under union, intersection and difference, and every passage is
//! a disjoint union of minimal passages. This crate computes minimal passages,
//! counts and enumerates passages and passage partitionings, classifies
//! vertices relative to a partitioning, builds passage graphs, and selects
//! edges from a weighted graph to trade accuracy against passage size.

pub mod approx;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod graph;
pub mod io;
pub mod passage;
pub mod passage_graph;
mod union_find;
pub mod weighted;

pub use approx::{
    accuracy, average_size, biggest_size, optimize, ApproxSolution, Mode, PartitionQuality, Rational,
    Thresholds,
};
pub use combinatorics::{bell, count, enumerate_partitionings, enumerate_passages, Limited, PassageCount};
pub use error::{Error, Result};
pub use graph::{initial_vertices, terminal_vertices, Edge, EdgeSet, Graph, GraphBuilder, VertexId};
pub use io::{graph_to_json, parse_graph, serialize_graph};
pub use passage::{
    closure, decompose, fixpoint_step, is_passage, minimal_passage_of, minimal_passages, same_passage,
    validate_partitioning, Passage, PassagePartitioning,
};
pub use passage_graph::{
    boundary, build_passage_graph, classify_vertices, to_dot, Boundary, DotOptions, LabelMode, PassageGraph,
    VertexClassification,
};
pub use weighted::{edge_probability, parse_weighted_graph, Weight, WeightedGraph};
