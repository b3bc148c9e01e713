//! Brute-force oracles shared by the integration suites. Everything here
//! works on plain index pairs and bitmasks and never calls into the library's
//! algorithms, only its graph constructor for conversion.

#![allow(dead_code)]

use std::collections::BTreeSet;

use passages::{Edge, EdgeSet, Graph, Passage, PassagePartitioning};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

/// A small graph as sorted index pairs; subsets are bitmasks over `edges`.
#[derive(Debug, Clone)]
pub struct Plain {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn vertex_name(i: usize) -> String {
    format!("v{i:02}")
}

impl Plain {
    pub fn random(rng: &mut StdRng, max_vertices: usize, max_edges: usize) -> Plain {
        let n = rng.gen_range(1..=max_vertices);
        let mut all: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        all.shuffle(rng);
        let m = rng.gen_range(0..=max_edges.min(all.len()));
        let mut edges: Vec<_> = all.into_iter().take(m).collect();
        edges.sort_unstable();
        Plain { n, edges }
    }

    pub fn full_mask(&self) -> u32 {
        if self.edges.is_empty() {
            0
        } else {
            u32::MAX >> (32 - self.edges.len())
        }
    }

    pub fn to_graph(&self) -> Graph {
        let names: Vec<String> = (0..self.n).map(vertex_name).collect();
        Graph::from_names(
            names.iter().map(String::as_str),
            self.edges.iter().map(|&(x, y)| (names[x].as_str(), names[y].as_str())),
        )
        .unwrap()
    }

    pub fn members(&self, mask: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |i| mask >> i & 1 == 1)
    }

    /// Literal passage predicate: for every `(x, y)` in `P`, every edge of `E`
    /// leaving `x` or entering `y` lies in `P`.
    pub fn is_passage(&self, mask: u32) -> bool {
        self.members(mask).all(|i| {
            let (x, y) = self.edges[i];
            self.edges
                .iter()
                .enumerate()
                .all(|(j, &(x2, y2))| (x2 != x && y2 != y) || mask >> j & 1 == 1)
        })
    }

    pub fn tails(&self, mask: u32) -> BTreeSet<usize> {
        self.members(mask).map(|i| self.edges[i].0).collect()
    }

    pub fn heads(&self, mask: u32) -> BTreeSet<usize> {
        self.members(mask).map(|i| self.edges[i].1).collect()
    }

    /// `((π₁(S) × V) ∪ (V × π₂(S))) ∩ E`.
    pub fn fixpoint_image(&self, mask: u32) -> u32 {
        let tails = self.tails(mask);
        let heads = self.heads(mask);
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, (x, y))| tails.contains(x) || heads.contains(y))
            .fold(0, |m, (j, _)| m | 1 << j)
    }

    /// Repeats the extension step from `seed` until nothing changes.
    pub fn closure(&self, seed: u32) -> u32 {
        let mut current = seed;
        loop {
            let next = self.fixpoint_image(current) | current;
            if next == current {
                return current;
            }
            current = next;
        }
    }

    pub fn all_passages(&self) -> Vec<u32> {
        (0..=self.full_mask()).filter(|&m| self.is_passage(m)).collect()
    }

    /// Non-empty passages without a non-empty strict sub-passage.
    pub fn minimal_passages(&self, passages: &[u32]) -> Vec<u32> {
        passages
            .iter()
            .copied()
            .filter(|&p| p != 0 && !passages.iter().any(|&q| q != 0 && q != p && q & p == q))
            .collect()
    }

    pub fn mask_of(&self, g: &Graph, edges: &BTreeSet<Edge>) -> u32 {
        edges.iter().fold(0, |m, &e| {
            let (x, y) = g.edge_names(e);
            let pair = (parse_index(x), parse_index(y));
            let i = self.edges.binary_search(&pair).expect("edge belongs to the oracle graph");
            m | 1 << i
        })
    }

    pub fn edge_set(&self, g: &Graph, mask: u32) -> EdgeSet {
        let edges: Vec<Edge> = self
            .members(mask)
            .map(|i| {
                let (x, y) = self.edges[i];
                g.edge_by_names(&vertex_name(x), &vertex_name(y)).unwrap()
            })
            .collect();
        EdgeSet::new(g, edges).unwrap()
    }

    pub fn passage(&self, g: &Graph, mask: u32) -> Passage {
        Passage::new(self.edge_set(g, mask)).expect("oracle passage")
    }
}

pub fn parse_index(name: &str) -> usize {
    name[1..].parse().unwrap()
}

/// Partitioning as a set of masks, for order-insensitive comparison.
pub fn partition_masks(plain: &Plain, pp: &PassagePartitioning) -> BTreeSet<u32> {
    pp.parts().iter().map(|p| plain.mask_of(pp.graph(), p.edges())).collect()
}

/// Bell numbers from `B(n+1) = Σ C(n, i) B(i)`.
pub fn bell_by_binomials(max: usize) -> Vec<u128> {
    let mut bell = vec![1u128];
    for n in 0..max {
        let mut binom = 1u128;
        let mut next = 0u128;
        for (i, b) in bell.iter().enumerate().take(n + 1) {
            next += binom * b;
            binom = binom * (n - i) as u128 / (i + 1) as u128;
        }
        bell.push(next);
    }
    bell
}

/// A uniformly drawn restricted-growth string (not uniform over partitions).
pub fn random_blocks(rng: &mut StdRng, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut max = 0;
    for i in 0..k {
        let b = if i == 0 { 0 } else { rng.gen_range(0..=max + 1) };
        max = max.max(b);
        out.push(b);
    }
    out
}

/// A chain `v00 -> v01 -> ...` with `len` edges, each its own minimal passage.
pub fn chain(len: usize) -> Graph {
    let names: Vec<String> = (0..=len).map(vertex_name).collect();
    Graph::from_names([], (0..len).map(|i| (names[i].as_str(), names[i + 1].as_str()))).unwrap()
}
