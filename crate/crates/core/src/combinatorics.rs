//! Counting and bounded enumeration of passages and passage partitionings.
//!
//! A graph with `k` minimal passages has exactly `2^k` passages (every union
//! of minimal passages) and `B_k` partitionings (every set partition of the
//! minimal passages, each block merged into one passage).

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::graph::{Edge, Graph};
use crate::passage::{minimal_passages, Passage, PassagePartitioning};

/// The `k`-th Bell number, via the Bell triangle.
pub fn bell(k: usize) -> BigUint {
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("rows are non-empty").clone());
        for value in &row {
            let sum = next.last().expect("just pushed") + value;
            next.push(sum);
        }
        row = next;
    }
    row.swap_remove(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassageCount {
    /// Number of minimal non-empty passages, `k`.
    pub minimal: usize,
    /// `2^k`.
    pub passages: BigUint,
    /// `B_k`.
    pub partitionings: BigUint,
}

pub fn count(g: &Graph) -> PassageCount {
    count_from_minimal(minimal_passages(g).len())
}

pub fn count_from_minimal(k: usize) -> PassageCount {
    PassageCount {
        minimal: k,
        passages: BigUint::one() << k,
        partitionings: bell(k),
    }
}

/// Caps an enumeration at `limit` items and records whether anything was cut off.
#[derive(Debug, Clone)]
pub struct Limited<I> {
    inner: I,
    remaining: usize,
    truncated: bool,
}

impl<I: Iterator> Limited<I> {
    pub fn new(inner: I, limit: usize) -> Self {
        Limited {
            inner,
            remaining: limit,
            truncated: false,
        }
    }

    /// True once the limit was reached while more items remained.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }
}

impl<I: Iterator> Iterator for Limited<I> {
    type Item = I::Item;

    fn next(&mut self) -> Option<I::Item> {
        if self.remaining == 0 {
            if !self.truncated && self.inner.next().is_some() {
                self.truncated = true;
            }
            return None;
        }
        let item = self.inner.next()?;
        self.remaining -= 1;
        Some(item)
    }
}

/// Bitset of reachable subset sums, bits `0..=max`.
#[derive(Clone)]
struct SumSet {
    words: Vec<u64>,
}

impl SumSet {
    fn zero_only(max: usize) -> Self {
        let mut words = vec![0u64; max / 64 + 1];
        words[0] = 1;
        SumSet { words }
    }

    fn contains(&self, s: usize) -> bool {
        self.words
            .get(s / 64)
            .is_some_and(|w| (w >> (s % 64)) & 1 == 1)
    }

    /// `self ∪ (self + shift)`, truncated to the bitset width.
    fn with_shift(&self, shift: usize) -> Self {
        let mut words = self.words.clone();
        let (ws, bs) = (shift / 64, shift % 64);
        for i in (ws..words.len()).rev() {
            let src = i - ws;
            let mut v = self.words[src] << bs;
            if bs != 0 && src > 0 {
                v |= self.words[src - 1] >> (64 - bs);
            }
            words[i] |= v;
        }
        SumSet { words }
    }
}

struct Frame {
    index: usize,
    remaining: usize,
    stage: u8,
    included: bool,
}

/// Depth-first walk over subsets of minimal passages whose sizes add up to a
/// fixed target. Including a part is tried before excluding it, which yields
/// the unions in lexicographic order of their sorted edge lists.
struct LevelWalk {
    /// `reach[i]`: sums reachable with parts `i..`.
    reach: Vec<SumSet>,
    stack: Vec<Frame>,
    chosen: Vec<usize>,
}

impl LevelWalk {
    fn new(sizes: &[usize], target: usize) -> Option<Self> {
        let k = sizes.len();
        let mut reach = vec![SumSet::zero_only(target); k + 1];
        for i in (0..k).rev() {
            reach[i] = if sizes[i] <= target {
                reach[i + 1].with_shift(sizes[i])
            } else {
                reach[i + 1].clone()
            };
        }
        if !reach[0].contains(target) {
            return None;
        }
        Some(LevelWalk {
            reach,
            stack: vec![Frame {
                index: 0,
                remaining: target,
                stage: 0,
                included: false,
            }],
            chosen: Vec::new(),
        })
    }

    fn next(&mut self, sizes: &[usize]) -> Option<Vec<usize>> {
        let k = sizes.len();
        loop {
            let top = self.stack.last_mut()?;
            if top.index == k {
                let out = self.chosen.clone();
                if top.included {
                    self.chosen.pop();
                }
                self.stack.pop();
                return Some(out);
            }
            let (index, remaining) = (top.index, top.remaining);
            match top.stage {
                0 => {
                    top.stage = 1;
                    let size = sizes[index];
                    if size <= remaining && self.reach[index + 1].contains(remaining - size) {
                        self.chosen.push(index);
                        self.stack.push(Frame {
                            index: index + 1,
                            remaining: remaining - size,
                            stage: 0,
                            included: true,
                        });
                    }
                }
                1 => {
                    top.stage = 2;
                    if self.reach[index + 1].contains(remaining) {
                        self.stack.push(Frame {
                            index: index + 1,
                            remaining,
                            stage: 0,
                            included: false,
                        });
                    }
                }
                _ => {
                    if top.included {
                        self.chosen.pop();
                    }
                    self.stack.pop();
                }
            }
        }
    }
}

/// All passages of a graph by increasing size, ties in lexicographic order.
pub struct PassageIter {
    graph: Graph,
    minimal: Vec<Passage>,
    sizes: Vec<usize>,
    level: usize,
    walk: Option<LevelWalk>,
}

impl PassageIter {
    pub fn new(g: &Graph) -> Self {
        let minimal = minimal_passages(g).into_parts();
        let sizes = minimal.iter().map(Passage::len).collect();
        PassageIter {
            graph: g.clone(),
            minimal,
            sizes,
            level: 0,
            walk: None,
        }
    }
}

impl Iterator for PassageIter {
    type Item = Passage;

    fn next(&mut self) -> Option<Passage> {
        loop {
            if let Some(walk) = &mut self.walk {
                if let Some(chosen) = walk.next(&self.sizes) {
                    let edges: BTreeSet<Edge> = chosen
                        .iter()
                        .flat_map(|&i| self.minimal[i].edges().iter().copied())
                        .collect();
                    return Some(Passage::new_unchecked(&self.graph, edges));
                }
                self.walk = None;
                self.level += 1;
            }
            if self.level > self.graph.edge_count() {
                return None;
            }
            self.walk = LevelWalk::new(&self.sizes, self.level);
            if self.walk.is_none() {
                self.level += 1;
            }
        }
    }
}

/// Passages in order of increasing edge count, then lexicographic.
pub fn enumerate_passages(g: &Graph, limit: usize) -> Limited<PassageIter> {
    Limited::new(PassageIter::new(g), limit)
}

/// Restricted-growth strings of length `k` in lexicographic order.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    current: Option<Vec<usize>>,
}

impl RestrictedGrowth {
    pub fn new(k: usize) -> Self {
        RestrictedGrowth {
            current: Some(vec![0; k]),
        }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        // prefix_max[i] = max(next[..i])
        let mut prefix_max = vec![0usize; next.len()];
        for i in 1..next.len() {
            prefix_max[i] = prefix_max[i - 1].max(next[i - 1]);
        }
        for i in (1..next.len()).rev() {
            if next[i] <= prefix_max[i] {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|x| *x = 0);
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// All passage partitionings, one per set partition of the minimal passages.
pub struct PartitioningIter {
    graph: Graph,
    minimal: Vec<Passage>,
    strings: RestrictedGrowth,
}

impl PartitioningIter {
    pub fn new(g: &Graph) -> Self {
        let minimal = minimal_passages(g).into_parts();
        let strings = RestrictedGrowth::new(minimal.len());
        PartitioningIter {
            graph: g.clone(),
            minimal,
            strings,
        }
    }
}

impl Iterator for PartitioningIter {
    type Item = PassagePartitioning;

    fn next(&mut self) -> Option<PassagePartitioning> {
        let rgs = self.strings.next()?;
        let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut parts: Vec<BTreeSet<Edge>> = vec![BTreeSet::new(); blocks];
        for (i, &b) in rgs.iter().enumerate() {
            parts[b].extend(self.minimal[i].edges().iter().copied());
        }
        let parts = parts
            .into_iter()
            .map(|edges| Passage::new_unchecked(&self.graph, edges))
            .collect();
        Some(PassagePartitioning::new_unchecked(&self.graph, parts))
    }
}

/// Passage partitionings in restricted-growth order; the first is `{E}`.
pub fn enumerate_partitionings(g: &Graph, limit: usize) -> Limited<PartitioningIter> {
    Limited::new(PartitioningIter::new(g), limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_graph;

    fn chain(len: usize) -> Graph {
        let text: String = (0..len).map(|i| format!("v{i} v{}\n", i + 1)).collect();
        parse_graph(&text).unwrap()
    }

    #[test]
    fn bell_values() {
        let got: Vec<BigUint> = (0..=8).map(bell).collect();
        let want: Vec<BigUint> = [1u32, 1, 2, 5, 15, 52, 203, 877, 4140]
            .into_iter()
            .map(BigUint::from)
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn counts() {
        let f1 = parse_graph("a b\na c\nb e\nb f\nc f\nc d\nd d\nd f\n").unwrap();
        let c = count(&f1);
        assert_eq!((c.minimal, c.passages, c.partitionings), (2, 4u32.into(), 2u32.into()));
        let c = count(&chain(8));
        assert_eq!((c.passages, c.partitionings), (256u32.into(), 4140u32.into()));
        let c = count(&parse_graph("node z").unwrap());
        assert_eq!((c.minimal, c.passages, c.partitionings), (0, 1u32.into(), 1u32.into()));
    }

    #[test]
    fn restricted_growth_strings() {
        let all: Vec<_> = RestrictedGrowth::new(3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
        assert_eq!(RestrictedGrowth::new(0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(RestrictedGrowth::new(6).count(), 203);
    }

    #[test]
    fn sum_set_shift_crosses_words() {
        let s = SumSet::zero_only(200).with_shift(70).with_shift(65);
        for x in [0, 65, 70, 135] {
            assert!(s.contains(x));
        }
        assert!(!s.contains(64));
        assert!(!s.contains(201));
    }

    #[test]
    fn passage_order_on_f1() {
        let g = parse_graph("a b\na c\nb e\nb f\nc f\nc d\nd d\nd f\n").unwrap();
        let mut it = enumerate_passages(&g, 100);
        let sizes: Vec<usize> = it.by_ref().map(|p| p.len()).collect();
        assert_eq!(sizes, [0, 2, 6, 8]);
        assert!(!it.is_truncated());
    }

    #[test]
    fn truncation() {
        let g = chain(5);
        let mut it = enumerate_passages(&g, 10);
        assert_eq!(it.by_ref().count(), 10);
        assert!(it.is_truncated());
        let mut exact = enumerate_passages(&g, 32);
        assert_eq!(exact.by_ref().count(), 32);
        assert!(!exact.is_truncated());
    }

    #[test]
    fn lexicographic_within_level() {
        // parts {(a,x),(a,y)} < {(b,z)} < {(c,w),(c,q)}: size-3 unions must
        // come out as the sorted edge lists order.
        let g = parse_graph("a x\na y\nb z\nc w\nc q\nd e\n").unwrap();
        let lists: Vec<Vec<Edge>> = enumerate_passages(&g, 1000)
            .map(|p| p.edges().iter().copied().collect())
            .collect();
        for pair in lists.windows(2) {
            assert!((pair[0].len(), &pair[0]) < (pair[1].len(), &pair[1]));
        }
        assert_eq!(lists.len(), 16);
    }

    #[test]
    fn partitionings_of_f1() {
        let g = parse_graph("a b\na c\nb e\nb f\nc f\nc d\nd d\nd f\n").unwrap();
        let all: Vec<_> = enumerate_partitionings(&g, 100).collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].len(), 1);
        assert_eq!(all[1], minimal_passages(&g));
    }

    #[test]
    fn edgeless_graph_has_one_empty_partitioning() {
        let g = parse_graph("node z").unwrap();
        let all: Vec<_> = enumerate_partitionings(&g, 10).collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
        let passages: Vec<_> = enumerate_passages(&g, 10).collect();
        assert_eq!(passages.len(), 1);
        assert!(passages[0].is_empty());
    }
}
