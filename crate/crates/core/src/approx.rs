//! Quality of passage partitionings and accuracy-driven edge selection over
//! weighted graphs.
//!
//! Given weights on vertex pairs, choosing a set of edges `E'` fixes the
//! minimal passage partitioning of `(V, E')`. Dropping low-weight pairs can
//! split a large passage; [`optimize`] trades accuracy for smaller passages
//! under optional bounds on the average and the biggest passage size.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::io::{edge_pairs, EdgesDoc};
use crate::passage::{minimal_passages, PassagePartitioning};
use crate::weighted::WeightedGraph;

pub type Rational = Ratio<i64>;

/// Largest number of nonzero-weight pairs accepted by [`Mode::Exact`].
pub const EXACT_MAX_PAIRS: usize = 20;

/// `|E| / n`.
pub fn average_size(pp: &PassagePartitioning) -> Result<Rational> {
    if pp.is_empty() {
        return Err(Error::EmptyPartitioning);
    }
    let edges: usize = pp.parts().iter().map(|p| p.len()).sum();
    Ok(Ratio::new(edges as i64, pp.len() as i64))
}

/// Size of the largest part.
pub fn biggest_size(pp: &PassagePartitioning) -> Result<usize> {
    pp.parts()
        .iter()
        .map(|p| p.len())
        .max()
        .ok_or(Error::EmptyPartitioning)
}

fn accuracy_from_totals(chosen: i64, positive: i64) -> Result<Rational> {
    if positive == 0 {
        return match chosen.cmp(&0) {
            Ordering::Equal => Ok(Ratio::from_integer(1)),
            Ordering::Less => Err(Error::DegenerateAccuracy),
            // positive chosen total implies a positive weight exists
            Ordering::Greater => unreachable!("positive total without positive weights"),
        };
    }
    Ok(Ratio::new(chosen, positive))
}

/// Total weight of `chosen` divided by the best achievable total, which is
/// the sum of all positive weights.
pub fn accuracy(wg: &WeightedGraph, chosen: &BTreeSet<Edge>) -> Result<Rational> {
    let n = wg.vertex_count();
    let mut total = 0i64;
    for &e in chosen {
        for v in [e.tail, e.head] {
            if v.index() >= n {
                return Err(Error::UnknownVertex(format!("#{}", v.index())));
            }
        }
        total += wg.weight(e).micros();
    }
    accuracy_from_totals(total, positive_total(wg))
}

fn positive_total(wg: &WeightedGraph) -> i64 {
    wg.weights()
        .map(|(_, w)| w.micros())
        .filter(|&m| m > 0)
        .sum()
}

/// Optional upper bounds on average and biggest passage size. A missing
/// bound imposes nothing; the empty partitioning satisfies any bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Thresholds {
    pub tau_av: Option<Rational>,
    pub tau_big: Option<usize>,
}

impl Thresholds {
    pub fn unconstrained() -> Self {
        Thresholds::default()
    }

    /// Whether a partitioning with `parts` parts over `edges` edges and largest
    /// part `big` satisfies the bounds.
    pub fn admits(&self, edges: usize, parts: usize, big: usize) -> bool {
        if parts == 0 {
            return true;
        }
        let av_ok = self
            .tau_av
            .is_none_or(|tau| Ratio::new(edges as i64, parts as i64) <= tau);
        let big_ok = self.tau_big.is_none_or(|tau| big <= tau);
        av_ok && big_ok
    }

    pub fn admits_partitioning(&self, pp: &PassagePartitioning) -> bool {
        let edges = pp.parts().iter().map(|p| p.len()).sum();
        let big = pp.parts().iter().map(|p| p.len()).max().unwrap_or(0);
        self.admits(edges, pp.len(), big)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Greedy,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Greedy => "greedy",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Mode, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "greedy" => Ok(Mode::Greedy),
            other => Err(format!("unknown mode `{other}` (expected exact or greedy)")),
        }
    }
}

/// `average_size` and `biggest_size` are `None` for the empty partitioning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionQuality {
    pub average_size: Option<Rational>,
    pub biggest_size: Option<usize>,
    pub accuracy: Rational,
}

#[derive(Debug, Clone)]
pub struct ApproxSolution {
    pub chosen: BTreeSet<Edge>,
    /// `(V, chosen)`.
    pub graph: Graph,
    /// Minimal passage partitioning of [`ApproxSolution::graph`].
    pub partitioning: PassagePartitioning,
    pub quality: PartitionQuality,
    pub mode: Mode,
}

impl ApproxSolution {
    fn new(wg: &WeightedGraph, chosen: BTreeSet<Edge>, mode: Mode) -> Result<Self> {
        let graph = wg.graph_with(chosen.iter().copied());
        let partitioning = minimal_passages(&graph);
        let quality = PartitionQuality {
            average_size: average_size(&partitioning).ok(),
            biggest_size: biggest_size(&partitioning).ok(),
            accuracy: accuracy(wg, &chosen)?,
        };
        Ok(ApproxSolution {
            chosen,
            graph,
            partitioning,
            quality,
            mode,
        })
    }

    pub fn to_doc(&self) -> ApproxDoc {
        let q = &self.quality;
        ApproxDoc {
            mode: self.mode.to_string(),
            chosen: edge_pairs(&self.graph, &self.chosen),
            parts: self
                .partitioning
                .parts()
                .iter()
                .map(|p| EdgesDoc {
                    edges: edge_pairs(&self.graph, p.edges()),
                })
                .collect(),
            av: q.average_size.map(|r| format_decimal(r, 6)),
            big: q.biggest_size.map(|b| b.to_string()),
            acc: format_decimal(q.accuracy, 6),
            acc_exact: q.accuracy.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxDoc {
    pub mode: String,
    pub chosen: Vec<[String; 2]>,
    pub parts: Vec<EdgesDoc>,
    pub av: Option<String>,
    pub big: Option<String>,
    pub acc: String,
    pub acc_exact: String,
}

/// Maximizes accuracy subject to `thresholds`.
///
/// [`Mode::Exact`] scores every subset of the nonzero-weight pairs and keeps
/// the best feasible one, ties going to the lexicographically smallest edge
/// list. [`Mode::Greedy`] starts from the positive pairs and, while the bounds
/// fail, drops the lowest-weight edge of the largest passage.
pub fn optimize(wg: &WeightedGraph, thresholds: Thresholds, mode: Mode) -> Result<ApproxSolution> {
    let chosen = match mode {
        Mode::Exact => exact_choice(wg, thresholds)?,
        Mode::Greedy => greedy_choice(wg, thresholds),
    };
    ApproxSolution::new(wg, chosen, mode)
}

/// Sorted-list lexicographic comparison of two subsets given as bitmasks over
/// an ordered candidate list.
fn lex_cmp_masks(a: u32, b: u32) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ia, ib) = (a.trailing_zeros(), b.trailing_zeros());
        if ia != ib {
            // the smaller candidate index is the smaller edge
            return ia.cmp(&ib);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

fn exact_choice(wg: &WeightedGraph, thresholds: Thresholds) -> Result<BTreeSet<Edge>> {
    let candidates = wg.nonzero_pairs();
    let m = candidates.len();
    if m > EXACT_MAX_PAIRS {
        return Err(Error::InstanceTooLarge {
            pairs: m,
            max: EXACT_MAX_PAIRS,
        });
    }
    // neighbours[i]: candidates sharing a tail or a head with candidate i
    let neighbours: Vec<u32> = candidates
        .iter()
        .map(|(e, _)| {
            candidates
                .iter()
                .enumerate()
                .filter(|(_, (f, _))| f.tail == e.tail || f.head == e.head)
                .fold(0u32, |mask, (j, _)| mask | (1 << j))
        })
        .collect();
    let weights: Vec<i64> = candidates.iter().map(|(_, w)| w.micros()).collect();

    let mut best: Option<(i64, u32)> = None;
    for mask in 0u32..(1u32 << m) {
        let (parts, big) = component_sizes(mask, &neighbours);
        if !thresholds.admits(mask.count_ones() as usize, parts, big) {
            continue;
        }
        let score: i64 = bits(mask).map(|i| weights[i]).sum();
        let better = match best {
            None => true,
            Some((s, b)) => score > s || (score == s && lex_cmp_masks(mask, b) == Ordering::Less),
        };
        if better {
            best = Some((score, mask));
        }
    }
    let (_, mask) = best.expect("the empty choice is always feasible");
    Ok(bits(mask).map(|i| candidates[i].0).collect())
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(i)
    })
}

/// Number of minimal passages and the size of the largest one for the edge
/// subset `mask`.
fn component_sizes(mask: u32, neighbours: &[u32]) -> (usize, usize) {
    let mut unseen = mask;
    let (mut parts, mut big) = (0, 0);
    while unseen != 0 {
        let start = unseen & unseen.wrapping_neg();
        unseen &= !start;
        let mut frontier = start;
        let mut size = 0;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            size += 1;
            let fresh = neighbours[i] & unseen;
            unseen &= !fresh;
            frontier |= fresh;
        }
        parts += 1;
        big = big.max(size);
    }
    (parts, big)
}

fn greedy_choice(wg: &WeightedGraph, thresholds: Thresholds) -> BTreeSet<Edge> {
    let mut chosen: BTreeSet<Edge> = wg.positive_pairs().into_iter().map(|(e, _)| e).collect();
    loop {
        let graph = wg.graph_with(chosen.iter().copied());
        let pp = minimal_passages(&graph);
        if thresholds.admits_partitioning(&pp) {
            return chosen;
        }
        // first part of maximal size in partitioning order
        let largest = pp
            .parts()
            .iter()
            .rev()
            .max_by_key(|p| p.len())
            .expect("infeasible partitionings are non-empty");
        let victim: Edge = largest
            .edges()
            .iter()
            .copied()
            .min_by_key(|&e| (wg.weight(e), e))
            .expect("parts are non-empty");
        chosen.remove(&victim);
    }
}

/// Decimal rendering rounded half away from zero.
pub fn format_decimal(r: Rational, places: u32) -> String {
    let scale = 10i128.pow(places);
    let num = i128::from(*r.numer()) * scale;
    let den = i128::from(*r.denom());
    let (q, rem) = (num / den, num % den);
    let rounded = if 2 * rem.abs() >= den.abs() {
        q + num.signum() * den.signum()
    } else {
        q
    };
    let negative = rounded < 0;
    let abs = rounded.unsigned_abs();
    let int = abs / scale as u128;
    let frac = abs % scale as u128;
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0width$}", width = places as usize)
    }
}

/// Parses `3`, `2.5`, `-0.25` or `5/2`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        line: 0,
        message: format!("malformed number `{s}`"),
    };
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !digits(int) || !digits(frac) || frac.len() > 12 {
        return Err(bad());
    }
    let scale = 10i64.pow(frac.len() as u32);
    let int_value: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let frac_value: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = int_value
        .checked_mul(scale)
        .and_then(|v| v.checked_add(frac_value))
        .ok_or_else(bad)?;
    let r = Ratio::new(num, scale);
    Ok(if negative { -r } else { r })
}

/// Total weight of a choice, exposed for callers checking optimality.
pub fn chosen_weight(wg: &WeightedGraph, chosen: &BTreeSet<Edge>) -> Rational {
    let micros: i64 = chosen.iter().map(|&e| wg.weight(e).micros()).sum();
    Ratio::new(micros, crate::weighted::WEIGHT_SCALE)
}

/// True iff `chosen` is exactly the set of positive-weight pairs.
pub fn is_ideal_choice(wg: &WeightedGraph, chosen: &BTreeSet<Edge>) -> bool {
    let positives: BTreeSet<Edge> = wg.positive_pairs().into_iter().map(|(e, _)| e).collect();
    &positives == chosen
}

impl PartitionQuality {
    pub fn accuracy_is_perfect(&self) -> bool {
        self.accuracy == Ratio::from_integer(1)
    }
}
