//! Weighted input for approximate passages: a vertex set plus a sparse weight
//! function on vertex pairs with values in `[-1, 1]`.
//!
//! Weights are stored exactly as integer millionths. Pairs without a stored
//! weight have weight 0.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{validate_name, Edge, Graph, VertexId, VertexTable, NODE_KEYWORD};
use crate::io::{is_skipped, line_tokens};

/// Fixed-point scale of [`Weight`].
pub const WEIGHT_SCALE: i64 = 1_000_000;

/// A weight in `[-1, 1]` with six exact decimal places.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(i32);

impl Weight {
    pub const ZERO: Weight = Weight(0);

    pub fn from_micros(micros: i64) -> Result<Weight> {
        if micros.abs() > WEIGHT_SCALE {
            return Err(Error::WeightOutOfRange(format_micros(micros)));
        }
        Ok(Weight(micros as i32))
    }

    pub fn micros(self) -> i64 {
        i64::from(self.0)
    }

    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.micros(), WEIGHT_SCALE)
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// `(w + 1) / 2`, read as the likelihood that the edge exists.
    pub fn probability(self) -> Ratio<i64> {
        Ratio::new(self.micros() + WEIGHT_SCALE, 2 * WEIGHT_SCALE)
    }
}

/// `(w + 1) / 2` for an arbitrary rational `w`, rejecting values outside `[-1, 1]`.
pub fn edge_probability(w: Ratio<i64>) -> Result<Ratio<i64>> {
    let one = Ratio::from_integer(1);
    if w > one || w < -one {
        return Err(Error::WeightOutOfRange(w.to_string()));
    }
    Ok((w + one) / Ratio::from_integer(2))
}

fn format_micros(micros: i64) -> String {
    let sign = if micros < 0 { "-" } else { "" };
    let abs = micros.unsigned_abs();
    let int = abs / WEIGHT_SCALE as u64;
    let frac = abs % WEIGHT_SCALE as u64;
    if frac == 0 {
        format!("{sign}{int}")
    } else {
        let digits = format!("{frac:06}");
        format!("{sign}{int}.{}", digits.trim_end_matches('0'))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_micros(self.micros()))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts plain decimals such as `0.99`, `-1`, `+.5`. The value is range
    /// checked exactly before precision, so `1.0000001` is out of range.
    fn from_str(s: &str) -> Result<Weight> {
        let malformed = || Error::Parse {
            line: 0,
            message: format!("malformed weight `{s}`"),
        };
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if (int.is_empty() && frac.is_empty()) || !all_digits(int) || !all_digits(frac) {
            return Err(malformed());
        }
        let int = int.trim_start_matches('0');
        let frac = frac.trim_end_matches('0');
        let int_value = match int {
            "" => 0,
            "1" => 1,
            _ => return Err(Error::WeightOutOfRange(s.to_string())),
        };
        if int_value == 1 && !frac.is_empty() {
            return Err(Error::WeightOutOfRange(s.to_string()));
        }
        if frac.len() > 6 {
            return Err(Error::WeightPrecision(s.to_string()));
        }
        let frac_micros: i64 = if frac.is_empty() {
            0
        } else {
            format!("{frac:0<6}").parse().map_err(|_| malformed())?
        };
        let micros = int_value * WEIGHT_SCALE + frac_micros;
        Weight::from_micros(if negative { -micros } else { micros })
    }
}

/// `G_π = (V, π)` with π stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: VertexTable,
    weights: BTreeMap<Edge, Weight>,
}

impl WeightedGraph {
    /// Builds from name triples. Repeating a pair is an error.
    pub fn from_names<'a, V, W>(vertices: V, weights: W) -> Result<WeightedGraph>
    where
        V: IntoIterator<Item = &'a str>,
        W: IntoIterator<Item = (&'a str, &'a str, Weight)>,
    {
        let mut names = BTreeSet::new();
        for v in vertices {
            validate_name(v)?;
            names.insert(v.to_string());
        }
        let weights: Vec<_> = weights.into_iter().collect();
        for &(x, y, _) in &weights {
            validate_name(x)?;
            validate_name(y)?;
            names.insert(x.to_string());
            names.insert(y.to_string());
        }
        let table = VertexTable::new(names);
        let mut map = BTreeMap::new();
        for (x, y, w) in weights {
            let e = Edge::new(table.get(x).unwrap(), table.get(y).unwrap());
            if map.insert(e, w).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate pair ({x},{y})"),
                });
            }
        }
        Ok(WeightedGraph {
            vertices: table,
            weights: map,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices.get(name)
    }

    pub fn name(&self, v: VertexId) -> &str {
        self.vertices.name(v)
    }

    /// π(x, y); 0 for unlisted pairs.
    pub fn weight(&self, pair: Edge) -> Weight {
        self.weights.get(&pair).copied().unwrap_or(Weight::ZERO)
    }

    /// Stored weights in lexicographic pair order.
    pub fn weights(&self) -> impl Iterator<Item = (Edge, Weight)> + '_ {
        self.weights.iter().map(|(&e, &w)| (e, w))
    }

    pub fn nonzero_pairs(&self) -> Vec<(Edge, Weight)> {
        self.weights().filter(|&(_, w)| w != Weight::ZERO).collect()
    }

    pub fn positive_pairs(&self) -> Vec<(Edge, Weight)> {
        self.weights().filter(|&(_, w)| w.is_positive()).collect()
    }

    /// The graph `(V, chosen)` over this vertex set. Ids are shared with `self`.
    pub fn graph_with(&self, chosen: impl IntoIterator<Item = Edge>) -> Graph {
        Graph::from_table(self.vertices.clone(), chosen.into_iter().collect())
    }

    pub fn pair_names(&self, e: Edge) -> (&str, &str) {
        (self.name(e.tail), self.name(e.head))
    }
}

/// Parses `x y w` lines (`#` comments, `node z` for extra vertices).
pub fn parse_weighted_graph(text: &str) -> Result<WeightedGraph> {
    let mut vertices: Vec<&str> = Vec::new();
    let mut triples: Vec<(&str, &str, Weight)> = Vec::new();
    let mut seen: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if is_skipped(line) {
            continue;
        }
        let at_line = |e: Error| match e {
            Error::Parse { message, .. } => Error::Parse {
                line: lineno,
                message,
            },
            Error::InvalidVertexName(n) => Error::Parse {
                line: lineno,
                message: format!("invalid vertex name `{n}`"),
            },
            other => other,
        };
        let tokens = line_tokens(line.trim());
        match tokens.as_slice() {
            [kw, z] if *kw == NODE_KEYWORD => {
                validate_name(z).map_err(at_line)?;
                vertices.push(z);
            }
            [x, y, w] => {
                validate_name(x).map_err(at_line)?;
                validate_name(y).map_err(at_line)?;
                let w: Weight = w.parse().map_err(at_line)?;
                if let Some(first) = seen.insert((x, y), lineno) {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("duplicate pair ({x},{y}), first given on line {first}"),
                    });
                }
                triples.push((x, y, w));
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected `x y w` or `node z`, found `{}`", line.trim()),
                })
            }
        }
    }
    WeightedGraph::from_names(vertices, triples)
}
