//! Solver output shared by every algorithm.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::euler::{EulerianSubgraph, Tour};
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::matching::PerfectMatching;

/// A rational with denominator 3, stored as its numerator. Every bound in
/// this crate has this form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Thirds(pub i64);

impl Thirds {
    pub fn from_int(x: i64) -> Self {
        Thirds(3 * x)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 3.0
    }

    /// Largest integer not above the value.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(3)
    }

    /// Whether an integer count is at most this value.
    pub fn admits(self, count: usize) -> bool {
        3 * count as i64 <= self.0
    }
}

impl fmt::Display for Thirds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 3 == 0 {
            write!(f, "{}", self.0 / 3)
        } else {
            write!(f, "{}/3", self.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Ms,
    Matchcomb,
    Bridges,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Ms, Algorithm::Matchcomb, Algorithm::Bridges, Algorithm::Exact];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Ms => "ms",
            Algorithm::Matchcomb => "matchcomb",
            Algorithm::Bridges => "bridges",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown algorithm {s:?}")))
    }
}

/// A cycle given by its vertex sequence and the edges between consecutive
/// vertices (the last edge closes the cycle).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Bridge bookkeeping for graphs solved through their bridgeless parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeSummary {
    pub bridges: Vec<EdgeId>,
    /// Components left after deleting the bridges that are single vertices.
    pub singletons: usize,
    pub lower_bound: usize,
}

/// Per-matching results of the convex-combination solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinationSummary {
    /// `(λ, edges of the assembled subgraph)` per matching, in combination
    /// order.
    pub terms: Vec<(f64, usize)>,
    pub weighted_average: f64,
    pub rainbows_removed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub h: EulerianSubgraph,
    pub tour: Tour,
    pub h_edges: usize,
    pub bound: Thirds,
    /// The perfect matching behind `h`, on the cubic graph that was matched
    /// (the input, or its degree-2 contraction when `contraction` is set).
    pub matching_used: Option<PerfectMatching>,
    pub matching_weight: Option<i64>,
    pub r_set: Vec<EdgeId>,
    pub tree_star: Vec<EdgeId>,
    pub cycle_cover: Option<Vec<Cycle>>,
    /// For each contracted edge, the input edges of its path in order from
    /// the contracted edge's first endpoint.
    pub contraction: Option<Vec<Vec<EdgeId>>>,
    pub bridge_summary: Option<BridgeSummary>,
    pub combination: Option<CombinationSummary>,
    pub wall_time: Duration,
}

impl SolveReport {
    /// A report carrying only the subgraph, tour and bound.
    pub fn basic(algorithm: Algorithm, h: EulerianSubgraph, tour: Tour, bound: Thirds) -> Self {
        SolveReport {
            algorithm,
            h_edges: h.edge_count(),
            h,
            tour,
            bound,
            matching_used: None,
            matching_weight: None,
            r_set: Vec::new(),
            tree_star: Vec::new(),
            cycle_cover: None,
            contraction: None,
            bridge_summary: None,
            combination: None,
            wall_time: Duration::ZERO,
        }
    }
}

/// The cycles formed by edges of multiplicity exactly 1 in `h`.
///
/// When `h` comes from a perfect matching of a cubic graph these edges are
/// the complement of the matching, so the cycles cover every vertex. A
/// vertex with two single edges lies on exactly one cycle; other vertices
/// are skipped.
pub fn extract_cycle_cover(g: &Multigraph, h: &EulerianSubgraph) -> Vec<Cycle> {
    cycles_of(g, |e| h.get(e) == 1)
}

/// Cycles through the vertices of degree 2 in the edge set `single`, each
/// starting at its smallest vertex.
pub fn cycles_of(g: &Multigraph, single: impl Fn(EdgeId) -> bool) -> Vec<Cycle> {
    let mut used = vec![false; g.m()];
    let mut cycles = Vec::new();
    for start in 0..g.n() {
        let deg = g.incident(start).iter().filter(|&&(e, _)| single(e)).count();
        if deg != 2 || g.incident(start).iter().any(|&(e, _)| single(e) && used[e]) {
            continue;
        }
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        let mut at = start;
        loop {
            let next = g.incident(at).iter().find(|&&(e, _)| single(e) && !used[e]).copied();
            let Some((e, w)) = next else { break };
            used[e] = true;
            edges.push(e);
            if w == start {
                break;
            }
            vertices.push(w);
            at = w;
        }
        cycles.push(Cycle { vertices, edges });
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirds_arithmetic() {
        let b = Thirds(34);
        assert_eq!(b.floor(), 11);
        assert!(b.admits(11));
        assert!(!b.admits(12));
        assert_eq!(b.to_string(), "34/3");
        assert_eq!(Thirds::from_int(12).to_string(), "12");
        assert_eq!(Thirds(-1).floor(), -1);
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        assert!("christofides".parse::<Algorithm>().is_err());
    }

    #[test]
    fn cycle_cover_of_two_cycles() {
        // two triangles plus a doubled connector
        let g = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]).unwrap();
        let h = EulerianSubgraph::new(&g, vec![1, 1, 1, 1, 1, 1, 2]).unwrap();
        let cover = extract_cycle_cover(&g, &h);
        assert_eq!(cover.len(), 2);
        assert_eq!(cover[0].vertices, vec![0, 1, 2]);
        assert_eq!(cover[1].edges, vec![3, 4, 5]);
    }

    #[test]
    fn parallel_pair_is_a_two_cycle() {
        let g = Multigraph::new(2, vec![(0, 1); 3]).unwrap();
        let h = EulerianSubgraph::new(&g, vec![0, 1, 1]).unwrap();
        let cover = extract_cycle_cover(&g, &h);
        assert_eq!(cover.len(), 1);
        assert_eq!(cover[0].edges, vec![1, 2]);
    }
}
