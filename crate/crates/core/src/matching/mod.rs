//! Perfect matchings: exact minimum-weight solver, exhaustive enumeration
//! and the 3-cut test.

mod blossom;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, Vertex};

/// Default vertex budget for exhaustive enumeration oracles.
pub const DEFAULT_ENUM_BUDGET: usize = 20;

/// A set of edges covering every vertex exactly once, stored as sorted ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PerfectMatching {
    edges: Vec<EdgeId>,
}

impl PerfectMatching {
    pub fn new(g: &Multigraph, mut edges: Vec<EdgeId>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let mut covered = vec![false; g.n()];
        for &e in &edges {
            if e >= g.m() {
                return Err(Error::Precondition(format!("edge {e} does not exist")));
            }
            let (u, v) = g.endpoints(e);
            for x in [u, v] {
                if std::mem::replace(&mut covered[x], true) {
                    return Err(Error::Precondition(format!("vertex {x} is matched twice")));
                }
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(Error::Precondition(format!("vertex {v} is unmatched")));
        }
        Ok(PerfectMatching { edges })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Indicator vector over the `m` host edges.
    pub fn indicator(&self, m: usize) -> Vec<bool> {
        let mut x = vec![false; m];
        for &e in &self.edges {
            x[e] = true;
        }
        x
    }

    pub fn weight(&self, w: &WeightVector) -> i64 {
        self.edges.iter().map(|&e| w.get(e)).sum()
    }
}

/// One integer weight per host edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVector {
    w: Vec<i64>,
}

impl WeightVector {
    pub fn new(g: &Multigraph, w: Vec<i64>) -> Result<Self> {
        if w.len() != g.m() {
            return Err(Error::WeightLength { expected: g.m(), got: w.len() });
        }
        Ok(WeightVector { w })
    }

    pub fn uniform(g: &Multigraph, value: i64) -> Self {
        WeightVector { w: vec![value; g.m()] }
    }

    pub fn get(&self, e: EdgeId) -> i64 {
        self.w[e]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.w
    }

    pub fn total(&self) -> i64 {
        self.w.iter().sum()
    }
}

/// Exact minimum-weight perfect matching.
///
/// Parallel edges are reduced to their lightest copy (lowest id on ties)
/// before solving, and weights are mirrored to `max(w) - w` so the blossom
/// solver, run as a maximum-cardinality maximum-weight matcher, sees only
/// non-negative weights.
pub fn min_weight_perfect_matching(g: &Multigraph, w: &WeightVector) -> Result<PerfectMatching> {
    if w.as_slice().len() != g.m() {
        return Err(Error::WeightLength { expected: g.m(), got: w.as_slice().len() });
    }
    let n = g.n();
    if n % 2 == 1 {
        return Err(Error::OddVertexCount(n));
    }
    if n == 0 {
        return Ok(PerfectMatching { edges: Vec::new() });
    }
    let mut lightest: BTreeMap<(Vertex, Vertex), EdgeId> = BTreeMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let key = (u.min(v), u.max(v));
        lightest
            .entry(key)
            .and_modify(|best| {
                if w.get(e) < w.get(*best) {
                    *best = e;
                }
            })
            .or_insert(e);
    }
    let reps: Vec<EdgeId> = lightest.values().copied().collect();
    let top = reps.iter().map(|&e| w.get(e)).max().unwrap_or(0);
    let mirrored: Vec<(usize, usize, i64)> = reps
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            (u, v, top - w.get(e))
        })
        .collect();
    let mate = blossom::max_weight_matching(n, &mirrored, true);
    let mut edges = Vec::with_capacity(n / 2);
    for (&e, &(u, v, _)) in reps.iter().zip(&mirrored) {
        if mate[u] == Some(v) {
            edges.push(e);
        }
    }
    if edges.len() * 2 != n {
        return Err(Error::NoPerfectMatching);
    }
    PerfectMatching::new(g, edges)
}

/// Every perfect matching of `g`; parallel edges give distinct matchings.
/// Output order follows a backtracking search that always covers the
/// lowest unmatched vertex next, trying its edges in id order.
pub fn enumerate_perfect_matchings(g: &Multigraph, budget: usize) -> Result<Vec<PerfectMatching>> {
    if g.n() > budget {
        return Err(Error::BudgetExceeded { what: "enumeration", limit: budget, actual: g.n() });
    }
    let mut out = Vec::new();
    if g.n() % 2 == 1 {
        return Ok(out);
    }
    let mut covered = vec![false; g.n()];
    let mut chosen = Vec::with_capacity(g.n() / 2);
    extend_matching(g, &mut covered, &mut chosen, &mut out);
    Ok(out)
}

fn extend_matching(g: &Multigraph, covered: &mut [bool], chosen: &mut Vec<EdgeId>, out: &mut Vec<PerfectMatching>) {
    let Some(v) = covered.iter().position(|&c| !c) else {
        let mut edges = chosen.clone();
        edges.sort_unstable();
        out.push(PerfectMatching { edges });
        return;
    };
    covered[v] = true;
    for &(e, w) in g.incident(v) {
        if !covered[w] {
            covered[w] = true;
            chosen.push(e);
            extend_matching(g, covered, chosen, out);
            chosen.pop();
            covered[w] = false;
        }
    }
    covered[v] = false;
}

/// The minimal 3-edge cuts of a graph, found by brute force over edge
/// triples.
#[derive(Debug, Clone)]
pub struct ThreeCuts {
    cuts: Vec<[EdgeId; 3]>,
}

impl ThreeCuts {
    #[allow(clippy::needless_range_loop)]
    pub fn new(g: &Multigraph, budget: usize) -> Result<Self> {
        if g.n() > budget {
            return Err(Error::BudgetExceeded { what: "3-cut enumeration", limit: budget, actual: g.n() });
        }
        let m = g.m();
        let splits = |removed: &[EdgeId]| g.component_labels(|e| !removed.contains(&e)).1 > 1;
        let mut cutting_pair = vec![vec![false; m]; m];
        let single: Vec<bool> = (0..m).map(|e| splits(&[e])).collect();
        for i in 0..m {
            for j in i + 1..m {
                cutting_pair[i][j] = splits(&[i, j]);
            }
        }
        let mut cuts = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let smaller = single[i]
                        || single[j]
                        || single[k]
                        || cutting_pair[i][j]
                        || cutting_pair[i][k]
                        || cutting_pair[j][k];
                    if !smaller && splits(&[i, j, k]) {
                        cuts.push([i, j, k]);
                    }
                }
            }
        }
        Ok(ThreeCuts { cuts })
    }

    pub fn cuts(&self) -> &[[EdgeId; 3]] {
        &self.cuts
    }

    /// Whether `m` meets every minimal 3-cut in exactly one edge.
    pub fn admits(&self, m: &PerfectMatching) -> bool {
        self.cuts.iter().all(|cut| cut.iter().filter(|&&e| m.contains(e)).count() == 1)
    }
}

pub fn is_three_cut_matching(g: &Multigraph, m: &PerfectMatching, budget: usize) -> Result<bool> {
    Ok(ThreeCuts::new(g, budget)?.admits(m))
}
