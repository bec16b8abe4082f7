//! Writing the uniform vector `1/3` as a convex combination of perfect
//! matchings of a bridgeless cubic graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::lab::simplex::{self, LinearProgram, Relation};
use crate::matching::{enumerate_perfect_matchings, PerfectMatching, ThreeCuts};

const TOLERANCE: f64 = 1e-9;
const SUPPORT_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexCombination {
    /// `(λ, M)` with every `λ > 0`, in enumeration order.
    pub terms: Vec<(f64, PerfectMatching)>,
}

impl ConvexCombination {
    /// `Σ λ χ^M` per edge.
    pub fn edge_sums(&self, m: usize) -> Vec<f64> {
        let mut sums = vec![0.0; m];
        for (lambda, matching) in &self.terms {
            for &e in matching.edges() {
                sums[e] += lambda;
            }
        }
        sums
    }

    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|(l, _)| l).sum()
    }
}

/// Finds `λ` by enumerating all perfect matchings and solving the
/// feasibility LP `Σ λ_M = 1`, `Σ_{M ∋ e} λ_M = 1/3`, `λ ≥ 0`.
///
/// Every matching in the support meets each 3-edge cut exactly once; this
/// is checked before returning.
pub fn convex_combination_third(g: &Multigraph, budget: usize) -> Result<ConvexCombination> {
    if g.n() > budget {
        return Err(Error::BudgetExceeded { what: "matching enumeration", limit: budget, actual: g.n() });
    }
    if !g.is_cubic() {
        let v = g.degrees().iter().position(|&d| d != 3).unwrap_or(0);
        return Err(Error::DegreeViolation { vertex: v, degree: g.degree(v) });
    }
    if let Some(&b) = g.find_bridges()?.first() {
        return Err(Error::BridgeFound(b));
    }
    let matchings = enumerate_perfect_matchings(g, budget)?;
    let mut lp = LinearProgram::new(matchings.len());
    lp.add((0..matchings.len()).map(|i| (i, 1.0)).collect(), Relation::Eq, 1.0);
    let mut rows = vec![Vec::new(); g.m()];
    for (i, matching) in matchings.iter().enumerate() {
        for &e in matching.edges() {
            rows[e].push((i, 1.0));
        }
    }
    for row in rows {
        lp.add(row, Relation::Eq, 1.0 / 3.0);
    }
    let solution = simplex::solve(&lp)?;
    let terms: Vec<(f64, PerfectMatching)> =
        solution.x.iter().zip(matchings).filter(|(&l, _)| l > SUPPORT_CUTOFF).map(|(&l, m)| (l, m)).collect();
    let combination = ConvexCombination { terms };
    let worst = combination.edge_sums(g.m()).iter().map(|s| (s - 1.0 / 3.0).abs()).fold(0.0, f64::max);
    if worst > TOLERANCE || (combination.weight_sum() - 1.0).abs() > TOLERANCE {
        return Err(Error::ContractViolation(format!("combination misses 1/3 by {worst:e}")));
    }
    let cuts = ThreeCuts::new(g, budget)?;
    if let Some((_, m)) = combination.terms.iter().find(|(_, m)| !cuts.admits(m)) {
        return Err(Error::ContractViolation(format!("matching {:?} crosses a 3-cut three times", m.edges())));
    }
    Ok(combination)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::families;

    #[test]
    fn petersen_is_uniform() {
        // each edge lies in exactly 2 of the 6 matchings, and the incidence
        // matrix has full column rank, so λ = 1/6 is the only solution
        let c = convex_combination_third(&families::petersen(), 20).unwrap();
        assert_eq!(c.terms.len(), 6);
        assert!(c.terms.iter().all(|(l, _)| (l - 1.0 / 6.0).abs() < 1e-9));
    }

    #[test]
    fn k4_thirds() {
        let c = convex_combination_third(&families::k4(), 20).unwrap();
        assert_eq!(c.terms.len(), 3);
        assert!(c.terms.iter().all(|(l, _)| (l - 1.0 / 3.0).abs() < 1e-9));
    }

    #[test]
    fn sums_hold_on_cube_and_prism() {
        for g in [families::cube(), families::prism(), families::k33()] {
            let c = convex_combination_third(&g, 20).unwrap();
            assert!(c.edge_sums(g.m()).iter().all(|s| (s - 1.0 / 3.0).abs() < 1e-9));
        }
    }

    #[test]
    fn rejects_bridges_and_budget() {
        let g = families::random_bridged(2, 1).unwrap();
        assert!(convex_combination_third(&g, 40).is_err());
        let big = families::random_cubic(22, 3, true).unwrap();
        assert!(matches!(convex_combination_third(&big, 20), Err(Error::BudgetExceeded { .. })));
    }
}
