//! The subtour elimination LP over the metric completion, solved by cutting
//! planes.
//!
//! Variables are the pairs `{u, v}` with cost equal to their hop distance.
//! Every vertex has `x(δ(v)) = 2`, and violated constraints
//! `x(δ(S)) ≥ 2` are added one at a time from a global minimum cut of the
//! current solution until that cut is at least `2 − 1e−7`. The bounds
//! `x ≤ 1` are left implicit: for a pair `{u, v}` the cut `δ({u, v})` has
//! value `4 − 2x_uv`, so any `x_uv > 1` is caught by the separation step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Multigraph, Vertex};
use crate::lab::mincut::stoer_wagner;
use crate::lab::simplex::{self, LinearProgram, Relation};

pub const DEFAULT_LP_BUDGET: usize = 40;
const CUT_TOLERANCE: f64 = 1e-7;
const MAX_ROUNDS: usize = 1_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SerResult {
    pub value: f64,
    /// The sets `S` whose constraints were added, each the smaller-index
    /// side of the cut found.
    pub active_cuts: Vec<Vec<Vertex>>,
    pub iterations: usize,
    /// Final fractional solution as `(u, v, x_uv)` with `x_uv > 0`.
    pub support: Vec<(Vertex, Vertex, f64)>,
}

pub fn ser_value(g: &Multigraph, budget: usize) -> Result<SerResult> {
    let n = g.n();
    if n > budget {
        return Err(Error::BudgetExceeded { what: "LP", limit: budget, actual: n });
    }
    let d = DistanceMatrix::new(g)?;
    if n <= 2 {
        // One vertex: the empty tour. Two vertices: there and back.
        let value = if n == 2 { 2.0 * d.get(0, 1) as f64 } else { 0.0 };
        let support = if n == 2 { vec![(0, 1, 2.0)] } else { Vec::new() };
        return Ok(SerResult { value, active_cuts: Vec::new(), iterations: 0, support });
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut lp = LinearProgram::new(pairs.len());
    lp.objective = pairs.iter().map(|&(u, v)| d.get(u, v) as f64).collect();
    for v in 0..n {
        let row = pairs.iter().enumerate().filter(|(_, &(a, b))| a == v || b == v).map(|(j, _)| (j, 1.0)).collect();
        lp.add(row, Relation::Eq, 2.0);
    }
    let mut active_cuts = Vec::new();
    for round in 1..=MAX_ROUNDS {
        let solution = simplex::solve(&lp)?;
        let mut w = vec![vec![0.0; n]; n];
        for (j, &(u, v)) in pairs.iter().enumerate() {
            w[u][v] = solution.x[j];
            w[v][u] = solution.x[j];
        }
        let (cut, side) = stoer_wagner(&w);
        if cut >= 2.0 - CUT_TOLERANCE {
            let support =
                pairs.iter().zip(&solution.x).filter(|(_, &x)| x > 1e-12).map(|(&(u, v), &x)| (u, v, x)).collect();
            return Ok(SerResult { value: solution.value, active_cuts, iterations: round, support });
        }
        let mut inside = vec![false; n];
        for &v in &side {
            inside[v] = true;
        }
        let row =
            pairs.iter().enumerate().filter(|(_, &(a, b))| inside[a] != inside[b]).map(|(j, _)| (j, 1.0)).collect();
        lp.add(row, Relation::Ge, 2.0);
        let set = if side.contains(&0) { side } else { (0..n).filter(|&v| !inside[v]).collect() };
        active_cuts.push(set);
    }
    Err(Error::Precondition(format!("subtour separation did not converge in {MAX_ROUNDS} rounds")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::families;

    #[test]
    fn hamiltonian_graphs_give_n() {
        let c6 = Multigraph::new(6, (0..6).map(|i| (i, (i + 1) % 6)).collect()).unwrap();
        assert!((ser_value(&c6, 40).unwrap().value - 6.0).abs() < 1e-6);
        assert!((ser_value(&families::k4(), 40).unwrap().value - 4.0).abs() < 1e-6);
    }

    #[test]
    fn petersen_lp_is_n() {
        // x = 2/3 on every edge is feasible, so the bound is exactly n.
        let r = ser_value(&families::petersen(), 40).unwrap();
        assert!((r.value - 10.0).abs() < 1e-6);
    }

    #[test]
    fn separation_needed_for_two_triangles() {
        // Two triangles joined by a bridge: degree constraints alone allow
        // two disjoint triangles of cost 6; subtour cuts force 8.
        let g = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let r = ser_value(&g, 40).unwrap();
        assert!((r.value - 8.0).abs() < 1e-6);
        assert!(!r.active_cuts.is_empty());
    }

    #[test]
    fn small_and_budget() {
        assert_eq!(ser_value(&families::triple_edge(), 40).unwrap().value, 2.0);
        assert_eq!(ser_value(&Multigraph::new(1, vec![]).unwrap(), 40).unwrap().value, 0.0);
        let big = families::fk(3).unwrap();
        assert!(matches!(ser_value(&big, 40), Err(Error::BudgetExceeded { .. })));
    }
}
