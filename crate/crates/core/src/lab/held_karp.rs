//! Exact graph-TSP by Held–Karp dynamic programming over vertex subsets.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::euler::{tour_from_subgraph, EulerianSubgraph, Tour};
use crate::graph::{DistanceMatrix, Multigraph, Vertex};
use crate::report::{Algorithm, SolveReport, Thirds};

pub const DEFAULT_HK_BUDGET: usize = 18;

/// An optimal tour of the metric completion.
pub fn held_karp_tour(g: &Multigraph, budget: usize) -> Result<Tour> {
    let n = g.n();
    if n > budget {
        return Err(Error::BudgetExceeded { what: "Held-Karp", limit: budget, actual: n });
    }
    if n > 30 {
        return Err(Error::BudgetExceeded { what: "Held-Karp", limit: 30, actual: n });
    }
    let d = DistanceMatrix::new(g)?;
    if n <= 2 {
        return Tour::new(g, (0..n).collect());
    }
    // Vertex 0 is the fixed start; subsets range over vertices 1..n.
    let k = n - 1;
    let full = (1usize << k) - 1;
    let inf = u32::MAX;
    let mut dp = vec![inf; (full + 1) * k];
    for j in 0..k {
        dp[(1 << j) * k + j] = d.get(0, j + 1);
    }
    for mask in 1..=full {
        for j in 0..k {
            let here = dp[mask * k + j];
            if here == inf || mask >> j & 1 == 0 {
                continue;
            }
            let mut rest = full & !mask;
            while rest != 0 {
                let next = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let slot = &mut dp[(mask | 1 << next) * k + next];
                let cand = here + d.get(j + 1, next + 1);
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }
    let (mut last, _) =
        (0..k).map(|j| (j, dp[full * k + j] + d.get(j + 1, 0))).min_by_key(|&(j, c)| (c, j)).expect("n >= 3");
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    let mut mask = full;
    loop {
        order.push(last + 1);
        let prev_mask = mask & !(1 << last);
        if prev_mask == 0 {
            break;
        }
        let target = dp[mask * k + last];
        let prev = (0..k)
            .find(|&j| {
                prev_mask >> j & 1 == 1
                    && dp[prev_mask * k + j] != inf
                    && dp[prev_mask * k + j] + d.get(j + 1, last + 1) == target
            })
            .expect("DP predecessor exists");
        mask = prev_mask;
        last = prev;
    }
    order.push(0);
    order.reverse();
    Tour::new(g, order)
}

/// Optimal graph-TSP tour length.
pub fn held_karp_opt(g: &Multigraph, budget: usize) -> Result<u64> {
    Ok(held_karp_tour(g, budget)?.length)
}

/// Exact solve: an optimal tour, with the Eulerian subgraph formed by the
/// shortest paths between consecutive tour vertices.
pub fn solve_exact(g: &Multigraph, budget: usize) -> Result<SolveReport> {
    let started = Instant::now();
    let tour = held_karp_tour(g, budget)?;
    let mut count = vec![0u32; g.m()];
    let n = tour.order.len();
    if n >= 2 {
        for i in 0..n {
            for e in g.shortest_path(tour.order[i], tour.order[(i + 1) % n])? {
                count[e] += 1;
            }
        }
    }
    // An optimal walk never repeats an edge three times: dropping two
    // copies would keep it connected, even and spanning.
    if let Some(e) = count.iter().position(|&c| c > 2) {
        return Err(Error::ContractViolation(format!("optimal walk uses edge {e} {} times", count[e])));
    }
    let h = EulerianSubgraph::new(g, count.iter().map(|&c| c as u8).collect())?;
    let rebuilt = tour_from_subgraph(g, &h)?;
    debug_assert!(rebuilt.length <= tour.length);
    let bound = Thirds::from_int(tour.length as i64);
    let mut report = SolveReport::basic(Algorithm::Exact, h, tour, bound);
    report.wall_time = started.elapsed();
    Ok(report)
}
