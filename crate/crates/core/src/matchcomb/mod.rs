//! The `4n/3 − 2` solver for simple bridgeless cubic graphs.
//!
//! Rainbow gadgets are cut out first. On the remaining core, `1/3` is
//! written as a convex combination of perfect matchings; each matching's
//! cycle cover is improved by [`operation_i`] and [`operation_ii`] and
//! connected by [`assemble_spanning`]. The best result is lifted back
//! through the removed gadgets.

mod combination;
mod cover;
mod rainbow;

use std::time::Instant;

pub use combination::{convex_combination_third, ConvexCombination};
pub use cover::{
    assemble_spanning, chordless_cycles, cycle_cover_from_matching, merge_eulerian, operation_i, operation_ii,
    EulerianCover, Fragment,
};
pub use rainbow::{
    detect_p_rainbow, reinsert_rainbows, remove_rainbows, solve_k4_reduction, RainbowLevel, RainbowPattern,
    RainbowReduction,
};

use crate::error::{Error, Result};
use crate::euler::{tour_from_subgraph, EulerianSubgraph};
use crate::graph::Multigraph;
use crate::matching::PerfectMatching;
use crate::report::{Algorithm, CombinationSummary, SolveReport, Thirds};

/// The spanning Eulerian subgraph obtained from one perfect matching.
pub fn subgraph_from_matching(g: &Multigraph, m: &PerfectMatching) -> Result<EulerianSubgraph> {
    let cover = operation_i(g, cycle_cover_from_matching(g, m));
    let merged = operation_ii(g, cover)?;
    assemble_spanning(g, &merged)
}

fn check_input(g: &Multigraph, budget: usize) -> Result<()> {
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| g.degree(v) != 3) {
        return Err(Error::DegreeViolation { vertex: v, degree: g.degree(v) });
    }
    if !g.is_simple() {
        return Err(Error::Precondition("graph has parallel edges".into()));
    }
    if n < 6 {
        return Err(Error::Precondition(format!("need at least 6 vertices, got {n}")));
    }
    if let Some(&b) = g.find_bridges()?.first() {
        return Err(Error::BridgeFound(b));
    }
    if n > budget {
        return Err(Error::BudgetExceeded { what: "matching enumeration", limit: budget, actual: n });
    }
    Ok(())
}

/// Solves a simple bridgeless cubic graph on `6 ≤ n ≤ budget` vertices
/// with at most `4n/3 − 2` edges.
pub fn solve_matchcomb(g: &Multigraph, budget: usize) -> Result<SolveReport> {
    let started = Instant::now();
    check_input(g, budget)?;
    let reduction = remove_rainbows(g);
    let rainbows_removed = reduction.levels.len();

    // (λ, lifted subgraph, matching on the core)
    let mut candidates: Vec<(f64, EulerianSubgraph, Option<PerfectMatching>)> = Vec::new();
    if reduction.k4_core() {
        candidates.push((1.0, solve_k4_reduction(&reduction)?, None));
    } else {
        let combination = convex_combination_third(&reduction.core, budget)?;
        for (lambda, m) in combination.terms {
            let core_h = subgraph_from_matching(&reduction.core, &m)?;
            candidates.push((lambda, reinsert_rainbows(&core_h, &reduction)?, Some(m)));
        }
    }
    let terms: Vec<(f64, usize)> = candidates.iter().map(|(l, h, _)| (*l, h.edge_count())).collect();
    let weighted_average = terms.iter().map(|&(l, k)| l * k as f64).sum();
    let best = (0..candidates.len()).min_by_key(|&i| (terms[i].1, i)).expect("at least one candidate");
    let (_, h, m) = candidates.swap_remove(best);

    let tour = tour_from_subgraph(g, &h)?;
    let bound = Thirds(4 * g.n() as i64 - 6);
    let mut report = SolveReport::basic(Algorithm::Matchcomb, h, tour, bound);
    if rainbows_removed == 0 {
        if let Some(m) = m {
            report.cycle_cover = Some(cycle_cover_from_matching(g, &m));
            report.matching_used = Some(m);
        }
    }
    report.combination = Some(CombinationSummary { terms, weighted_average, rainbows_removed });
    report.wall_time = started.elapsed();
    Ok(report)
}
