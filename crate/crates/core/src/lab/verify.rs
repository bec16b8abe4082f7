//! Independent re-checking of solver reports against the input graph.

use serde::{Deserialize, Serialize};

use crate::bridges::BridgeDecomposition;
use crate::euler::{check_permutation, tour_length, weighted_degrees};
use crate::graph::Multigraph;
use crate::lab::held_karp::{held_karp_opt, DEFAULT_HK_BUDGET};
use crate::matching::PerfectMatching;
use crate::ms::contract_degree2_paths;
use crate::report::{Algorithm, SolveReport, Thirds};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Verdict {
    pub checks: Vec<Check>,
}

impl Verdict {
    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn failed_names(&self) -> Vec<String> {
        self.failed().iter().map(|c| c.name.clone()).collect()
    }
}

/// The bound the report's algorithm guarantees on `g`, recomputed from
/// scratch. `None` when it cannot be recomputed within budget.
pub fn expected_bound(g: &Multigraph, algorithm: Algorithm) -> Option<Thirds> {
    let n = g.n() as i64;
    match algorithm {
        Algorithm::Ms => Some(Thirds(4 * n - 2)),
        Algorithm::Matchcomb => Some(Thirds(4 * n - 6)),
        Algorithm::Bridges => BridgeDecomposition::new(g).ok().map(|d| d.bound(g.n())),
        Algorithm::Exact => held_karp_opt(g, DEFAULT_HK_BUDGET).ok().map(|opt| Thirds::from_int(opt as i64)),
    }
}

/// Runs every check; failures are verdict entries, never errors.
pub fn verify_report(g: &Multigraph, r: &SolveReport) -> Verdict {
    let mut v = Verdict::default();
    let mult = r.h.multiplicity();
    let shape_ok = mult.len() == g.m() && mult.iter().all(|&k| k <= 2);
    v.record("multiplicity_shape", shape_ok, format!("{} entries for {} edges", mult.len(), g.m()));
    if !shape_ok {
        return v;
    }
    let degree = weighted_degrees(g, mult);
    let uncovered = if g.n() >= 2 { degree.iter().position(|&d| d == 0) } else { None };
    v.record(
        "spanning",
        uncovered.is_none(),
        match uncovered {
            Some(x) => format!("vertex {x} has degree 0"),
            None => "every vertex covered".into(),
        },
    );
    let odd = degree.iter().position(|&d| d % 2 == 1);
    v.record(
        "parity",
        odd.is_none(),
        match odd {
            Some(x) => format!("vertex {x} has odd degree {}", degree[x]),
            None => "all degrees even".into(),
        },
    );
    let (_, comps) = g.component_labels(|e| mult[e] > 0);
    v.record("connectivity", g.n() == 0 || comps == 1, format!("{comps} component(s)"));
    let total: usize = mult.iter().map(|&k| k as usize).sum();
    v.record("h_edges", total == r.h_edges, format!("multiplicities sum to {total}, report says {}", r.h_edges));

    match expected_bound(g, r.algorithm) {
        Some(b) => v.record("bound_consistency", b == r.bound, format!("expected {b}, report says {}", r.bound)),
        None => v.record("bound_consistency", true, "not recomputable within budget"),
    }
    v.record("bound", r.bound.admits(r.h_edges), format!("{} edges against bound {}", r.h_edges, r.bound));

    match check_permutation(g.n(), &r.tour.order) {
        Err(e) => v.record("tour_permutation", false, e.to_string()),
        Ok(()) => {
            v.record("tour_permutation", true, "tour visits every vertex once");
            match tour_length(g, &r.tour.order) {
                Ok(len) => {
                    v.record(
                        "tour_length",
                        len == r.tour.length,
                        format!("recomputed {len}, report says {}", r.tour.length),
                    );
                    v.record("tour_within_h", len as usize <= r.h_edges, format!("tour {len}, subgraph {}", r.h_edges));
                }
                Err(e) => v.record("tour_length", false, e.to_string()),
            }
        }
    }

    match (&r.matching_used, r.algorithm) {
        (Some(m), Algorithm::Ms) => check_matching(g, r, m, &mut v),
        (Some(m), _) => match PerfectMatching::new(g, m.edges().to_vec()) {
            Ok(_) => v.record("matching", true, format!("perfect matching of size {}", m.len())),
            Err(e) => v.record("matching", false, e.to_string()),
        },
        (None, _) => {}
    }
    v
}

fn check_matching(g: &Multigraph, r: &SolveReport, m: &PerfectMatching, v: &mut Verdict) {
    let contraction = match contract_degree2_paths(g) {
        Ok(c) => c,
        Err(e) => {
            v.record("matching", false, format!("input does not contract: {e}"));
            return;
        }
    };
    let expected_paths = contraction.paths.clone();
    let claimed: Vec<Vec<usize>> = r.contraction.clone().unwrap_or_else(|| (0..g.m()).map(|e| vec![e]).collect());
    if claimed != expected_paths {
        v.record("contraction", false, "contracted paths differ from a fresh contraction");
        return;
    }
    let gc = &contraction.gc;
    if let Err(e) = PerfectMatching::new(gc, m.edges().to_vec()) {
        v.record("matching", false, e.to_string());
        return;
    }
    v.record("matching", true, format!("perfect matching of size {}", m.len()));
    let mut in_r = vec![false; gc.m()];
    for &e in &r.r_set {
        if e < gc.m() {
            in_r[e] = true;
        }
    }
    let weight: i64 = m
        .edges()
        .iter()
        .map(|&e| {
            let q2 = contraction.interior(e) as i64;
            if in_r[e] {
                q2 - 1
            } else {
                q2 + 1
            }
        })
        .sum();
    let claimed_weight = r.matching_weight.unwrap_or(i64::MIN);
    v.record("matching_weight", weight == claimed_weight, format!("recomputed {weight}, report says {claimed_weight}"));
    let expected_edges = g.m() as i64 + weight;
    v.record(
        "edge_arithmetic",
        r.h_edges as i64 == expected_edges,
        format!("m + c(M) = {expected_edges}, report has {}", r.h_edges),
    );
    let mult = r.h.multiplicity();
    let pattern_ok = contraction.paths.iter().enumerate().all(|(e, path)| {
        let (first, rest) = match (m.contains(e), in_r[e]) {
            (true, true) => (0, 2),
            (true, false) => (2, 2),
            (false, _) => (1, 1),
        };
        mult[path[0]] == first && path[1..].iter().all(|&p| mult[p] == rest)
    });
    v.record("multiplicity_pattern", pattern_ok, "0 on M∩R, 2 on M\\R, 1 elsewhere (per path)");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::families;
    use crate::ms::solve_ms;

    #[test]
    fn valid_report_passes() {
        let g = families::petersen();
        let r = solve_ms(&g).unwrap();
        let verdict = verify_report(&g, &r);
        assert!(verdict.passed(), "{:?}", verdict.failed());
    }

    #[test]
    fn corrupted_multiplicity_fails_parity() {
        let g = families::petersen();
        let mut r = solve_ms(&g).unwrap();
        let mut mult = r.h.multiplicity().to_vec();
        let e = mult.iter().position(|&k| k == 1).unwrap();
        mult[e] = 2;
        r.h = serde_json::from_value(serde_json::json!({ "multiplicity": mult })).unwrap();
        let verdict = verify_report(&g, &r);
        assert!(verdict.failed_names().contains(&"parity".to_string()));
    }

    #[test]
    fn inflated_bound_fails_consistency() {
        let g = families::petersen();
        let mut r = solve_ms(&g).unwrap();
        r.bound = Thirds(r.bound.0 + 3);
        let verdict = verify_report(&g, &r);
        assert_eq!(verdict.failed_names(), vec!["bound_consistency".to_string()]);
    }

    #[test]
    fn subcubic_report_passes() {
        let g = families::three_path(4).unwrap();
        let r = solve_ms(&g).unwrap();
        let verdict = verify_report(&g, &r);
        assert!(verdict.passed(), "{:?}", verdict.failed());
    }
}
