//! The JSON record written by `solve` and read back by `verify`.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use subcubic_tsp::euler::Tour;
use subcubic_tsp::lab::verify::{verify_report, Verdict};
use subcubic_tsp::report::{BridgeSummary, CombinationSummary};
use subcubic_tsp::{Algorithm, EdgeId, EulerianSubgraph, Multigraph, PerfectMatching, SolveReport, Thirds, Vertex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: Vec<String>,
    /// SHA-256 of the input file, lowercase hex.
    pub input_hash: String,
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    pub h_edges: usize,
    pub h_multiplicity: Vec<u8>,
    pub tour: Vec<Vertex>,
    pub tour_length: u64,
    pub bound: f64,
    /// The bound times three, exact.
    pub bound_thirds: i64,
    pub verified: bool,
    pub failed_checks: Vec<String>,
    pub wall_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<EdgeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching_weight: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r_set: Vec<EdgeId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tree_star: Vec<EdgeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contraction: Option<Vec<Vec<EdgeId>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bridges: Option<BridgeSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combination: Option<CombinationSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub held_karp: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ser: Option<f64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunRecord {
    pub fn new(command: Vec<String>, input_hash: String, g: &Multigraph, r: &SolveReport, timing: bool) -> Self {
        let verdict = verify_report(g, r);
        RunRecord {
            command,
            input_hash,
            algorithm: r.algorithm,
            n: g.n(),
            m: g.m(),
            h_edges: r.h_edges,
            h_multiplicity: r.h.multiplicity().to_vec(),
            tour: r.tour.order.clone(),
            tour_length: r.tour.length,
            bound: r.bound.to_f64(),
            bound_thirds: r.bound.0,
            verified: verdict.passed(),
            failed_checks: verdict.failed_names(),
            wall_ms: if timing { r.wall_time.as_millis() as u64 } else { 0 },
            matching: r.matching_used.as_ref().map(|m| m.edges().to_vec()),
            matching_weight: r.matching_weight,
            r_set: r.r_set.clone(),
            tree_star: r.tree_star.clone(),
            contraction: r.contraction.clone(),
            cycle_count: r.cycle_cover.as_ref().map(Vec::len),
            bridges: r.bridge_summary.clone(),
            combination: r.combination.clone(),
            held_karp: None,
            ser: None,
        }
    }

    /// The report this record describes, without revalidating anything, so
    /// that a tampered record reaches the verifier intact.
    pub fn to_report(&self) -> Result<SolveReport, serde_json::Error> {
        let h: EulerianSubgraph = serde_json::from_value(serde_json::json!({ "multiplicity": self.h_multiplicity }))?;
        let matching_used: Option<PerfectMatching> = match &self.matching {
            Some(edges) => Some(serde_json::from_value(serde_json::json!({ "edges": edges }))?),
            None => None,
        };
        let mut r = SolveReport::basic(
            self.algorithm,
            h,
            Tour { order: self.tour.clone(), length: self.tour_length },
            Thirds(self.bound_thirds),
        );
        r.h_edges = self.h_edges;
        r.matching_used = matching_used;
        r.matching_weight = self.matching_weight;
        r.r_set = self.r_set.clone();
        r.tree_star = self.tree_star.clone();
        r.contraction = self.contraction.clone();
        r.bridge_summary = self.bridges.clone();
        r.combination = self.combination.clone();
        r.wall_time = Duration::from_millis(self.wall_ms);
        Ok(r)
    }

    /// Rechecks the record against the graph, including the stored hash.
    pub fn reverify(&self, g: &Multigraph, input_hash: &str) -> Result<Verdict, serde_json::Error> {
        let mut verdict = verify_report(g, &self.to_report()?);
        let same_input = self.input_hash == input_hash;
        verdict.checks.push(subcubic_tsp::lab::verify::Check {
            name: "input_hash".into(),
            passed: same_input,
            detail: if same_input { "matches".into() } else { format!("record has {}", self.input_hash) },
        });
        let float_ok = self.bound == Thirds(self.bound_thirds).to_f64();
        verdict.checks.push(subcubic_tsp::lab::verify::Check {
            name: "bound_fields".into(),
            passed: float_ok,
            detail: format!("bound {} vs bound_thirds {}", self.bound, self.bound_thirds),
        });
        Ok(verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use subcubic_tsp::lab::families;
    use subcubic_tsp::matchcomb::solve_matchcomb;
    use subcubic_tsp::ms::solve_ms;

    #[test]
    fn hash_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn round_trips_and_reverifies() {
        let g = families::petersen();
        for r in [solve_ms(&g).unwrap(), solve_matchcomb(&g, 20).unwrap()] {
            let record = RunRecord::new(vec!["solve".into()], "abc".into(), &g, &r, false);
            assert!(record.verified);
            let text = serde_json::to_string(&record).unwrap();
            let back: RunRecord = serde_json::from_str(&text).unwrap();
            assert_eq!(back, record);
            assert!(back.reverify(&g, "abc").unwrap().passed());
            assert!(!back.reverify(&g, "other").unwrap().passed());
        }
    }

    #[test]
    fn tampering_is_caught() {
        let g = families::petersen();
        let r = solve_ms(&g).unwrap();
        let mut record = RunRecord::new(vec![], "h".into(), &g, &r, false);
        let e = record.h_multiplicity.iter().position(|&k| k == 1).unwrap();
        record.h_multiplicity[e] = 0;
        let verdict = record.reverify(&g, "h").unwrap();
        assert!(verdict.failed_names().contains(&"parity".to_string()));
    }
}
