//! Parameter sweeps over a graph family, written as CSV.

use std::io::Write;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use subcubic_tsp::bridges::bridge_lower_bound;
use subcubic_tsp::lab::families::{gen_family, FamilySpec};
use subcubic_tsp::lab::ser::ser_value;
use subcubic_tsp::lab::verify::verify_report;
use subcubic_tsp::{Algorithm, Multigraph, Result, SolveReport};

use crate::exit::status_name;
use crate::Budgets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LowerBound {
    /// The subtour LP when within the LP budget, otherwise combinatorial.
    Auto,
    /// The subtour LP; rows above the LP budget get no lower bound.
    Lp,
    /// `n + 2h − s` from the bridge structure (`n` when bridgeless).
    Combinatorial,
}

pub const HEADER: [&str; 10] =
    ["family", "param", "n", "algorithm", "h_edges", "bound", "lower_bound", "ratio", "wall_ms", "status"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub family: String,
    pub param: Option<u64>,
    pub n: Option<usize>,
    pub algorithm: String,
    pub h_edges: Option<usize>,
    pub bound: Option<f64>,
    pub lower_bound: Option<f64>,
    pub ratio: Option<f64>,
    pub wall_ms: u64,
    pub status: String,
}

/// `start:end[:step]` (inclusive) or a comma-separated list; empty means no
/// parameters at all.
pub fn parse_sweep(spec: &str) -> std::result::Result<Vec<u64>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("bad sweep value {s:?}"));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let (start, end, step) = match parts[..] {
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, s] => (num(a)?, num(b)?, num(s)?),
            _ => return Err(format!("bad range {spec:?}, expected start:end[:step]")),
        };
        if step == 0 {
            return Err("sweep step must be positive".into());
        }
        return Ok((start..=end).step_by(step as usize).collect());
    }
    spec.split(',').map(num).collect()
}

pub fn run_algorithm(g: &Multigraph, algorithm: Algorithm, budgets: &Budgets) -> Result<SolveReport> {
    use subcubic_tsp::{bridges, lab::held_karp, matchcomb, ms};
    match algorithm {
        Algorithm::Ms => ms::solve_ms(g),
        Algorithm::Matchcomb => matchcomb::solve_matchcomb(g, budgets.enum_budget),
        Algorithm::Bridges => bridges::solve_with_bridges(g),
        Algorithm::Exact => held_karp::solve_exact(g, budgets.hk_budget),
    }
}

fn lower_bound(g: &Multigraph, kind: LowerBound, lp_budget: usize) -> Option<f64> {
    let combinatorial = || bridge_lower_bound(g).ok().map(|x| x as f64);
    match kind {
        LowerBound::Combinatorial => combinatorial(),
        LowerBound::Lp => ser_value(g, lp_budget).ok().map(|r| r.value),
        LowerBound::Auto if g.n() <= lp_budget => ser_value(g, lp_budget).ok().map(|r| r.value),
        LowerBound::Auto => combinatorial(),
    }
}

pub struct Sweep {
    pub family: String,
    /// `None` for a family without a size parameter.
    pub params: Vec<Option<u64>>,
    pub algorithms: Vec<Algorithm>,
    pub lower: LowerBound,
    pub seed: u64,
    pub timing: bool,
}

fn instance_rows(sweep: &Sweep, param: Option<u64>, budgets: &Budgets) -> Vec<Row> {
    let blank = |algorithm: String, status: String| Row {
        family: sweep.family.clone(),
        param,
        n: None,
        algorithm,
        h_edges: None,
        bound: None,
        lower_bound: None,
        ratio: None,
        wall_ms: 0,
        status,
    };
    let graph = FamilySpec::from_name(&sweep.family, param, sweep.seed).and_then(gen_family);
    let g = match graph {
        Ok(g) => g,
        Err(e) => {
            return sweep.algorithms.iter().map(|a| blank(a.to_string(), format!("{}: {e}", status_name(&e)))).collect()
        }
    };
    let lower = lower_bound(&g, sweep.lower, budgets.lp_budget);
    sweep
        .algorithms
        .iter()
        .map(|&a| {
            let started = Instant::now();
            let result = run_algorithm(&g, a, budgets);
            let wall_ms = if sweep.timing { started.elapsed().as_millis() as u64 } else { 0 };
            let mut row = blank(a.to_string(), String::new());
            row.n = Some(g.n());
            row.lower_bound = lower;
            row.wall_ms = wall_ms;
            match result {
                Ok(r) => {
                    row.h_edges = Some(r.h_edges);
                    row.bound = Some(r.bound.to_f64());
                    row.ratio = lower.filter(|&lb| lb > 0.0).map(|lb| r.h_edges as f64 / lb);
                    row.status = if verify_report(&g, &r).passed() { "ok".into() } else { "unverified".into() };
                }
                Err(e) => row.status = format!("{}: {e}", status_name(&e)),
            }
            row
        })
        .collect()
}

/// All rows in sweep order; instances run concurrently on the current
/// rayon pool.
pub fn run_sweep(sweep: &Sweep, budgets: &Budgets) -> Vec<Row> {
    sweep.params.par_iter().map(|&p| instance_rows(sweep, p, budgets)).collect::<Vec<_>>().concat()
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
