//! `subcubic-tsp`: generate graphs, solve, verify and benchmark.

mod bench;
mod exit;
mod record;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use subcubic_tsp::lab::families::{gen_family, FamilySpec};
use subcubic_tsp::lab::held_karp::{held_karp_tour, DEFAULT_HK_BUDGET};
use subcubic_tsp::lab::ser::{ser_value, DEFAULT_LP_BUDGET};
use subcubic_tsp::matching::DEFAULT_ENUM_BUDGET;
use subcubic_tsp::{Algorithm, Multigraph, Vertex};

use bench::{LowerBound, Sweep};
use exit::{exit, CliError, VERIFY_FAILED};
use record::{sha256_hex, RunRecord};

#[derive(Parser)]
#[command(name = "subcubic-tsp", version, about = "Graph-TSP tours on cubic and subcubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Budgets {
    /// Largest n for perfect-matching enumeration (matchcomb).
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub enum_budget: usize,
    /// Largest n for the Held-Karp oracle.
    #[arg(long, default_value_t = DEFAULT_HK_BUDGET)]
    pub hk_budget: usize,
    /// Largest n for the subtour LP.
    #[arg(long, default_value_t = DEFAULT_LP_BUDGET)]
    pub lp_budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family graph in the text format.
    Gen {
        /// One of: petersen, k4, triple_edge, fk, three_path, chorded_gap, k2m, random_cubic.
        family: String,
        /// Size parameter (k, or n for k2m and random_cubic).
        param: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Solve a graph file and print a JSON run record.
    Solve {
        input: PathBuf,
        #[arg(short, long, value_parser = parse_algorithm)]
        algorithm: Algorithm,
        #[command(flatten)]
        budgets: Budgets,
        /// Also run Held-Karp and the subtour LP when within budget.
        #[arg(long)]
        oracle: bool,
        /// Report wall_ms as 0, for byte-identical output.
        #[arg(long)]
        no_timing: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Recheck a run record against its graph.
    Verify { input: PathBuf, record: PathBuf },
    /// Optimal tour by Held-Karp.
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_HK_BUDGET)]
        hk_budget: usize,
        #[arg(long)]
        no_timing: bool,
    },
    /// Subtour elimination LP value.
    Ser {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LP_BUDGET)]
        lp_budget: usize,
        #[arg(long)]
        no_timing: bool,
    },
    /// Sweep a family parameter and write one CSV row per instance and algorithm.
    Bench {
        family: String,
        /// `start:end[:step]` or a comma list; omit for families without a parameter.
        #[arg(long)]
        params: Option<String>,
        /// Comma-separated algorithms.
        #[arg(long, value_delimiter = ',', value_parser = parse_algorithm, default_value = "ms")]
        algorithms: Vec<Algorithm>,
        #[arg(long, value_enum, default_value_t = LowerBound::Auto)]
        lower_bound: LowerBound,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses every core. Row order never depends on it.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long)]
        no_timing: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: subcubic_tsp::Error| e.to_string())
}

fn read_graph(path: &Path) -> Result<(Multigraph, String), CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let text =
        String::from_utf8(bytes.clone()).map_err(|_| CliError::Io(format!("{} is not UTF-8", path.display())))?;
    let g = Multigraph::parse(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok((g, sha256_hex(&bytes)))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("records serialize") + "\n"
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

#[derive(Serialize)]
struct OracleRecord {
    command: Vec<String>,
    input_hash: String,
    n: usize,
    held_karp: u64,
    tour: Vec<Vertex>,
    wall_ms: u64,
}

#[derive(Serialize)]
struct SerRecord {
    command: Vec<String>,
    input_hash: String,
    n: usize,
    value: f64,
    iterations: usize,
    active_cuts: Vec<Vec<Vertex>>,
    wall_ms: u64,
}

#[derive(Serialize)]
struct VerifyRecord {
    verified: bool,
    failed_checks: Vec<String>,
    checks: Vec<subcubic_tsp::lab::verify::Check>,
}

fn millis(started: Instant, timing: bool) -> u64 {
    if timing {
        started.elapsed().as_millis() as u64
    } else {
        0
    }
}

/// Runs a command and returns the success exit code (0, or 1 when a
/// certificate failed verification).
fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Gen { family, param, seed, out } => {
            let spec = FamilySpec::from_name(&family, param, seed).map_err(|e| CliError::Usage(e.to_string()))?;
            let g = gen_family(spec)?;
            emit(out.as_deref(), &g.to_text())?;
            Ok(0)
        }
        Command::Solve { input, algorithm, budgets, oracle, no_timing, out } => {
            let (g, hash) = read_graph(&input)?;
            let report = bench::run_algorithm(&g, algorithm, &budgets)?;
            let mut record = RunRecord::new(command_echo(), hash, &g, &report, !no_timing);
            if oracle {
                record.held_karp = held_karp_tour(&g, budgets.hk_budget).ok().map(|t| t.length);
                record.ser = ser_value(&g, budgets.lp_budget).ok().map(|r| r.value);
            }
            emit(out.as_deref(), &to_json(&record))?;
            Ok(if record.verified { 0 } else { VERIFY_FAILED })
        }
        Command::Verify { input, record } => {
            let (g, hash) = read_graph(&input)?;
            let text = fs::read_to_string(&record)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", record.display())))?;
            let parsed: RunRecord =
                serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", record.display())))?;
            let verdict = parsed.reverify(&g, &hash).map_err(|e| CliError::Io(e.to_string()))?;
            let out = VerifyRecord {
                verified: verdict.passed(),
                failed_checks: verdict.failed_names(),
                checks: verdict.checks,
            };
            emit(None, &to_json(&out))?;
            Ok(if out.verified { 0 } else { VERIFY_FAILED })
        }
        Command::Oracle { input, hk_budget, no_timing } => {
            let (g, hash) = read_graph(&input)?;
            let started = Instant::now();
            let tour = held_karp_tour(&g, hk_budget)?;
            let rec = OracleRecord {
                command: command_echo(),
                input_hash: hash,
                n: g.n(),
                held_karp: tour.length,
                tour: tour.order,
                wall_ms: millis(started, !no_timing),
            };
            emit(None, &to_json(&rec))?;
            Ok(0)
        }
        Command::Ser { input, lp_budget, no_timing } => {
            let (g, hash) = read_graph(&input)?;
            let started = Instant::now();
            let r = ser_value(&g, lp_budget)?;
            let rec = SerRecord {
                command: command_echo(),
                input_hash: hash,
                n: g.n(),
                value: r.value,
                iterations: r.iterations,
                active_cuts: r.active_cuts,
                wall_ms: millis(started, !no_timing),
            };
            emit(None, &to_json(&rec))?;
            Ok(0)
        }
        Command::Bench { family, params, algorithms, lower_bound, seed, jobs, budgets, no_timing, out } => {
            if !FamilySpec::NAMES.contains(&family.as_str()) {
                return Err(CliError::Usage(format!("unknown family {family:?}")));
            }
            let params = match params {
                Some(spec) => bench::parse_sweep(&spec).map_err(CliError::Usage)?.into_iter().map(Some).collect(),
                None => vec![None],
            };
            let sweep = Sweep { family, params, algorithms, lower: lower_bound, seed, timing: !no_timing };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let rows = pool.install(|| bench::run_sweep(&sweep, &budgets));
            let mut buf = Vec::new();
            bench::write_csv(&mut buf, &rows).map_err(|e| CliError::Io(e.to_string()))?;
            emit(out.as_deref(), &String::from_utf8(buf).expect("CSV is UTF-8"))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.code())
        }
    }
}
