use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subcubic-tsp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn gen(dir: &TempDir, family: &str, param: Option<&str>) -> PathBuf {
    let path = dir.path().join(format!("{family}{}.txt", param.unwrap_or("")));
    let mut args = vec!["gen", family];
    args.extend(param);
    args.extend(["--out", path.to_str().unwrap()]);
    let out = run(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn solve(path: &Path, algorithm: &str, extra: &[&str]) -> (i32, Option<Value>) {
    let mut args = vec!["solve", path.to_str().unwrap(), "--algorithm", algorithm, "--no-timing"];
    args.extend(extra);
    let out = run(&args);
    let json = serde_json::from_slice(&out.stdout).ok();
    (code(&out), json)
}

#[test]
fn gen_writes_expected_headers() {
    let dir = TempDir::new().unwrap();
    let header = |p: &Path| std::fs::read_to_string(p).unwrap().lines().next().unwrap().to_string();
    assert_eq!(header(&gen(&dir, "petersen", None)), "10 15");
    assert_eq!(header(&gen(&dir, "fk", Some("2"))).split(' ').next().unwrap(), "22");
    let triple = std::fs::read_to_string(gen(&dir, "triple_edge", None)).unwrap();
    assert_eq!(triple, "2 3\n0 1\n0 1\n0 1\n");
}

#[test]
fn gen_rejects_unknown_family_and_bad_path() {
    assert_eq!(code(&run(&["gen", "dodecahedron"])), 2);
    assert_eq!(code(&run(&["gen", "petersen", "--out", "/nonexistent/dir/x.txt"])), 2);
}

#[test]
fn solve_petersen_ms_and_matchcomb() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "petersen", None);
    let (c, json) = solve(&p, "ms", &[]);
    let json = json.unwrap();
    assert_eq!(c, 0);
    assert_eq!(json["verified"], true);
    assert!(json["h_edges"].as_u64().unwrap() <= 12);
    for key in ["algorithm", "n", "m", "h_edges", "tour", "tour_length", "bound", "verified", "wall_ms", "input_hash"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    let (c, json) = solve(&p, "matchcomb", &["--oracle"]);
    let json = json.unwrap();
    assert_eq!(c, 0);
    assert_eq!(json["tour_length"], 11);
    assert_eq!(json["held_karp"], 11);
    assert_eq!(json["bound_thirds"], 34);
}

#[test]
fn solve_exit_codes() {
    let dir = TempDir::new().unwrap();
    let fk2 = gen(&dir, "fk", Some("2"));
    assert_eq!(solve(&fk2, "exact", &[]).0, 5);
    let k2m = gen(&dir, "k2m", Some("6"));
    assert_eq!(solve(&k2m, "ms", &[]).0, 4);
    let bridged = dir.path().join("bridged.txt");
    std::fs::write(&bridged, "6 7\n0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 3\n").unwrap();
    assert_eq!(solve(&bridged, "ms", &[]).0, 3);
    let (c, json) = solve(&bridged, "bridges", &[]);
    assert_eq!(c, 0);
    assert_eq!(json.unwrap()["h_edges"], 8);
    let k4 = gen(&dir, "k4", None);
    assert_eq!(solve(&k4, "matchcomb", &[]).0, 6);
    let garbage = dir.path().join("garbage.txt");
    std::fs::write(&garbage, "3 1\n0 x\n").unwrap();
    assert_eq!(solve(&garbage, "ms", &[]).0, 2);
    assert_eq!(solve(&dir.path().join("missing.txt"), "ms", &[]).0, 2);
    assert_eq!(code(&run(&["solve", k4.to_str().unwrap(), "--algorithm", "greedy"])), 2);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "random_cubic", Some("40"));
    let again = dir.path().join("again.txt");
    run(&["gen", "random_cubic", "40", "--seed", "0", "--out", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&g).unwrap(), std::fs::read(&again).unwrap());
    let a = run(&["solve", g.to_str().unwrap(), "-a", "ms", "--no-timing"]);
    let b = run(&["solve", g.to_str().unwrap(), "-a", "ms", "--no-timing"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "petersen", None);
    let rec = dir.path().join("rec.json");
    let out = run(&["solve", g.to_str().unwrap(), "-a", "ms", "--no-timing", "--out", rec.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let ok = run(&["verify", g.to_str().unwrap(), rec.to_str().unwrap()]);
    assert_eq!(code(&ok), 0);
    let mut json: Value = serde_json::from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    json["bound_thirds"] = Value::from(36);
    json["bound"] = Value::from(12.0);
    std::fs::write(&rec, json.to_string()).unwrap();
    let bad = run(&["verify", g.to_str().unwrap(), rec.to_str().unwrap()]);
    assert_eq!(code(&bad), 1);
    let verdict: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(verdict["verified"], false);
    assert!(verdict["failed_checks"].as_array().unwrap().contains(&Value::from("bound_consistency")));
}

#[test]
fn oracle_and_ser() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "petersen", None);
    let o: Value = serde_json::from_slice(&run(&["oracle", g.to_str().unwrap(), "--no-timing"]).stdout).unwrap();
    assert_eq!(o["held_karp"], 11);
    let s: Value = serde_json::from_slice(&run(&["ser", g.to_str().unwrap(), "--no-timing"]).stdout).unwrap();
    assert!((s["value"].as_f64().unwrap() - 10.0).abs() < 1e-6);
    let fk2 = gen(&dir, "fk", Some("2"));
    assert_eq!(code(&run(&["oracle", fk2.to_str().unwrap()])), 5);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn bench_random_cubic_sweep() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bench.csv");
    let args = ["bench", "random_cubic", "--params", "50:500:50", "--algorithms", "ms", "--no-timing"];
    let o = bin().args(args).args(["--jobs", "4", "--out", out.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(
        rows[0],
        ["family", "param", "n", "algorithm", "h_edges", "bound", "lower_bound", "ratio", "wall_ms", "status"]
    );
    assert_eq!(rows.len(), 11);
    for (row, n) in rows[1..].iter().zip((50..=500).step_by(50)) {
        assert_eq!(row[1], n.to_string());
        assert_eq!(row[9], "ok");
        assert!(row[7].parse::<f64>().unwrap() <= 4.0 / 3.0);
    }
    let single = bin().args(args).args(["--jobs", "1"]).output().unwrap();
    assert_eq!(single.stdout, text.as_bytes());
}

#[test]
fn bench_three_path_gap_and_empty_sweep() {
    let o =
        run(&["bench", "three_path", "--params", "2:6", "--algorithms", "exact", "--lower-bound", "lp", "--no-timing"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let ratios: Vec<f64> = csv_rows(&text)[1..].iter().map(|r| r[7].parse().unwrap()).collect();
    assert_eq!(ratios.len(), 5);
    assert!(ratios.windows(2).all(|w| w[1] >= w[0]));
    assert!(ratios.iter().all(|&r| r <= 4.0 / 3.0 + 1e-6));

    let empty = run(&["bench", "fk", "--params", ""]);
    assert_eq!(code(&empty), 0);
    assert_eq!(String::from_utf8(empty.stdout).unwrap().lines().count(), 1);
}

#[test]
fn bench_records_row_failures() {
    let o = run(&["bench", "fk", "--params", "1,2", "--algorithms", "exact,ms", "--no-timing"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1][9], "ok");
    assert!(rows[3][9].starts_with("budget-exceeded"));
    assert_eq!(rows[4][9], "ok");
}
