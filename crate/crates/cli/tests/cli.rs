use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ammd_core::io::{read_result, OutputFormat};
use ammd_core::{Algorithm, DistanceValue};

fn ammd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ammd")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

/// Three sources at distance 0 to two sinks; every other distance is 6.
const STAR: &str = "0 6 6 0 0\n6 0 6 0 0\n6 6 0 0 0\n6 6 6 0 6\n6 6 6 6 0\n";

#[test]
fn solve_writes_result_and_prints_labels() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "star.txt", STAR);
    let out = dir.path().join("r.json");
    let o = ammd(&[
        "solve", "--input", input.to_str().unwrap(), "--format", "matrix", "--algorithm", "exact", "--k", "3",
        "--output", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(stdout(&o), "score: 6\nsolution: 0 1 2\n");
    let r = read_result(&out, OutputFormat::Json).unwrap();
    assert_eq!(r.instance, "star");
    assert_eq!(r.algorithm, Algorithm::Exact);
    assert_eq!(r.score, DistanceValue::Int(6));

    let csv = dir.path().join("r.csv");
    let o = ammd(&[
        "solve", "--input", input.to_str().unwrap(), "--format", "matrix", "--algorithm", "greedy", "--k", "3",
        "--start-rule", "fixed:3", "--output", csv.to_str().unwrap(), "--output-format", "csv",
    ]);
    assert!(o.status.success());
    assert_eq!(read_result(&csv, OutputFormat::Csv).unwrap().score, DistanceValue::Int(0));
}

#[test]
fn greedy_at_k_equal_n_takes_everything() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "star.txt", STAR);
    let o = ammd(&["solve", "--input", input.to_str().unwrap(), "--format", "matrix", "--algorithm", "greedy", "--k", "5"]);
    assert_eq!(stdout(&o), "score: 0\nsolution: 0 1 2 3 4\n");
}

#[test]
fn edge_list_reports_original_labels() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", "a b 1\nb c 1\nc a 1\nb a 5\nc b 5\na c 5\n");
    let o = ammd(&[
        "solve", "--input", input.to_str().unwrap(), "--format", "edgelist", "--algorithm", "bacf", "--k", "2",
        "--center-rule", "first",
    ]);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    assert!(text.starts_with("score: 1\nsolution: "), "{text}");
    assert!(text.lines().nth(1).unwrap().split(' ').skip(1).all(|l| ["a", "b", "c"].contains(&l)));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let star = write(dir.path(), "star.txt", STAR);
    let star = star.to_str().unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["solve", "--format", "matrix", "--algorithm", "bac"];
        args.extend_from_slice(extra);
        ammd(&args).status.code()
    };
    assert_eq!(run(&["--input", star, "--k", "1"]), Some(1));
    assert_eq!(run(&["--input", star, "--k", "3", "--bogus"]), Some(1));
    assert_eq!(run(&["--input", star, "--k", "x"]), Some(1));
    assert_eq!(run(&["--input", star, "--k", "6"]), Some(3));
    let ragged = write(dir.path(), "ragged.txt", "0 1\n1\n");
    assert_eq!(run(&["--input", ragged.to_str().unwrap(), "--k", "2"]), Some(2));
    assert_eq!(run(&["--input", "/nonexistent/file", "--k", "2"]), Some(2));
    let skewed = write(dir.path(), "skewed.txt", "0 9 1\n1 0 1\n1 1 0\n");
    let skewed = skewed.to_str().unwrap();
    assert_eq!(run(&["--input", skewed, "--k", "2"]), Some(2));
    assert_eq!(run(&["--input", skewed, "--k", "2", "--close"]), Some(0));
    assert_eq!(ammd(&["--help"]).status.code(), Some(0));
}

#[test]
fn validate_reports_table_columns() {
    let dir = tempfile::tempdir().unwrap();
    let tsp = "NAME: tiny\nTYPE: ATSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n\
               EDGE_WEIGHT_SECTION\n0 3 4\n4 0 3\n3 4 0\nEOF\n";
    let input = write(dir.path(), "tiny.atsp", tsp);
    let o = ammd(&["validate", "--input", input.to_str().unwrap(), "--format", "tsplib"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in ["instance: tiny", "n: 3", "min distance: 3", "max distance: 4", "distinct distances: 2", "pseudometric: yes"] {
        assert!(text.contains(line), "{line} missing from\n{text}");
    }
    assert!(text.contains("epsilon-symmetry: 0.333333"));

    let one = write(dir.path(), "one.txt", "0\n");
    let text = stdout(&ammd(&["validate", "--input", one.to_str().unwrap(), "--format", "matrix"]));
    assert!(text.contains("n: 1\ndistances: none\n"), "{text}");

    let junk = write(dir.path(), "junk.txt", "0 x\n1 0\n");
    assert_eq!(ammd(&["validate", "--input", junk.to_str().unwrap(), "--format", "matrix"]).status.code(), Some(2));
}

#[test]
fn generate_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["scale-free", "random-complete", "epsilon-symmetric", "asymmetric-norm"] {
        let out = dir.path().join(format!("{kind}.txt"));
        let o = ammd(&["generate", "--kind", kind, "--n", "30", "--seed", "2", "--output", out.to_str().unwrap()]);
        assert!(o.status.success(), "{kind}: {o:?}");
        let text = stdout(&ammd(&["validate", "--input", out.to_str().unwrap(), "--format", "matrix"]));
        assert!(text.contains("n: 30\n") && text.contains("pseudometric: yes"), "{kind}: {text}");
    }
}

fn without_elapsed(csv: &str) -> Vec<String> {
    let mut rd = csv::Reader::from_reader(csv.as_bytes());
    let headers = rd.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "elapsed_ms").unwrap();
    rd.records()
        .map(|r| {
            let r = r.unwrap();
            r.iter().enumerate().filter(|&(i, _)| i != col).map(|(_, f)| f).collect::<Vec<_>>().join(",")
        })
        .collect()
}

#[test]
fn bench_is_deterministic_and_bounded() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "star.txt", STAR);
    let config = r#"{
        "instances": [{"path": "star.txt", "format": "matrix"}],
        "synthetic": [{"kind": "random-complete", "sizes": [14], "max_weight": 60, "seed": 3},
                      {"kind": "scale-free", "sizes": [40], "seed": 5}],
        "algorithms": ["greedy", "random", "naive-ma", "bac", "bacr", "bacf", "exact"],
        "k": [2, 3, 5],
        "seed": 11,
        "output": "out.csv",
        "output_format": "csv",
        "series_dir": "series"
    }"#;
    let cfg = write(dir.path(), "bench.json", config);
    let cfg = cfg.to_str().unwrap();
    let o = ammd(&["bench", "--config", cfg, "--jobs", "4"]);
    assert!(o.status.success(), "{o:?}");
    let first = fs::read_to_string(dir.path().join("out.csv")).unwrap();
    assert!(first.starts_with(
        "instance,n,unique_distances,algorithm,k,score,pct_of_opt,proven_optimal,elapsed_ms,error\n"
    ));
    assert_eq!(first.lines().count(), 1 + 3 * 7 * 3);
    let again = ammd(&["bench", "--config", cfg, "--jobs", "1", "--output", dir.path().join("b.csv").to_str().unwrap()]);
    assert!(again.status.success());
    let second = fs::read_to_string(dir.path().join("b.csv")).unwrap();
    assert_eq!(without_elapsed(&first), without_elapsed(&second));

    let mut rd = csv::Reader::from_reader(first.as_bytes());
    for rec in rd.records() {
        let rec = rec.unwrap();
        let (alg, k, pct) = (&rec[3], rec[4].parse::<f64>().unwrap(), &rec[6]);
        assert!(rec[9].is_empty(), "{rec:?}");
        let pct: f64 = pct.parse().expect("exact completes on these sizes");
        assert!(pct <= 100.0, "{rec:?}");
        if ["bac", "bacr", "bacf"].contains(&alg) {
            assert!(pct >= 100.0 / (6.0 * k) - 0.01, "{rec:?}");
        }
    }
    let series = dir.path().join("series");
    assert!(fs::read_to_string(series.join("score_vs_k.csv")).unwrap().starts_with("instance,algorithm,k,score\n"));
    assert!(fs::read_to_string(series.join("runtime.csv"))
        .unwrap()
        .starts_with("instance,algorithm,k,n,unique_distances,elapsed_ms\n"));
}

#[test]
fn bench_scores_converge_at_full_size() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "synthetic": [{"kind": "random-complete", "sizes": [12], "max_weight": 40, "seed": 9}],
        "algorithms": ["greedy", "random", "naive-ma", "bac", "bacr", "bacf", "exact"],
        "k": [12],
        "output_format": "json"
    }"#;
    let cfg = write(dir.path(), "sweep.json", config);
    let o = ammd(&["bench", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 7);
    let scores: Vec<&serde_json::Value> = rows.iter().map(|r| &r["score"]).collect();
    assert!(scores.iter().all(|s| *s == scores[0]), "{scores:?}");
}

#[test]
fn bench_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "empty.json",
        r#"{"synthetic": [{"kind": "scale-free", "sizes": [10]}], "algorithms": [], "k": [2]}"#,
    );
    let o = ammd(&["bench", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no algorithms"));
}
