use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::{json, Value};

static COUNTER: AtomicUsize = AtomicUsize::new(0);

fn write_temp(contents: &str) -> PathBuf {
    let k = COUNTER.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!("slrev-cli-{}-{k}.json", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn spec_file(blocks: &[(&str, usize)]) -> PathBuf {
    let blocks: Vec<Value> = blocks.iter().map(|(l, s)| json!({"eigenvalue": l, "size": s})).collect();
    write_temp(&json!({ "blocks": blocks }).to_string())
}

fn matrix_file(rows: &[Vec<String>]) -> PathBuf {
    write_temp(&json!({"rows": rows.len(), "cols": rows[0].len(), "entries": rows}).to_string())
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slrev")).args(args).output().unwrap()
}

fn run_with(sub: &str, path: &Path, extra: &[&str]) -> Output {
    let mut args = vec![sub, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_three_unipotent_twos_is_reversible_only() {
    let f = spec_file(&[("1", 2), ("1", 2), ("1", 2)]);
    let o = run_with("classify", &f, &["--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["strong_reversibility"]["condition2_value"], 3);
    assert_eq!(v["involutive_det_sign"], "-1");
    let t = run_with("classify", &f, &[]);
    assert_eq!(code(&t), 1);
    assert!(text(&t).contains("□□\n  □□\n  □□"));
}

#[test]
fn classify_odd_minus_one_block_is_strongly_reversible() {
    let f = spec_file(&[("-1", 3)]);
    let o = run_with("classify", &f, &["--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["strong_reversibility"]["condition1"], true);
}

#[test]
fn classify_unmatched_block_exits_two() {
    let f = spec_file(&[("2", 2), ("1/2", 3)]);
    let o = run_with("classify", &f, &["--format", "json"]);
    assert_eq!(code(&o), 2);
    let w = &stdout_json(&o)["reversibility"]["failure_witness"];
    assert_eq!(w["eigenvalue"], "2");
    assert_eq!(w["size"], 2);
    assert!(text(&run_with("classify", &f, &[])).contains("no partner"));
}

#[test]
fn invalid_input_exits_three() {
    let zero = spec_file(&[("0", 2)]);
    let o = run_with("classify", &zero, &[]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("eigenvalue 0"));
    assert_eq!(code(&run_with("classify", &write_temp("{\"blocks\": ["), &[])), 3);
    assert_eq!(code(&run_with("weyr", &write_temp("{\"blocks\": [{\"eigenvalue\": \"1/0\", \"size\": 1}]}"), &[])), 3);
    assert_eq!(code(&run(&["classify"])), 3);
    assert_eq!(code(&run(&["classify", "--input", "/nonexistent/spec.json"])), 3);
}

#[test]
fn exit_codes_ignore_format() {
    let specs = [
        spec_file(&[("1", 2), ("1", 2)]),
        spec_file(&[("1", 2)]),
        spec_file(&[("i", 1)]),
        spec_file(&[("2", 3), ("1/2", 3)]),
    ];
    for f in &specs {
        for sub in [&["classify"][..], &["witness"], &["witness", "--sl-only"], &["weyr"]] {
            let mut extra: Vec<&str> = sub[1..].to_vec();
            let t = code(&run_with(sub[0], f, &extra));
            extra.extend(["--format", "json"]);
            assert_eq!(t, code(&run_with(sub[0], f, &extra)), "{sub:?} {f:?}");
        }
    }
}

#[test]
fn involutive_witness_for_single_four_block() {
    let f = spec_file(&[("1", 4)]);
    let o = run_with("witness", &f, &["--involutive", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["report"]["reverses"], true);
    assert_eq!(v["report"]["involution"], true);
    assert_eq!(v["report"]["determinant"], "1");
    assert_eq!(v["report"]["in_special"], true);
}

#[test]
fn involutive_witness_refused_with_forced_sign() {
    let f = spec_file(&[("1", 2)]);
    let o = run_with("witness", &f, &["--involutive"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Forced(-1)"));
    assert!(o.stdout.is_empty());
}

#[test]
fn sl_only_witness_squares_to_minus_identity() {
    let f = spec_file(&[("1", 2)]);
    let o = run_with("witness", &f, &["--sl-only", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    // -i·Ω(1,2) with Ω(1,2) = diag(-1, 1).
    assert_eq!(v["g"]["entries"], json!([["i", "0"], ["0", "-i"]]));
    assert_eq!(v["report"]["involution"], false);
    assert_eq!(v["report"]["determinant"], "1");
    assert!(text(&run_with("witness", &f, &["--sl-only"])).contains("g² = -I"));
}

#[test]
fn witness_of_non_reversible_exits_two() {
    let f = spec_file(&[("2", 1)]);
    assert_eq!(code(&run_with("witness", &f, &[])), 2);
    assert_eq!(code(&run_with("witness", &f, &["--sl-only"])), 2);
}

#[test]
fn witness_json_round_trips_through_verify() {
    for (blocks, sl_only) in [
        (&[("1", 2), ("1", 2)][..], false),
        (&[("i", 3), ("-i", 3), ("-1", 2)], false),
        (&[("1", 2), ("1", 2), ("1", 2)], true),
        (&[("2", 1), ("1/2", 1), ("1", 3)], false),
    ] {
        let f = spec_file(blocks);
        let mut extra = vec!["--format", "json"];
        if sl_only {
            extra.push("--sl-only");
        }
        let o = run_with("witness", &f, &extra);
        assert_eq!(code(&o), 0, "{blocks:?}");
        let bundle = stdout_json(&o);
        let w = write_temp(&bundle.to_string());
        let by_input = run(&["verify", "--input", w.to_str().unwrap(), "--format", "json"]);
        let ws = w.to_str().unwrap();
        let by_paths = run(&["verify", "--matrix-a", ws, "--matrix-g", ws, "--format", "json"]);
        for v in [&by_input, &by_paths] {
            assert_eq!(stdout_json(v), bundle["report"], "{blocks:?}");
            assert_eq!(code(v), if sl_only { 1 } else { 0 });
        }
    }
}

fn s(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

#[test]
fn verify_identity() {
    let i = matrix_file(&s(&[&["1", "0"], &["0", "1"]]));
    let p = i.to_str().unwrap();
    assert_eq!(code(&run(&["verify", "--matrix-a", p, "--matrix-g", p])), 0);
}

#[test]
fn verify_omega_plus_minus_omega() {
    let a = matrix_file(&s(&[
        &["1", "1", "0", "0"],
        &["0", "1", "0", "0"],
        &["0", "0", "1", "1"],
        &["0", "0", "0", "1"],
    ]));
    let g = matrix_file(&s(&[
        &["-1", "0", "0", "0"],
        &["0", "1", "0", "0"],
        &["0", "0", "1", "0"],
        &["0", "0", "0", "-1"],
    ]));
    let o = run(&["verify", "--matrix-a", a.to_str().unwrap(), "--matrix-g", g.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["residuals"], json!([]));
}

#[test]
fn verify_generic_reverser_of_three_twos() {
    let mut a = vec![vec!["0".to_string(); 6]; 6];
    for k in 0..6 {
        a[k][k] = "1".into();
        if k % 2 == 0 {
            a[k][k + 1] = "1".into();
        }
    }
    // Rows 1, 3, 5 are free and each following row is determined by them.
    // Vandermonde entries keep g invertible.
    let x = |i: usize, j: usize| format!("{}", (i as i64 + 2).pow(j as u32));
    let mut g = vec![vec!["0".to_string(); 6]; 6];
    for i in [0, 2, 4] {
        g[i] = (0..6).map(|j| x(i, j)).collect();
        for j in [1, 3, 5] {
            g[i + 1][j] = format!("-{}", x(i, j - 1));
        }
    }
    let (fa, fg) = (matrix_file(&a), matrix_file(&g));
    let o = run(&["verify", "--matrix-a", fa.to_str().unwrap(), "--matrix-g", fg.to_str().unwrap(), "--format", "json"]);
    let v = stdout_json(&o);
    assert_eq!(v["reverses"], true);
    assert_eq!(v["involution"], false);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_dimension_mismatch_exits_three() {
    let a = matrix_file(&s(&[&["1", "0"], &["0", "1"]]));
    let g = matrix_file(&s(&[&["1"]]));
    let o = run(&["verify", "--matrix-a", a.to_str().unwrap(), "--matrix-g", g.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimension mismatch"));
}

#[test]
fn weyr_of_four_four_two() {
    let f = spec_file(&[("1", 4), ("1", 4), ("1", 2)]);
    let o = run_with("weyr", &f, &["--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["structures"][0]["weyr"], json!([3, 3, 2, 2]));
    assert_eq!(v["structures"][0]["jordan"], json!([4, 4, 2]));
    assert_eq!(v["matrix"]["rows"], 10);
    assert_eq!(v["matrix"]["entries"][6], json!(["0", "0", "0", "0", "0", "0", "1", "0", "1", "0"]));
    let t = text(&run_with("weyr", &f, &[]));
    assert!(t.contains("Weyr = (3,3,2,2)") && t.contains("Jordan = (4,4,2)"));
}

#[test]
fn weyr_of_single_block_and_semisimple() {
    let single = stdout_json(&run_with("weyr", &spec_file(&[("2", 3)]), &["--format", "json"]));
    assert_eq!(single["structures"][0]["weyr"], json!([1, 1, 1]));
    let semi = stdout_json(&run_with("weyr", &spec_file(&[("2", 1), ("3", 1), ("2", 1)]), &["--format", "json"]));
    let entries = &semi["matrix"]["entries"];
    assert_eq!(entries, &json!([["2", "0", "0"], ["0", "2", "0"], ["0", "0", "3"]]));
}

#[test]
fn selftest_passes_and_detects_a_broken_classifier() {
    let small = run(&["selftest", "--max-n", "1", "--format", "json"]);
    assert_eq!(code(&small), 0);
    assert_eq!(stdout_json(&small)["passed"], true);
    assert_eq!(code(&run(&["selftest", "--max-n", "4", "--seed", "7"])), 0);
    let broken = run(&["selftest", "--max-n", "4", "--inject-fault"]);
    assert_ne!(code(&broken), 0);
    assert!(text(&broken).contains("FAIL"));
}
