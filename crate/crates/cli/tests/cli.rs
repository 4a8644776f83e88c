use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn systems(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-trace")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn run_file(command: &str, file: &str, extra: &[&str]) -> Output {
    let path = systems(file);
    let mut args = vec![command, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn example_one_trace() {
    let out = run_file("trace", "example1.txt", &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["value"], "8/1");
    assert_eq!(v["e"], "1");
    assert_eq!(v["index"], "8");
    assert_eq!(v["oracle_agrees"], true);
}

#[test]
fn every_backend_agrees_on_example_one() {
    for backend in ["ce", "macaulay", "oracle"] {
        let out = run_file("trace", "example1.txt", &["--backend", backend]);
        assert!(out.status.success(), "{backend}");
        assert_eq!(json(&out)["value"], "8/1", "{backend}");
    }
    let out = run_file("trace", "example1.txt", &["--backend", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mixed_volume_of_unit_squares() {
    for strategy in ["inclusion-exclusion", "mixed-cells"] {
        let out = run_file("mixed-volume", "unit_squares.txt", &["--strategy", strategy]);
        assert_eq!(json(&out)["value"], "2");
    }
}

#[test]
fn euler_jacobi_on_a_quadratic() {
    let v = json(&run_file("euler-jacobi", "quadratic.txt", &[]));
    assert_eq!(v["rho"], "1");
    assert_eq!(v["all_below_rho_zero"], true);
}

#[test]
fn cds_commands() {
    let v = json(&run_file("denominator", "cds.txt", &[]));
    assert_eq!(v["agrees_up_to_sign"], true);
    assert_eq!(v["facets"].as_array().unwrap().len(), 2);
    let v = json(&run_file("compare-denominators", "cds.txt", &[]));
    assert_eq!(v["ours_le_cds"], true);
    assert_eq!(v["strict_where_nonpositive"], true);
    let v = json(&run_file("facets", "cds.txt", &[]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 5);
    let v = json(&run_file("trace", "cds.txt", &["--p", "t1^2"]));
    assert_eq!(v["oracle_agrees"], true);
}

#[test]
fn residues_and_discriminants() {
    let v = json(&run_file("residue", "quadratic.txt", &["--monomial", "0"]));
    assert_eq!(v["value"], "0/1");
    let v = json(&run_file("residue", "conics.txt", &[]));
    assert_eq!(v["oracle_agrees"], true);
    let v = json(&run_file("torus-residue", "conics.txt", &["--monomial", "1,2"]));
    assert_eq!(v["oracle_agrees"], true);
    let v = json(&run_file("discriminant", "quadratic.txt", &[]));
    assert!(v["discriminant"] == "4/1" || v["discriminant"] == "-4/1");
    let v = json(&run_file("chow-trace", "roots.txt", &[]));
    assert_eq!(v["oracle_agrees"], true);
    assert_eq!(v["value"], v["ideal_oracle"]);
    let a = json(&run_file("resultant", "lines.txt", &[]));
    let b = json(&run_file("resultant", "lines.txt", &["--backend", "macaulay"]));
    assert_eq!(a["value"].as_str().unwrap().trim_start_matches('-'), b["value"].as_str().unwrap().trim_start_matches('-'));
}

#[test]
fn output_is_deterministic() {
    for (cmd, file) in [("trace", "example1.txt"), ("compare-denominators", "cds.txt"), ("denominator", "cds.txt")] {
        let a = run_file(cmd, file, &["--seed", "42"]);
        let b = run_file(cmd, file, &["--seed", "42"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert_eq!(json(&a)["seed"], 42);
    }
}

#[test]
fn verification_suite_passes() {
    let out = run(&["verify", "--seed", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["all_passed"], true);
}

#[test]
fn errors_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "vars: x y\nf1: x + y\nf2: x *+ 2\n").unwrap();
    let out = run(&["trace", "--input", bad.to_str().unwrap(), "--p", "x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column"));

    let double = dir.path().join("double.txt");
    std::fs::write(&double, "vars: x\nf1: x^2 - 2*x + 1\n").unwrap();
    let out = run(&["trace", "--input", double.to_str().unwrap(), "--p", "1", "--q", "x - 1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["trace"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["trace", "--input", "/nonexistent/file"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}
