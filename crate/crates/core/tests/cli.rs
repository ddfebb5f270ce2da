use std::process::Command;

use wosp::cli::format::ExactEmission;
use wosp::cli::run;
use wosp::matrix_rep::build_generators;

fn wosp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wosp"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_args(args: &[&str]) -> wosp::cli::CliOutput {
    run(std::iter::once("wosp").chain(args.iter().copied()))
}

#[test]
fn verify_matrix_exit_codes() {
    let (code, out, _) = wosp(&["verify", "--target", "matrix", "--dim", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("12/12 relations zero"), "{out}");
    let (code, _, err) = wosp(&["verify", "--target", "matrix", "--dim", "4"]);
    assert_eq!(code, 3);
    assert!(err.contains("must be odd"), "{err}");
    let (code, _, _) = wosp(&["verify", "--no-such-flag"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_fock_reports_discrepancy() {
    let (code, out, _) = wosp(&["verify", "--target", "fock", "--levels", "8", "--j", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let d = &v["discrepancy"];
    assert_eq!(d["delta_zero"], false);
    assert_eq!(d["first_nonzero_level"], 1);
    assert!(d.get("j").is_some() && d.get("relation_residual_level0").is_some());
    assert_eq!(v["passed"], v["total"]);

    let special = run_args(&["verify", "--target", "fock", "--j", "-1/(1+q)", "--format", "json"]);
    assert_eq!(special.code, 0);
    let v: serde_json::Value = serde_json::from_str(&special.stdout).unwrap();
    assert_eq!(v["discrepancy"]["delta_zero"], true);
    assert!(v["discrepancy"]["first_nonzero_level"].is_null());
}

#[test]
fn verify_other_targets() {
    assert_eq!(run_args(&["verify", "--target", "oscillator", "--levels", "8"]).code, 0);
    assert_eq!(run_args(&["verify", "--target", "qderiv", "--degree", "8"]).code, 0);
    let b = run_args(&["verify", "--target", "bosonic", "--dim", "3", "--format", "json"]);
    assert_eq!(b.code, 1);
    let v: serde_json::Value = serde_json::from_str(&b.stdout).unwrap();
    let rows = v["relations"].as_array().unwrap();
    let zero: Vec<bool> = rows.iter().map(|r| r["symbolic_zero"].as_bool().unwrap()).collect();
    assert_eq!(zero, vec![true, true, false, true]);
    let notes = v["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("s = r^2")));
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("r = s^2")));
    assert_eq!(run_args(&["verify", "--target", "bosonic", "--dim", "1"]).code, 0);
}

#[test]
fn verify_sample_rules() {
    for bad in ["0", "1", "-1", "2,1"] {
        assert_eq!(run_args(&["verify", "--q", bad]).code, 3, "{bad}");
    }
    assert_eq!(run_args(&["verify", "--q", "x"]).code, 2);
    let r = run_args(&["verify", "--q", "5/4,-3", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["q_samples"], serde_json::json!(["5/4", "-3/1"]));
}

#[test]
fn flag_target_mismatch_is_usage() {
    assert_eq!(run_args(&["verify", "--target", "matrix", "--levels", "3"]).code, 2);
    assert_eq!(run_args(&["verify", "--target", "oscillator", "--j", "1"]).code, 2);
    assert_eq!(run_args(&["verify", "--target", "fock", "--j", "1", "--m0", "2"]).code, 2);
    assert_eq!(run_args(&["verify", "--dim", "101"]).code, 3);
    assert_eq!(run_args(&["verify", "--target", "qderiv", "--degree", "1"]).code, 3);
}

#[test]
fn emit_latex_three_blocks() {
    let r = run_args(&["emit", "--target", "matrix", "--dim", "3", "--format", "latex"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.matches("\\begin{pmatrix}").count(), 3);
    assert!(r.stdout.contains("V_+ = "));
    assert!(r.stdout.contains("\\sqrt{-\\frac{1}{q^{2}}}"));
    let n = run_args(&["emit", "--dim", "3", "--q", "2", "--format", "latex"]);
    assert!(n.stdout.contains("0.5i") && n.stdout.contains("-0.5i"));
}

#[test]
fn emit_json_round_trips() {
    for args in [
        vec!["emit", "--target", "matrix", "--dim", "5"],
        vec!["emit", "--target", "fock", "--levels", "5", "--m0", "-1"],
        vec!["emit", "--target", "oscillator", "--levels", "5"],
        vec!["emit", "--target", "qderiv", "--degree", "4"],
        vec!["emit", "--target", "bosonic", "--dim", "3"],
    ] {
        let r = run_args(&args);
        assert_eq!(r.code, 0, "{args:?}");
        let e: ExactEmission = serde_json::from_str(&r.stdout).unwrap();
        let decoded = e.decode().unwrap();
        let again = ExactEmission::new(&e.target, e.size, &decoded);
        assert_eq!(again, e);
    }
    let r = run_args(&["emit", "--target", "matrix", "--dim", "3"]);
    let e: ExactEmission = serde_json::from_str(&r.stdout).unwrap();
    let m = e.decode().unwrap();
    let g = build_generators(3).unwrap();
    assert_eq!(&m[0].1, g.h());
    assert_eq!(&m[1].1, g.vplus());
    assert_eq!(&m[2].1, g.vminus());
}

#[test]
fn emit_dim1_is_zero() {
    let r = run_args(&["emit", "--target", "matrix", "--dim", "1", "--format", "json"]);
    let e: ExactEmission = serde_json::from_str(&r.stdout).unwrap();
    assert!(e.radicands.is_empty());
    assert!(e.decode().unwrap().iter().all(|(_, m)| m.is_zero()));
}

#[test]
fn emit_oscillator_csv() {
    let r = run_args(&["emit", "--target", "oscillator", "--levels", "3", "--q", "2", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let block = r.stdout.split("# a+ a\n").nth(1).unwrap();
    let diag: Vec<String> = block
        .lines()
        .take(3)
        .enumerate()
        .map(|(i, l)| l.split(',').nth(i).unwrap().to_string())
        .collect();
    assert_eq!(diag, vec!["0", "1", "3"]);
}

#[test]
fn emit_pole_is_domain_error() {
    assert_eq!(run_args(&["emit", "--dim", "3", "--q", "0"]).code, 3);
    assert_eq!(run_args(&["emit", "--target", "fock", "--m0", "1/(q-2)", "--q", "2"]).code, 3);
}

#[test]
fn scan_rows() {
    let r = run_args(&["scan", "--dims", "1..8", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 9);
    for (d, line) in (1..=8).zip(&lines[1..]) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], d.to_string());
        if d % 2 == 1 {
            assert_eq!(cells[1], "yes");
            assert_eq!(cells[2], cells[3]);
        } else {
            assert_eq!(cells[1], "parity-rejected");
        }
    }
    let r = run_args(&["scan", "--dims", "3..3", "--format", "csv"]);
    assert_eq!(r.stdout.lines().nth(1).unwrap(), "3,yes,12,12,false");
    let r = run_args(&["scan", "--dims", "4..2", "--format", "csv"]);
    assert_eq!((r.code, r.stdout.lines().count()), (0, 1));
}

#[test]
fn casimir_command() {
    let r = run_args(&["casimir", "--dim", "3", "--q", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let nums: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["numeric"].as_str().unwrap()).collect();
    assert_eq!(nums, vec!["0.75", "-0.75", "0.75"]);
    assert_eq!(v["scalar"], false);
    let r = run_args(&["casimir", "--target", "fock", "--m0", "1/(1+q)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["scalar"], true);
    assert_eq!(v["geometric"], true);
}

#[test]
fn output_is_deterministic() {
    let configs: [&[&str]; 4] = [
        &["verify", "--target", "matrix", "--dim", "7", "--format", "json"],
        &["verify", "--target", "oscillator", "--levels", "6"],
        &["scan", "--dims", "1..9"],
        &["emit", "--target", "matrix", "--dim", "5", "--q", "3/2", "--format", "csv"],
    ];
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    for args in configs {
        let a = run_args(args);
        let b = run_args(args);
        let c = single.install(|| run_args(args));
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a, c, "{args:?}");
    }
}
