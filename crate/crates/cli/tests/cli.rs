use std::process::Command;

use amicable::verify::Suite;
use amicable::{count_formula_total, IntMatrix2};
use amicable_cli::{dispatch, dispatch_with, run, run_with, Hooks, Status};
use serde_json::Value;

fn args(line: &[&str]) -> Vec<String> {
    std::iter::once("amicable").chain(line.iter().copied()).map(String::from).collect()
}

fn lines(stdout: &str) -> Vec<Value> {
    stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn ternarize_worked_example() {
    let report = dispatch(args(&["ternarize", "--phi", "0->001,1->00101", "--psi", "0->010,1->01001"]));
    assert_eq!(report.status, Status::Ok);
    assert_eq!(report.records[0]["eta"], "A->AB,B->ABABB,C->ABAC");
    assert_eq!(report.records[0]["b"], 3);
}

#[test]
fn non_amicable_pair_is_property_false() {
    let report = dispatch(args(&["ternarize", "--phi", "0->001,1->00101", "--psi", "0->100,1->10100"]));
    assert_eq!(report.status, Status::PropertyFalse);
}

#[test]
fn member_rejects_with_projection_diagnostic() {
    let inv = run(args(&["member", "--eta", "A->B,B->CAC,C->C"]));
    assert_eq!(inv.code, 1);
    let out = lines(&inv.stdout);
    assert_eq!(out[0]["member"], false);
    // sigma01(CAC) = 101
    assert_eq!(out[0]["diagnostic"], "sigma01(B)=101 != 011");
    assert_eq!(out[1]["status"], "property-false");
}

#[test]
fn member_recovers_pair() {
    let report = dispatch(args(&["member", "--eta", "A->AB,B->ABABB,C->ABAC"]));
    assert_eq!(report.status, Status::Ok);
    assert_eq!(report.records[0]["phi"], "0->001,1->00101");
    assert_eq!(report.records[0]["psi"], "0->010,1->01001");
}

#[test]
fn count_with_comparison_agrees_up_to_twelve() {
    let report = dispatch(args(&["count", "--max-norm", "12", "--compare"]));
    assert_eq!(report.status, Status::Ok);
    assert!(!report.records.is_empty());
    assert!(report.records.iter().all(|r| r["agrees"] == true && r["formula"] == r["brute"]));
    assert_eq!(report.summary["disagreements"], 0);
}

#[test]
fn every_suite_exits_zero() {
    for suite in Suite::ALL {
        let max = match suite {
            Suite::LemmaW => "12",
            Suite::Preserve => "4",
            _ => "6",
        };
        let inv = run(args(&["verify", "--suite", suite.name(), "--max-norm", max, "--samples", "30"]));
        assert_eq!(inv.code, 0, "{suite}: {}", inv.stdout.lines().last().unwrap());
    }
}

#[test]
fn planted_off_by_one_flips_counting_suite() {
    fn off_by_one(a: &IntMatrix2) -> amicable::Result<u64> {
        Ok(count_formula_total(a)? + 1)
    }
    let hooks = Hooks { count_formula: off_by_one };
    let argv = args(&["verify", "--suite", "counting", "--max-norm", "8"]);
    assert_eq!(run(argv.clone()).code, 0);
    let inv = run_with(argv, &hooks);
    assert_eq!(inv.code, 1);
    let summary = lines(&inv.stdout).pop().unwrap();
    assert_eq!(summary["status"], "property-false");
    assert!(summary["failures"].as_u64().unwrap() > 0);

    let report = dispatch_with(args(&["count", "--max-norm", "6", "--compare"]), &hooks);
    assert_eq!(report.status, Status::PropertyFalse);
}

#[test]
fn malformed_inputs_exit_two() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["member", "--eta", "A->X"],
        &["member", "--eta", "0->01,1->1"],
        &["std", "--matrix", "2,1;3"],
        &["std", "--matrix", "2,0;0,2"],
        &["word2", "--slope", "(3-sqrt(q))/2", "-n", "5"],
        &["word2", "--slope", "3/2", "-n", "5"],
        &["word3", "--alpha", "1/2", "--beta", "1/2", "-n", "5"],
        &["classify", "--matrix3", "1,2;3,4"],
        &["verify", "--suite", "nope"],
    ];
    for case in cases {
        let inv = run(args(case));
        assert_eq!(inv.code, 2, "{case:?}");
        let summary = lines(&inv.stdout).pop().unwrap();
        assert_eq!(summary["status"], "invalid-input");
        assert!(!summary["message"].as_str().unwrap().is_empty());
    }
}

#[test]
fn malformed_literal_names_the_token() {
    let report = dispatch(args(&["word2", "--slope", "(3-sqrt(q))/2", "-n", "5"]));
    assert_eq!(report.command, "word2");
    assert!(report.message.unwrap().contains("\"q\""));
}

#[test]
fn pair_records_carry_everything_needed_to_recheck() {
    let report = dispatch(args(&["pairs", "--matrix", "2,1;3,2"]));
    assert_eq!(report.records.len(), 18);
    for r in &report.records {
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["b", "b0", "b1", "eta", "k", "kbar", "matrix3", "phi", "psi"]);
        let again = dispatch(args(&["ternarize", "--phi", r["phi"].as_str().unwrap(), "--psi", r["psi"].as_str().unwrap()]));
        assert_eq!(&again.records[0], r);
    }
    let filtered = dispatch(args(&["pairs", "--matrix", "2,1;3,2", "--b", "2"]));
    assert_eq!(filtered.records.len(), 6);
}

#[test]
fn output_is_deterministic_and_independent_of_scheduling() {
    let argv = args(&["pairs", "--matrix", "3,2;4,3"]);
    assert_eq!(run(argv.clone()), run(argv));
    let par = run(args(&["count", "--max-norm", "9", "--compare"]));
    let seq = run(args(&["--sequential", "count", "--max-norm", "9", "--compare"]));
    assert_eq!(par.stdout, seq.stdout);
    let monoid = args(&["verify", "--suite", "monoid", "--samples", "25", "--seed", "7"]);
    assert_eq!(run(monoid.clone()).stdout, run(monoid).stdout);
}

#[test]
fn json_lines_have_sorted_keys_and_trailing_summary() {
    let inv = run(args(&["enum", "--matrix", "2,1;3,2"]));
    let out = lines(&inv.stdout);
    assert_eq!(out.len(), 8);
    for (raw, parsed) in inv.stdout.lines().zip(&out) {
        let keys: Vec<&String> = parsed.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(raw, parsed.to_string());
    }
    let summary = out.last().unwrap();
    assert_eq!(summary["record"], "summary");
    assert_eq!(summary["count"], 7);
    assert_eq!(out.iter().filter(|r| r["standard"] == true).count(), 1);
}

#[test]
fn degenerate_word3_parameters_warn() {
    let inv = run(args(&["word3", "--alpha", "(3-sqrt(5))/2", "--beta", "sqrt(5)-2", "-n", "12"]));
    assert_eq!(inv.code, 0);
    assert!(inv.stderr.contains("rational"));
    let out = lines(&inv.stdout);
    assert_eq!(out[0]["nondegenerate"], false);
    assert_eq!(out[0]["word"], "ACACACACACAC");

    let inv = run(args(&["preserve", "--eta", "A->A,B->B,C->C", "--alpha", "(3-sqrt(5))/2", "--beta", "sqrt(5)-2"]));
    assert_eq!(inv.code, 2);
}

#[test]
fn preserve_and_probe() {
    let ok = dispatch(args(&[
        "preserve", "--eta", "A->AB,B->ABABB,C->ABAC", "--alpha", "(3-sqrt(5))/2", "--beta", "1/4", "-n", "300", "--kmax", "10",
    ]));
    assert_eq!(ok.status, Status::Ok);
    assert_eq!(ok.records[0]["holds"], true);

    let probe = dispatch(args(&["probe", "--eta", "A->B,B->CAC,C->C"]));
    assert_eq!(probe.status, Status::Ok);
    let hit = probe.records.iter().find(|r| r["label"] == "eta.xi1").unwrap();
    assert_eq!(hit["member"], true);
    assert_eq!(hit["phi"], "0->1,1->01");
    assert_eq!(hit["psi"], "0->1,1->10");
}

#[test]
fn classify_swap_matrix() {
    let report = dispatch(args(&["classify", "--matrix3", "0,0,1;0,1,0;1,0,0"]));
    assert_eq!(report.status, Status::PropertyFalse);
    assert_eq!(report.records[0]["e_condition"], -1);
    let report = dispatch(args(&["classify", "--matrix3", "1,1,0;2,3,0;2,1,1"]));
    assert_eq!(report.status, Status::Ok);
    assert_eq!(report.records[0]["a"], "2,1;3,2");
}

#[test]
fn pretty_output_is_a_table() {
    let inv = run(args(&["--pretty", "enum", "--matrix", "1,1;1,2"]));
    let first = inv.stdout.lines().next().unwrap();
    assert!(first.starts_with("index") || first.contains("morphism"));
    assert!(inv.stdout.contains("enum: ok"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_amicable");
    let code = |a: &[&str]| Command::new(bin).args(a).output().unwrap().status.code();
    assert_eq!(code(&["std", "--matrix", "2,1;3,2"]), Some(0));
    assert_eq!(code(&["member", "--eta", "A->B,B->CAC,C->C"]), Some(1));
    assert_eq!(code(&["member", "--eta", "nonsense"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
    let out = Command::new(bin).args(["std", "--matrix", "2,1;3,2"]).output().unwrap();
    let rec: Value = serde_json::from_slice(out.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(rec["morphism"], "0->010,1->01001");
}
