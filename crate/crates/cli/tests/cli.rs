use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rankone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankone")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn theorem_sz8_lower_bound() {
    let out = rankone(&["theorem", "--family", "sz", "--q", "8"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["lower"], 60);
    assert_eq!(r["claimed_lower"], 60);
    assert_eq!(r["upper"], 62);
    assert_eq!(r["brute_distance"], 60);
    assert_eq!(r["pass"], true);
    assert!(r.get("elapsed_ms").is_none());
    assert!(r["witness"].as_array().is_some_and(|w| w.len() == 65));
}

#[test]
fn verify_system_sz_at_8() {
    let out = rankone(&["verify", "--lemma", "system-sz", "--q", "8"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let subs = r["sub_reports"].as_array().unwrap();
    assert_eq!(subs.len(), 7);
    assert!(subs.iter().all(|s| s["count"] == 4));
}

#[test]
fn brute_materialize_pgu3_11_is_infeasible() {
    let out = rankone(&["distance", "--family", "pgu3", "--q", "11", "--method", "brute", "--materialize"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("memory policy"));
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(code(&rankone(&["distance", "--family", "pgu3", "--q", "2", "--bogus"])), 2);
    assert_eq!(code(&rankone(&["distance", "--family", "nope", "--q", "2"])), 2);
    assert_eq!(code(&rankone(&["distance", "--family", "pgu3"])), 2);
    assert_eq!(code(&rankone(&["theorem", "--family", "sz", "--q", "4"])), 2);
    assert_eq!(code(&rankone(&["build", "--family", "pgl2", "--q", "8", "--modulus", "1,1,1,1"])), 2);
    assert_eq!(code(&rankone(&["verify", "--lemma", "eq8", "--q", "3", "--modulus", "0,1"])), 2);
    assert_eq!(code(&rankone(&["--help"])), 0);
}

#[test]
fn distance_both_methods_agree() {
    let out = rankone(&["distance", "--family", "pgu3", "--q", "3", "--method", "both", "--materialize"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["reduced"]["distance"], 24);
    assert_eq!(r["brute"]["distance"], 24);
    assert_eq!(r["reduced"]["justification"]["distinguished_pair_fixed"], true);
}

#[test]
fn special_groups_need_materialization_for_reduced() {
    let out = rankone(&["distance", "--family", "psu3", "--q", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert!(r.get("claimed").is_none());
    assert_eq!(r["reduced"]["justification"]["stabilizer_source"], "materialized");
}

#[test]
fn modulus_changes_labels_not_results() {
    let a = report(&rankone(&["distance", "--family", "pgu3", "--q", "4", "--modulus", "1,1,0,0,1"]));
    let b = report(&rankone(&["distance", "--family", "pgu3", "--q", "4"]));
    assert_eq!(a["reduced"]["distance"], b["reduced"]["distance"]);
    assert_eq!(a["config"]["modulus"], serde_json::json!([1, 1, 0, 0, 1]));
}

#[test]
fn covering_radius_psl2_7() {
    let out = rankone(&["covering-radius", "--family", "psl2", "--q", "7"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["radius"], 6);
    assert_eq!(r["method"], "exact");
}

#[test]
fn covering_radius_beyond_sweep_bound_is_infeasible() {
    assert_eq!(code(&rankone(&["covering-radius", "--family", "pgu3", "--q", "3"])), 3);
}

#[test]
fn build_dumps_domain_csv() {
    let out = rankone(&["build", "--family", "sz", "--q", "2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,x0,x1,x2");
    assert_eq!(lines[1], "0,inf,,");
    assert_eq!(lines.len(), 1 + 5);
}

#[test]
fn build_with_generator_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ree3.json");
    std::fs::write(&path, rankone::actions::REE3_GENERATORS).unwrap();
    let out = rankone(&["build", "--family", "ree", "--q", "3", "--materialize", "--generators", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["certificate"]["order"], 1512);
    assert_eq!(r["generators"].as_array().unwrap().len(), 5);

    // Dropping generators makes the closure too small: the order check fails.
    let mut file: Value = serde_json::from_str(rankone::actions::REE3_GENERATORS).unwrap();
    file["generators"].as_array_mut().unwrap().truncate(1);
    std::fs::write(&path, file.to_string()).unwrap();
    let out = rankone(&["build", "--family", "ree", "--q", "3", "--materialize", "--generators", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);

    // Generators for another family are refused up front.
    let out = rankone(&["build", "--family", "sz", "--q", "8", "--generators", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn geometry_subcommands() {
    let r = report(&rankone(&["geometry", "minkowski", "--q", "3"]));
    assert_eq!((r["points"].as_u64(), r["lines"].as_u64(), r["circles"].as_u64()), (Some(16), Some(8), Some(24)));
    assert_eq!(r["pass"], true);

    let out = rankone(&["geometry", "hermitian", "--q", "2", "--samples", "3"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["ovoids"].as_array().unwrap().len(), 4);

    let r = report(&rankone(&["geometry", "cr", "--ambient", "pg3", "--q", "4"]));
    assert_eq!(r["radius"], r["exact_radius"]);
    assert_eq!(r["method"], "geometric");

    let out = rankone(&["geometry", "cr", "--ambient", "pg3", "--q", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 5);

    assert_eq!(code(&rankone(&["geometry", "cr", "--ambient", "pg8", "--q", "3"])), 3);
}

fn read(p: &Path) -> Vec<u8> {
    std::fs::read(p).unwrap()
}

#[test]
fn smoke_suite_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(code(&rankone(&["suite", "smoke", "--seed", "7", "--out", a.to_str().unwrap()])), 0);
    assert_eq!(code(&rankone(&["suite", "smoke", "--seed", "7", "--out", b.to_str().unwrap()])), 0);
    assert_eq!(read(&a), read(&b));
    let r: Value = serde_json::from_slice(&read(&a)).unwrap();
    assert_eq!(r["summary"]["failed"], 0);
    assert_eq!(r["config"]["seed"], 7);
    let criteria: std::collections::BTreeSet<&str> =
        r["items"].as_array().unwrap().iter().map(|i| i["criterion"].as_str().unwrap()).collect();
    assert_eq!(criteria.len(), 13);
}

#[test]
fn suite_lists_skipped_items_under_a_small_memory_limit() {
    let out = rankone(&["suite", "smoke", "--max-elements", "1000"]);
    assert_eq!(code(&out), 3);
    let r = report(&out);
    let skipped = r["skipped"].as_array().unwrap();
    assert!(skipped.iter().any(|s| s.as_str().unwrap().starts_with("c2/d(h,sz)/q=8")));
    assert_eq!(r["summary"]["failed"], 0);
}

#[test]
fn timing_is_opt_in() {
    let r = report(&rankone(&["verify", "--lemma", "eq8", "--q", "3", "--timing"]));
    assert!(r["elapsed_ms"].is_u64());
}
