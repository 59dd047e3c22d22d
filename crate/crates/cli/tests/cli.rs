//! End-to-end runs of the binary: exit codes, JSON shape, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pi1iso"))
}

fn write_input(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_rp3_is_a_two_power_no_with_cover() {
    let input = write_input("rp3.json", r#"{"spherical":[{"order":2}],"s1xs2":0}"#);
    let out = run(&["classify", input.to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["case"], "TWO_POWER");
    for verdict in v["verdicts"].as_array().unwrap() {
        assert_eq!(verdict["answer"], "no");
        let cover = &verdict["certificate"]["cover"];
        assert_eq!(cover["a"], "1");
        assert_eq!(cover["b"], "0");
        assert_eq!(cover["index"], "1");
    }
}

#[test]
fn classify_free_case_is_yes_with_constructions() {
    let input = write_input("free3.json", r#"{"s1xs2":3}"#);
    let out = run(&["classify", input.to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["case"], "FREE");
    for verdict in v["verdicts"].as_array().unwrap() {
        assert_eq!(verdict["answer"], "yes");
        assert!(verdict["construction"].as_str().unwrap().contains("S^1 x D^3"));
        assert!(verdict["certificate"].is_null());
    }
}

#[test]
fn classify_aspherical_case_reports_factors() {
    let input = write_input("asp.json", r#"{"aspherical":["X"],"spherical":[{"order":5}]}"#);
    let out = run(&["classify", input.to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["case"], "ASPHERICAL");
    let cert = &v["verdicts"][0]["certificate"];
    assert_eq!(cert["tag"], "ASPHERICAL");
    assert_eq!(cert["factors"][0], "X");
    assert_eq!(cert["injective_h3"], true);
}

#[test]
fn stdout_is_byte_identical_across_runs() {
    let input = write_input("det.json", r#"{"spherical":[{"order":2},{"order":7}],"s1xs2":1}"#);
    let args = ["classify", input.to_str().unwrap(), "--json", "--verify"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // timing is segregated on stderr
    assert!(String::from_utf8_lossy(&a.stderr).contains("timing:"));
    assert!(!String::from_utf8_lossy(&a.stdout).contains("timing"));
}

#[test]
fn verify_passes_on_rp3_lens_sum() {
    let input = write_input("rp3l31.json", r#"{"spherical":[{"order":2},{"order":3}]}"#);
    let out = run(&["verify", input.to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"), "{checks:?}");
    assert!(checks
        .iter()
        .any(|c| c["name"].as_str().unwrap().contains("cup") && c["status"] == "pass"));
}

#[test]
fn verify_on_quaternion_table_checks_integral_h4() {
    let input = write_input("q8.json", r#"{"spherical":[{"order":8,"group":"q8"}]}"#);
    let out = run(&["verify", input.to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    let checks = v["checks"].as_array().unwrap();
    let h4 = checks
        .iter()
        .find(|c| c["name"].as_str().unwrap().contains("bar H_4"))
        .expect("integral H_4 check present");
    assert_eq!(h4["status"], "pass");
}

#[test]
fn strict_budget_skips_exit_with_code_three() {
    let input = write_input("l9.json", r#"{"spherical":[{"order":9}]}"#);
    let relaxed = run(&["verify", input.to_str().unwrap(), "--budget", "10"]);
    assert!(relaxed.status.success());
    let strict = run(&["verify", input.to_str().unwrap(), "--budget", "10", "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
    let normal = run(&["verify", input.to_str().unwrap(), "--strict"]);
    assert!(normal.status.success(), "default budget needs no skips on L(9,1)");
}

#[test]
fn ring_of_z2_reports_polynomial_powers() {
    let out = run(&["ring", "c2", "--prime", "2", "--json"]);
    let v = stdout_json(&out);
    let ring = &v["ring"];
    assert_eq!(ring["dims"], serde_json::json!([1, 1, 1, 1, 1]));
    let powers = ring["generator_powers"].as_array().unwrap();
    assert_eq!(powers.len(), 3);
    assert!(powers.iter().all(|e| e["nonzero"] == true), "x^4 != 0 in H^*(Z/2; Z/2)");
}

#[test]
fn cover_of_l4_matches_closed_form() {
    let input = write_input("l4.json", r#"{"spherical":[{"order":4}]}"#);
    let out = run(&["cover", input.to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["cover"]["a"], "1");
    assert_eq!(v["cover"]["b"], "0");
    assert_eq!(v["cover"]["index"], "2");
}

#[test]
fn homology_of_rp3_shows_mod_p_images() {
    let input = write_input("rp3h.json", r#"{"spherical":[{"order":2}]}"#);
    let out = run(&["homology", input.to_str().unwrap(), "--primes", "2,3", "--json"]);
    let v = stdout_json(&out);
    let h = &v["homology"];
    assert_eq!(h["kpi1"][3]["display"], "Z/2");
    assert_eq!(h["mod_p_images"][0]["nonzero"], true);
    assert_eq!(h["mod_p_images"][1]["nonzero"], false);
}

#[test]
fn bad_inputs_exit_with_code_two() {
    let garbled = write_input("bad.json", r#"{"spherical":[{"order":0}]}"#);
    let out = run(&["classify", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = run(&["classify", "/nonexistent/x.json"]);
    assert_eq!(missing.status.code(), Some(2));

    let lens = write_input("l3.json", r#"{"spherical":[{"order":3}]}"#);
    let wrong_case = run(&["cover", lens.to_str().unwrap()]);
    assert_eq!(wrong_case.status.code(), Some(2));

    let not_prime = run(&["ring", "c2", "--prime", "4"]);
    assert_eq!(not_prime.status.code(), Some(2));
}

#[test]
fn text_mode_mentions_verdicts_and_case() {
    let input = write_input("text.json", r#"{"spherical":[{"order":12}]}"#);
    let out = run(&["classify", input.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("case: ODD_PRIME"));
    assert!(text.contains("maps_to_4manifold: no"));
    assert!(text.contains("bounds_4manifold: no"));
    assert!(text.contains("p = 3"));
}
