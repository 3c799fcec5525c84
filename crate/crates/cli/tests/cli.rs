use std::process::{Command, Output};

use serde_json::Value;

fn qheis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qheis")).args(args).env_remove("QHEIS_SEED").output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn nf_of_e_c() {
    let out = qheis(&["nf", "--algebra", "Dq", "--m", "1", "--n", "1", "E*c"]);
    assert!(out.status.success());
    let v = &lines(&out)[0];
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["coeff"], "1");
    assert_eq!(terms[0]["mono"], serde_json::json!({"c": 1, "E": 1}));
    assert_eq!(terms[1]["mono"], serde_json::json!({"K": 1, "a": -1}));
}

#[test]
fn pair_k_a() {
    let out = qheis(&["pair", "--m", "1", "--n", "1", "K", "a"]);
    assert!(out.status.success());
    assert_eq!(lines(&out)[0]["value"], "q^-1");
}

#[test]
fn inverse_of_b_is_an_error() {
    let out = qheis(&["nf", "--algebra", "Oq", "b^-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn phi2_macro_elaborates() {
    let out = qheis(&["nf", "--algebra", "S", "q^-2*(Fp*bp - bp*Fp)"]);
    assert!(out.status.success());
    assert_eq!(lines(&out)[0]["text"], "(-1 + q^-2)*Fp*bp + 1");
}

#[test]
fn smash_and_phi_suites_pass() {
    let out = qheis(&["verify", "--suite", "smash,phi"]);
    assert!(out.status.success());
    let v = lines(&out);
    let phi: Vec<&Value> = v.iter().filter(|r| r["suite"] == "phi" && r.get("check").is_some()).collect();
    assert!(phi.iter().all(|r| r["checked"] == 9 && r["passed"] == true));
    let smash = v.iter().find(|r| r["suite"] == "smash").unwrap();
    assert_eq!(smash["passed"], true);
    assert!(smash["checked"].as_u64().unwrap() >= 10);
}

#[test]
fn corrupted_fixture_reports_one_divergence() {
    let out = qheis(&["verify", "--suite", "confluence", "--corrupted"]);
    assert_eq!(out.status.code(), Some(1));
    let v = lines(&out);
    assert_eq!(v[0]["failures"].as_array().unwrap().len(), 1);
    assert_eq!(v.last().unwrap()["failed"], 1);
}

#[test]
fn seed_falls_back_to_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qheis"))
        .args(["verify", "--suite", "hopf"])
        .env("QHEIS_SEED", "5")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(lines(&out).last().unwrap()["seed"], 5);
}

#[test]
fn text_output_and_evaluation() {
    let out = qheis(&["--text", "nf", "--algebra", "Oq", "--q", "2", "q*a*b"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "2*a*b");
}

#[test]
fn ideal_member_with_certificate() {
    let out = qheis(&["ideal", "member", "I1", "(1 - q^2)*cp*Ep - 1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Verified"), "{text}");
}

#[test]
fn module_action() {
    let out = qheis(&["--text", "module", "act", "bp", "Fp"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("-q^2.v"));
}
