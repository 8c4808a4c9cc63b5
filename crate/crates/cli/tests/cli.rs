use std::process::{Command, Output};

use serde_json::Value;

fn qcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qcoh(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn quantum_relations_genus_three() {
    let v = json(&["relations", "--genus", "3", "--flavor", "quantum", "--format", "json"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "relations");
    assert_eq!(v["status"], "ok");
    let texts: Vec<&str> = v["payload"]["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["text"].as_str().unwrap())
        .collect();
    assert_eq!(
        texts,
        [
            "ah^3 + 5*ah*bh + 4*gh - 24*ah",
            "ah^2*bh + 4/3*ah*gh + bh^2 + 8*ah^2 + 16*bh + 64",
            "ah^2*gh + bh*gh + 8*gh",
        ]
    );
}

#[test]
fn genus_two_line_invariants_are_refused() {
    let out = qcoh(&["gw", "--genus", "2", "--a", "5", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("genus 2 excluded"));
}

#[test]
fn degree_imbalance_is_a_precondition_error() {
    let out = qcoh(&["gw", "--genus", "3", "--a", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("6g - 2 = 16"));
}

#[test]
fn alpha_eight() {
    let v = json(&["gw", "--genus", "3", "--a", "8", "--format", "json"]);
    let p = &v["payload"];
    assert_eq!(p["value"], "5632");
    assert_eq!(p["donaldson"], "5632");
    assert_eq!(p["engine"], "both");
    assert!(p["convention"].as_str().unwrap().starts_with("vol(J) = phi1^phi(1+g)"));
}

#[test]
fn donaldson_sign_at_genus_four() {
    let v = json(&["gw", "--genus", "4", "--a", "11", "--format", "json"]);
    let value: i64 = v["payload"]["value"].as_str().unwrap().parse().unwrap();
    let donaldson: i64 = v["payload"]["donaldson"].as_str().unwrap().parse().unwrap();
    assert_eq!(donaldson, -value);
}

#[test]
fn psi_indices_are_parsed() {
    let v = json(&["gw", "--genus", "3", "--a", "5", "--psi", "1,4", "--format", "json"]);
    assert_eq!(v["payload"]["query"]["psi"], serde_json::json!([1, 4]));
    let swapped = json(&["gw", "--genus", "3", "--a", "5", "--psi", "4,1", "--format", "json"]);
    let a: i64 = v["payload"]["value"].as_str().unwrap().parse().unwrap();
    let b: i64 = swapped["payload"]["value"].as_str().unwrap().parse().unwrap();
    assert_eq!(a, -b);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(qcoh(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(qcoh(&["gw", "--genus", "3", "--nope"]).status.code(), Some(64));
    assert_eq!(qcoh(&["verify", "--suite", "nope"]).status.code(), Some(64));
    assert_eq!(qcoh(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_all_passes() {
    let out = qcoh(&["verify", "--suite", "all", "--genus", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for suite in ["relations", "grr", "lemma9", "gw", "prop19", "quantum"] {
        assert!(text.contains(&format!("PASS {suite}:")), "missing {suite}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_json_report() {
    let v = json(&["verify", "--suite", "prop19", "--format", "json"]);
    assert_eq!(v["payload"]["passed"], true);
    assert_eq!(v["payload"]["suites"][0]["suite"], "prop19");
}

#[test]
fn output_is_deterministic() {
    let args = ["gw-table", "--genus", "4", "--format", "json"];
    assert_eq!(qcoh(&args).stdout, qcoh(&args).stdout);
    let args = ["relations", "--genus", "6", "--flavor", "floer"];
    assert_eq!(qcoh(&args).stdout, qcoh(&args).stdout);
}

#[test]
fn gw_table_csv() {
    let out = qcoh(&["gw-table", "--genus", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("genus,a,b,psi,value,donaldson"));
    assert!(text.contains("3,8,0,,5632,5632"));
    assert!(lines.all(|l| l.split(',').count() == 6));
}

#[test]
fn gw_table_genus_bound() {
    let out = qcoh(&["gw-table", "--genus", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qcoh(&["gw-table", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conjectural_flag() {
    let out = qcoh(&["relations", "--genus", "4", "--flavor", "quantum"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&["relations", "--genus", "4", "--flavor", "quantum", "--conjectural", "--format", "json"]);
    assert_eq!(v["payload"]["conjectural"], true);
    assert_eq!(v["conventions"]["conjectural"], true);
    let out = qcoh(&["qmul", "--genus", "4", "--expr", "ah*gh", "--conjectural"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("CONJECTURAL"));
}

#[test]
fn quantum_products() {
    let out = qcoh(&["qmul", "--genus", "2", "--expr", "ah * ah"]);
    assert_eq!(stdout(&out).trim(), "-bh + 8");
    let out = qcoh(&["qmul", "--genus", "3", "--expr", "gh*gh*gh"]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn normal_forms_and_bases() {
    let out = qcoh(&["nf", "--genus", "2", "--expr", "a^2"]);
    assert_eq!(stdout(&out).trim(), "-b");
    let v = json(&["basis", "--genus", "3", "--format", "json"]);
    assert_eq!(v["payload"]["dimension"], 10);
    let out = qcoh(&["nf", "--genus", "2", "--expr", "a^+"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_and_grr() {
    let v = json(&["decompose", "--genus", "3", "--format", "json"]);
    assert_eq!(v["payload"]["total"], 48);
    let out = qcoh(&["grr", "--genus", "2"]);
    let text = stdout(&out);
    assert!(text.contains("ch E = -p_*(...): 4*phi2*phi4 + 4*phi1*phi3 + 2"));
    assert!(text.contains("ch(E + E): 8*phi2*phi4 + 8*phi1*phi3 + 4"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qcoh-out-{}.json", std::process::id()));
    let out = qcoh(&["decompose", "--genus", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["payload"]["total"], 8);
    std::fs::remove_file(path).unwrap();
}
