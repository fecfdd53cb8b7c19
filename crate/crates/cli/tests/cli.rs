use std::process::{Command, Output};

use invsemi_core::SemigroupSummary;
use serde_json::Value;

fn invsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invsemi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = invsemi(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    serde_json::from_str(&stdout(&v)).expect("valid JSON")
}

/// The value after `label: ` on a line of human output.
fn field(text: &str, label: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{label}: ")))
        .unwrap_or_else(|| panic!("no {label:?} in {text}"))
        .to_string()
}

#[test]
fn info_reports_frobenius_as_json() {
    let v = json(&["info", "41,99,70,53"]);
    assert_eq!(v["frobenius"], 1019);
    assert_eq!(v["type"], 1);
    assert_eq!(v["symmetric"], true);
}

#[test]
fn invpoly_prints_standard_notation() {
    assert_eq!(stdout(&["invpoly", "3,4,5", "7"]), "X1*X2");
    assert_eq!(stdout(&["invpoly", "3,4,5", "6"]), "X1^2");
    assert_eq!(stdout(&["invpoly", "4,5,6", "12"]), "X1^3 + X3^2");
    assert_eq!(stdout(&["invpoly", "4,6,5", "12"]), "X1^3 + X2^2");
}

#[test]
fn invpoly_follows_input_order() {
    assert_eq!(
        stdout(&["invpoly", "41,99,70,53", "1060"]),
        "X2^10*X3 + X4^20"
    );
    let v = json(&["invpoly", "41,99,70,53", "1060"]);
    assert_eq!(v["text"], "X2^10*X3 + X4^20");
    assert_eq!(v["generators"], serde_json::json!([41, 99, 70, 53]));
}

#[test]
fn invalid_generators_are_usage_errors() {
    for args in [
        &["info", "0,3"][..],
        &["info", ""],
        &["info", "3,x"],
        &["frobnicate"],
    ] {
        let out = invsemi(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = invsemi(&["verify-intersection", "3,4,5", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_one() {
    for args in [
        &["bresinsky", "3,4,5"][..],
        &["classify", "5,6,7,9"],
        &["verify-4gor", "6,7,8,9"],
        &["ann", "3,4,5", "2"],
        &["bresinsky", "4,6,9,15"],
    ] {
        let out = invsemi(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("invsemi: "));
    }
}

#[test]
fn info_json_round_trips() {
    for gens in ["41,99,70,53", "11,13,17", "5,6,7,9", "1"] {
        let v = json(&["info", gens]);
        let s: SemigroupSummary = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(serde_json::to_value(&s).unwrap(), v);
        assert_eq!(s.to_text(), stdout(&["info", gens]));
    }
}

#[test]
fn human_and_json_agree() {
    let text = stdout(&["info", "11,13,17"]);
    let v = json(&["info", "11,13,17"]);
    assert_eq!(field(&text, "frobenius"), v["frobenius"].to_string());
    assert_eq!(field(&text, "genus"), v["genus"].to_string());
    assert_eq!(field(&text, "type"), v["type"].to_string());
    assert_eq!(field(&text, "pseudo-frobenius"), "{49, 53}");

    let text = stdout(&["ann", "11,13,17", "143"]);
    let v = json(&["ann", "11,13,17", "143"]);
    assert_eq!(field(&text, "colength"), "84");
    assert_eq!(v["colength"], 84);

    let text = stdout(&["hec", "4", "1"]);
    let v = json(&["hec", "4", "1"]);
    assert!(text.starts_with("H_{4,1} = <5, 6, 7, 8>"));
    assert_eq!(v["generators"], serde_json::json!([5, 6, 7, 8]));
    assert_eq!(
        field(&text, "frobenius"),
        format!(
            "{} (predicted {})",
            v["frobenius"], v["predicted_frobenius"]
        )
    );

    let text = stdout(&["factorize", "3,4,5", "12"]);
    let v = json(&["factorize", "3,4,5", "12"]);
    assert!(text.starts_with("3 factorization(s) of 12"));
    assert_eq!(v["count"], "3");
    assert_eq!(v["factorizations"].as_array().unwrap().len(), 3);
}

#[test]
fn factorization_listing_respects_bound() {
    let v = json(&["factorize", "3,4,5", "60", "--bound", "5"]);
    assert_eq!(v["factorizations"].as_array().unwrap().len(), 5);
    let count: u64 = v["count"].as_str().unwrap().parse().unwrap();
    assert!(count > 5);
    assert!(stdout(&["factorize", "3,4,5", "60", "--bound", "5"]).contains("(first 5 listed)"));
}

#[test]
fn bresinsky_emits_structure() {
    let v = json(&["bresinsky", "41,99,70,53"]);
    assert_eq!(v["alpha"], serde_json::json!([3, 11, 2, 20]));
    assert_eq!(v["ordered_generators"], serde_json::json!([41, 99, 70, 53]));
    assert_eq!(v["generators"].as_array().unwrap().len(), 5);
    assert_eq!(v["alpha_off"]["a42"], 10);
    let w = v["witness_index"].as_u64().unwrap() as usize;
    assert!((1..=4).contains(&w));
    assert_eq!(v["ordered_generators"][w - 1], v["witness_generator"]);
}

#[test]
fn verify_4gor_passes_on_examples() {
    for gens in ["41,99,70,53", "43,20,27,37", "5,6,7,8"] {
        let v = json(&["verify-4gor", gens]);
        assert_eq!(v["passed"], true);
        assert_eq!(v["mu"], 5);
    }
}

#[test]
fn glue_matches_prediction() {
    let v = json(&[
        "glue",
        "--h1",
        "2,3",
        "--d1",
        "5",
        "--h2",
        "1",
        "--d2",
        "4",
        "--invpoly",
        "6",
        "1",
    ]);
    assert_eq!(v["frobenius"], v["predicted"]["frobenius"]);
    assert_eq!(v["type"], v["predicted"]["type"]);
    assert_eq!(v["invpoly"]["m"], 34);
    let out = invsemi(&["glue", "--h1", "2,3", "--d1", "4", "--h2", "1", "--d2", "6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn random_intersection_checks_are_seeded() {
    let args = [
        "verify-intersection",
        "5,6,7,9",
        "--random",
        "6",
        "--seed",
        "7",
    ];
    let a = json(&args);
    assert_eq!(a, json(&args));
    let certs = a["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 6);
    for c in certs {
        assert_eq!(c["lhs_colength"], c["rhs_colength_by_degrees"]);
    }
    let v = json(&["verify-intersection", "4,6,5", "0,1,1", "--eliminate"]);
    let c = &v["certificates"][0];
    assert_eq!(c["lhs_colength"], c["rhs_colength_by_elimination"]);
}

#[test]
fn small_multiplicity_and_freeness_commands() {
    let v = json(&["classify", "5,6,7,8"]);
    assert_eq!(v["multiplicity_offset"], 1);
    let v = json(&["free", "4,6,9"]);
    assert_eq!(v["free"], true);
    assert_eq!(v["witness"]["telescopic_frobenius"], 11);
    let v = json(&["ci", "4,6,9"]);
    assert_eq!(v["same_degree_ci"], false);
    let v = json(&["ci", "12,15,20"]);
    assert_eq!(v["alpha"], serde_json::json!([5, 4, 3]));
    let v = json(&["mu", "41,99,70,53"]);
    assert_eq!(v["mu"], 5);
    let v = json(&["apery", "3,4,5"]);
    assert_eq!(v["apery"], serde_json::json!([0, 4, 5]));
    let text = stdout(&["check-as", "5,6,7,9", "5"]);
    assert!(text.starts_with("h = 5: colength"));
}
