use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use blf::fibration::{search_factorizations_with, SearchLimits};
use blf::{Convention, FibrationError, Quotient, UnimodularMatrix};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn blf(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_blf"))
        .args(args)
        .output()
        .unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

fn blf_file(command: &str, name: &str) -> (i32, Value) {
    let path = fixture(name);
    blf(&[command, "--file", path.to_str().unwrap()])
}

#[test]
fn every_report_carries_the_ledger() {
    let (code, json) = blf_file("classify", "single_b.blf");
    assert_eq!(code, 0);
    let ledger = &json["ledger"];
    assert_eq!(ledger["sigma_cap"], -1);
    assert_eq!(ledger["sigma_family"], -1);
    assert_eq!(ledger["coherent"], true);
    assert_eq!(json["result"]["class"]["kind"], "twist_power");
    assert_eq!(json["result"]["class"]["exponent"], 1);
}

#[test]
fn family_completion_certificate() {
    let (code, json) = blf_file("complete", "family_k2_n3.blf");
    assert_eq!(code, 0);
    let cert = &json["result"]["certificate"];
    assert_eq!(cert["completable"], true);
    assert_eq!(cert["twist_axis"], serde_json::json!([0, 1]));
    assert_eq!(cert["twist_exponent"], -16);
    assert_eq!(cert["cap_euler_number"], -16);
    assert_eq!(cert["mu"], 8);
    assert_eq!(json["reference"]["completion"], "5CP2 # 3CP2bar");
    assert_eq!(json["discrepancies"][0]["difference"], 2);
}

#[test]
fn classification_branches_over_fixtures() {
    for (name, kind, code) in [
        ("empty.blf", "identity", 0),
        ("elliptic_ab.blf", "elliptic", 2),
        ("minus_identity.blf", "minus_identity", 2),
        ("negative_parabolic.blf", "negative_parabolic", 2),
        ("hyperbolic.blf", "hyperbolic", 2),
    ] {
        let (c, json) = blf_file("classify", name);
        assert_eq!(c, code, "{name}");
        assert_eq!(json["result"]["class"]["kind"], kind, "{name}");
    }
}

#[test]
fn certify_with_surface_blocks() {
    let (code, json) = blf_file("certify", "surface_pair.blf");
    assert_eq!(code, 0);
    assert_eq!(json["result"]["surface_log_admissible"], true);
    let (code, json) = blf_file("certify", "surface_odd.blf");
    assert_eq!(code, 2);
    assert_eq!(json["result"]["stable_gcs"]["verdict"], "certified");
    assert_eq!(json["result"]["surface_log_admissible"], false);
    let (code, json) = blf_file("certify", "elliptic_ab.blf");
    assert_eq!(code, 2);
    assert_eq!(
        json["result"]["stable_gcs"]["failed"],
        "boundary_twist_power"
    );
}

#[test]
fn parse_errors_carry_positions() {
    let (code, json) = blf_file("classify", "bad_nonprimitive.blf");
    assert_eq!(code, 1);
    assert_eq!(json["error"]["kind"], "parse");
    assert!(json["error"]["message"]
        .as_str()
        .unwrap()
        .starts_with("1:10:"));
    let (code, _) = blf_file("classify", "missing.blf");
    assert_eq!(code, 1);
}

#[test]
fn hurwitz_canon_keeps_monodromy() {
    let (code, json) = blf_file("hurwitz-canon", "family_k1_n0.blf");
    assert_eq!(code, 0);
    assert_eq!(json["result"]["monodromy_preserved"], true);
    assert_eq!(
        json["result"]["monodromy"],
        serde_json::json!([[1, 0], [-9, 1]])
    );
}

#[test]
fn search_from_target_and_quotients() {
    let (code, json) = blf(&[
        "search",
        "--target",
        "(0,1)(1,0)",
        "--length",
        "2",
        "--bound",
        "2",
    ]);
    assert_eq!(code, 0);
    let raw = json["result"]["search"]["raw_count"].as_u64().unwrap();
    assert!(raw >= 1);
    let (code, json) = blf(&[
        "search",
        "--target",
        "(0,1)(1,0)",
        "--length",
        "2",
        "--bound",
        "2",
        "--quotient",
        "hurwitz",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        json["result"]["search"]["words"].as_array().unwrap().len(),
        1
    );
}

#[test]
fn resource_limit_returns_partial_results() {
    let target = UnimodularMatrix::from_rows([[1, 0], [-9, 1]]);
    let limits = SearchLimits {
        max_nodes: 50,
        ..SearchLimits::default()
    };
    match search_factorizations_with(&target, 3, 3, Quotient::None, Convention::STANDARD, limits) {
        Err(FibrationError::ResourceLimit { limit, partial }) => {
            assert_eq!(limit, 50);
            for w in &partial {
                assert_eq!(blf::total_monodromy(w), target);
            }
        }
        other => panic!("expected a resource limit, got {other:?}"),
    }
}

#[test]
fn usage_errors_exit_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_blf"))
        .args(["search", "--bound", "x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_blf"))
        .arg("--help")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
