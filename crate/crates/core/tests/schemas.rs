use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};
use super_catalan::bijections::{trace, Bijection};
use super_catalan::identities::{verify_theorem_main, Bounds, Suite};
use super_catalan::paths::{enumerate, FamilySpec};
use super_catalan::qpoly::QPoly;

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", name]
        .iter()
        .collect();
    let value: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    panic!("{name}: {}\n{doc}", msgs.join("; "));
}

#[test]
fn qpoly_values() {
    for p in [
        QPoly::zero(),
        QPoly::from_i64s(-3, &[1, 0, -2]),
        QPoly::monomial(num_bigint::BigInt::from(10).pow(40), 7),
    ] {
        assert_valid("qpoly.schema.json", &serde_json::to_value(&p).unwrap());
    }
    let s = schema("qpoly.schema.json");
    assert!(!s.is_valid(&json!({"min_deg": 0, "coeffs": [1, 2]})));
    assert!(!s.is_valid(&json!({"coeffs": ["1"]})));
    assert!(!s.is_valid(&json!({"min_deg": 0, "coeffs": ["1.5"]})));
}

#[test]
fn reports() {
    let b = Bounds::default().with_overrides(Some(4), Some(3), Some(8));
    for r in Suite::All.run(&b) {
        assert_valid("report.schema.json", &serde_json::to_value(&r).unwrap());
    }
    let printed = &verify_theorem_main(3)[1];
    let mut doc = serde_json::to_value(printed).unwrap();
    assert_valid("report.schema.json", &doc);
    let s = schema("report.schema.json");
    doc["status"] = json!("fail");
    assert!(s.is_valid(&doc));
    doc["witness"] = Value::Null;
    assert!(!s.is_valid(&doc), "fail without a witness must be rejected");
    doc["status"] = json!("maybe");
    assert!(!s.is_valid(&doc));
}

#[test]
fn traces() {
    for (b, family) in [
        (Bijection::Psi, FamilySpec::HeightAbove(4, 2)),
        (Bijection::Phi, FamilySpec::HeightAtMost(4, 2)),
        (Bijection::F, FamilySpec::BallotStar(4)),
        (Bijection::G, FamilySpec::BallotStarStar(5)),
        (Bijection::GInv, FamilySpec::Catalan(5)),
    ] {
        for p in enumerate(family).unwrap() {
            if let Ok(t) = trace(b, &p) {
                assert_valid("trace.schema.json", &serde_json::to_value(&t).unwrap());
            }
        }
    }
    let s = schema("trace.schema.json");
    assert!(!s.is_valid(
        &json!({"name": "h", "input": "01", "output": "01", "case": null,
        "landmarks": {}, "stat_delta": {"maj": 0, "des": 0}})
    ));
}

#[test]
fn cli_documents() {
    let bin = env!("CARGO_BIN_EXE_supercat");
    let run = |args: &[&str]| -> Value {
        let out = Command::new(bin).args(args).output().unwrap();
        assert!(out.status.success(), "{args:?}");
        serde_json::from_slice(&out.stdout).unwrap()
    };
    assert_valid(
        "table.schema.json",
        &run(&["table", "Bq", "n=1..5", "--format", "json"]),
    );
    assert_valid(
        "table.schema.json",
        &run(&["table", "T", "1..3", "1..3", "--format", "json"]),
    );
    assert_valid(
        "listing.schema.json",
        &run(&["enumerate", "ballot:3,2", "--format", "json"]),
    );
    assert_valid(
        "listing.schema.json",
        &run(&["enumerate", "all:2,3", "--stats", "--format", "json"]),
    );
    assert_valid(
        "genfun.schema.json",
        &run(&[
            "enumerate",
            "catalan:4",
            "--genfun",
            "maj",
            "--format",
            "json",
        ]),
    );
    assert_valid(
        "trace.schema.json",
        &run(&["biject", "f", "0111", "--trace"]),
    );
}
