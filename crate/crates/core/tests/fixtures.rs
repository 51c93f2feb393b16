use std::fs;
use std::path::PathBuf;

use eigenform_core::triples::{builtin, validate_triple, TripleFile, BUILTIN_NAMES};
use eigenform_core::{DirichletForm, FractalTriple};

fn fixture(rel: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(rel);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn triple_fixtures_match_builtins() {
    for name in BUILTIN_NAMES {
        let from_disk =
            FractalTriple::from_json(&fixture(&format!("triples/{name}.json"))).unwrap();
        assert_eq!(from_disk, builtin(name).unwrap(), "{name}");
    }
}

#[test]
fn canonical_json_roundtrip() {
    for name in BUILTIN_NAMES {
        let t = builtin(name).unwrap();
        assert_eq!(FractalTriple::from_json(&t.to_json()).unwrap(), t);
    }
}

#[test]
fn invalid_fixtures_report_conditions() {
    let raw: TripleFile =
        serde_json::from_str(&fixture("triples/gasket_condition_b.json")).unwrap();
    let report = validate_triple(&raw).unwrap();
    assert!(!report.pass);
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].condition, "b");
    assert_eq!(report.violations[0].witness, "(i=1,h=2,j=2)");

    let raw: TripleFile = serde_json::from_str(&fixture("triples/disconnected.json")).unwrap();
    let report = validate_triple(&raw).unwrap();
    assert!(report.violations.iter().any(|v| v.condition == "c"));
}

#[test]
fn form_fixtures_load() {
    let e = DirichletForm::from_json(&fixture("forms/gasket_pair12.json")).unwrap();
    assert_eq!(e.coeffs(), &[1.0, 0.0, 0.0]);
    let e = DirichletForm::from_json(&fixture("forms/tripod_pair23.json")).unwrap();
    assert!(!e.is_irreducible(1e-14));
    let e = DirichletForm::from_json(&fixture("forms/uniform3.json")).unwrap();
    assert_eq!(e.norm(), 3.0);
}
