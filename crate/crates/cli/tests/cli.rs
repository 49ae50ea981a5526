use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use skewore::ReportEnvelope;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_str().unwrap().to_string()
}

fn skewore(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_skewore")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn normalize_trivial_product() {
    let (code, out, _) = skewore(&["normalize", "x*1", "--preset", "jordan_plane"]);
    assert_eq!(code, 0);
    assert_eq!(out, "x\n");
}

#[test]
fn normalize_relations() {
    let (_, out, _) = skewore(&["normalize", "y*x", "--preset", "jordan_plane"]);
    assert_eq!(out, "x*y + y^2\n");
    let (_, out, _) = skewore(&["normalize", "x*y", "--preset", "quantum_plane", "--param", "q=2"]);
    assert_eq!(out, "2*y*x\n");
    let (_, out, _) = skewore(&["normalize", "(x + y)^0", "--preset", "jordan_plane"]);
    assert_eq!(out, "1\n");
}

#[test]
fn verify_lemma_on_residue_field() {
    let module = fixture("residue_field.ini");
    let (code, out, _) = skewore(&["verify-lemma", "--preset", "skew_poly_ring", "--module", &module]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("summary: pass, bound 5"), "{out}");
}

#[test]
fn finv_on_jordan_plane() {
    // sigma' = id and delta' = -delta, so f_2^1(x) = sigma'delta'(x) + delta'sigma'(x) = -2
    let (code, out, _) = skewore(&["finv", "2", "1", "x", "--preset", "jordan_plane"]);
    assert_eq!(code, 0);
    assert!(out.contains("f: -2\n"), "{out}");
    assert!(out.contains("oracle_match: true"), "{out}");
}

#[test]
fn json_reports_are_reproducible() {
    let z4 = fixture("z4.ini");
    let args = ["verify-theorem", "--algebra", &z4, "--bound", "2", "--format", "json", "--no-timing", "--seed", "3"];
    let (code, first, _) = skewore(&args);
    let (_, second, _) = skewore(&args);
    assert_eq!(code, 0, "{first}");
    assert_eq!(first, second);
    let report = ReportEnvelope::from_json(&first).unwrap();
    assert_eq!(report.to_json() + "\n", first);
    assert_eq!(report.command, "verify-theorem");
    assert_eq!(report.bound, Some(2));
    assert_eq!(report.result["att"][0], "(2)A");
}

#[test]
fn timing_is_reported_by_default() {
    let (_, out, _) = skewore(&["normalize", "x", "--preset", "jordan_plane", "--format", "json"]);
    let report = ReportEnvelope::from_json(&out).unwrap();
    assert!(report.elapsed_ms.is_some());
}

#[test]
fn exit_codes() {
    assert_eq!(skewore(&["normalize", "x*(", "--preset", "jordan_plane"]).0, 2);
    assert_eq!(skewore(&["normalize", "z", "--preset", "jordan_plane"]).0, 2);
    assert_eq!(skewore(&["normalize", "x", "--preset", "nope"]).0, 2);
    assert_eq!(skewore(&["bogus"]).0, 2);
    assert_eq!(skewore(&["normalize", "x", "--preset", "q_meromorphic_weyl", "--param", "q=1"]).0, 2);
    // ann(Z/4) = 0 is not prime
    assert_eq!(skewore(&["verify-lemma", "--preset", "skew_poly_ring"]).0, 1);
    let (code, out, _) = skewore(&["compat-check", "--algebra", &fixture("idempotent_swap.ini")]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] sigma-compatible: sigma fails at m = 1, r = t"), "{out}");
    assert_eq!(skewore(&["att", "--preset", "skew_poly_ring", "--param", "n=100000000"]).0, 3);
}

#[test]
fn malformed_config() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "[ring]\ncarrier = zmod\nn = 4\ncolour = red").unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let (code, _, err) = skewore(&["att", "--algebra", &path]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown key `colour`"), "{err}");
}

#[test]
fn act_and_ore_swap() {
    let (_, out, _) = skewore(&["act", "1 + y^-2", "x", "--preset", "jordan_plane"]);
    assert_eq!(out, "x - 2*y^-1 + x*y^-2\n");
    let (code, out, _) = skewore(&["ore-swap", "x", "3", "--preset", "jordan_plane"]);
    assert_eq!(code, 0);
    assert!(out.contains("[pass] x^p a = a_p x^p"));
    assert!(out.contains("a_p: x + 3*y"));
}

#[test]
fn catalog_self_tests_pass() {
    let (code, out, _) = skewore(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("[pass]").count(), 7, "{out}");
}

#[test]
fn product_probe_on_jordan_plane() {
    let (code, out, _) = skewore(&["product-probe", "--no-timing", "--format", "json"]);
    assert_eq!(code, 0);
    let report = ReportEnvelope::from_json(&out).unwrap();
    assert_eq!(report.result["index_exponent_matches"], true);
    assert_eq!(report.result["constant_exponent_matches"], false);
}

#[test]
fn primes_of_z4() {
    let z4 = fixture("z4.ini");
    let (_, out, _) = skewore(&["att", "--algebra", &z4]);
    assert!(out.contains("primes:\n  (2)\n"), "{out}");
    let (_, out, _) = skewore(&["ass", "--preset", "skew_poly_ring"]);
    assert!(out.contains("witness: {0, 2}"), "{out}");
}
