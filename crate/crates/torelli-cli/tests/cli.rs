//! End-to-end checks of the binary: canonical outputs, exit codes, and
//! byte-for-byte determinism.

use std::io::Write;
use std::process::{Command, Output};

fn torelli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torelli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout(out),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn tau_of_standard_fixture() {
    let out = torelli(&["tau", "--fixture", "standard_sip"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "-1·a2^a3^a4\n");
}

#[test]
fn sigma_of_standard_fixture() {
    let out = torelli(&["sigma", "--fixture", "standard_sip"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "a2 a4 + a2 a3 a4\n");
}

#[test]
fn contract_and_chillingworth() {
    let out = torelli(&["contract", "--fixture", "standard_sip"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "0\n");
    let out = torelli(&["chillingworth", "--fixture", "bp_genus1"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "2·a1\n");
    let out = torelli(&["chillingworth", "--fixture", "bp_genus2"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "4·a1\n");
}

#[test]
fn empty_factorization_renders_zero() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"genus": 2, "items": []}}"#).unwrap();
    let path = f.path().to_str().unwrap();
    let out = torelli(&["tau", "--input", path]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "0\n");
    let out = torelli(&["sigma", "--input", path]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn check_reports() {
    let out = torelli(&["check", "--fixture", "standard_sip"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "johnson_kernel: false\nbcj_kernel: false\n");
    let out = torelli(&["check", "--fixture", "sip_null_boundary"]);
    assert_eq!(stdout(&out), "johnson_kernel: true\nbcj_kernel: true\n");
    let out = torelli(&["check", "--fixture", "sip_two_homologous"]);
    assert_eq!(stdout(&out), "johnson_kernel: true\nbcj_kernel: false\n");
    let out = torelli(&["check", "--fixture", "sip_mod2_null"]);
    assert_eq!(stdout(&out), "johnson_kernel: false\nbcj_kernel: true\n");
    // a bounding pair followed by its inverse is a membership witness
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"genus": 2, "items": [
            {{"kind":"bp","sign":1,"class":[1,0,0,0],"basis":[[0,1,0,0],[0,0,0,1]]}},
            {{"kind":"bp","sign":-1,"class":[1,0,0,0],"basis":[[0,1,0,0],[0,0,0,1]]}}
        ]}}"#
    )
    .unwrap();
    let out = torelli(&["check", "--input", f.path().to_str().unwrap()]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "chillingworth_membership: true\n");
    let out = torelli(&["check", "--fixture", "lantern_shadow"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "torelli_shadow: true\n");
}

#[test]
fn classify_command() {
    let out = torelli(&["classify", "[a,b]"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "pseudo-Anosov\n");
    let out = torelli(&["classify", "b^-1 (a b)^3 b"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "reducible\n");
    let out = torelli(&["classify", "a b a^-1 b^-1 b a b^-1 a^-1"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "finite-order\n");
    // symbol outside the generator set: domain error
    let out = torelli(&["classify", "c"]);
    assert_code(&out, 3);
    // malformed word: schema error
    let out = torelli(&["classify", "[a,b"]);
    assert_code(&out, 2);
}

#[test]
fn derive_fixtures_and_failure_modes() {
    for name in [
        "lemma_factorsip",
        "putman_f5",
        "sip_equality",
        "sip_distinctness",
        "johnson_lemma10",
    ] {
        let out = torelli(&["derive", "--fixture", name]);
        assert_code(&out, 0);
        let text = stdout(&out);
        assert!(text.starts_with("OK\n"), "{}: {}", name, text);
        assert!(text.contains("shadow: ok"), "{}: {}", name, text);
    }
    // corrupted script: exit 4 and the failing step index in the message
    let json = torelli::fixtures::fixture_json("lemma_factorsip").unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(json).unwrap();
    doc["steps"][5]["pos"] = serde_json::json!(4);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", doc).unwrap();
    let out = torelli(&["derive", "--input", f.path().to_str().unwrap()]);
    assert_code(&out, 4);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("step 5"), "stderr: {}", err);
}

#[test]
fn sp_matrix_output() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"genus": 1, "word": [{{"class": [0,1], "exp": 1}}]}}"#
    )
    .unwrap();
    let out = torelli(&["sp-matrix", "--input", f.path().to_str().unwrap()]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "[1, 0]\n[1, 1]\n");
    let out = torelli(&[
        "sp-matrix",
        "--input",
        f.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out).trim(), "[[1,0],[1,1]]");
}

#[test]
fn ssip_span_deterministic() {
    let a = torelli(&["ssip-span", "--seed", "7"]);
    assert_code(&a, 0);
    assert!(stdout(&a).starts_with("dimension: 10\n"));
    let b = torelli(&["ssip-span", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    // seed is mandatory
    let out = torelli(&["ssip-span"]);
    assert!(out.status.code() != Some(0));
}

#[test]
fn schema_and_domain_exit_codes() {
    // malformed json: 2
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{{ not json").unwrap();
    let out = torelli(&["tau", "--input", f.path().to_str().unwrap()]);
    assert_code(&out, 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error"), "stderr should be a json error");

    // unknown fixture: 2
    let out = torelli(&["tau", "--fixture", "no_such_fixture"]);
    assert_code(&out, 2);

    // invariant violation (boundary classes do not sum to zero): 3
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"genus": 2, "items": [
            {{"kind":"sip","boundary":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}}
        ]}}"#
    )
    .unwrap();
    let out = torelli(&["tau", "--input", f.path().to_str().unwrap()]);
    assert_code(&out, 3);

    // genus mismatch between flag and document: 3
    let out = torelli(&["tau", "--fixture", "standard_sip", "--genus", "3"]);
    assert_code(&out, 3);

    // wrong vector length for the declared genus: 3
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"genus": 3, "items": [
            {{"kind":"bp","class":[1,0,0,0],"basis":[[0,1,0,0],[0,0,0,1]]}}
        ]}}"#
    )
    .unwrap();
    let out = torelli(&["tau", "--input", f.path().to_str().unwrap()]);
    assert_code(&out, 3);
}

#[test]
fn json_format_outputs() {
    let out = torelli(&["tau", "--fixture", "standard_sip", "--format", "json"]);
    assert_code(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["text"], "-1·a2^a3^a4");
    assert_eq!(v["terms"][0]["coeff"], -1);
    assert_eq!(v["terms"][0]["monomial"][0], "a2");

    let out = torelli(&["sigma", "--fixture", "standard_sip", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["terms"][0][0], "a2");
    assert_eq!(v["terms"][0][1], "a4");

    let out = torelli(&["check", "--fixture", "standard_sip", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["johnson_kernel"], false);
    assert_eq!(v["bcj_kernel"], false);
}

#[test]
fn byte_identical_reruns() {
    for args in [
        vec!["tau", "--fixture", "standard_sip"],
        vec!["sigma", "--fixture", "ssip_type4"],
        vec!["derive", "--fixture", "johnson_lemma10"],
        vec!["ssip-span", "--seed", "42", "--samples", "10"],
    ] {
        let a = torelli(&args);
        let b = torelli(&args);
        assert_code(&a, 0);
        assert_eq!(a.stdout, b.stdout, "{:?}", args);
    }
}

#[test]
fn sigma_of_type_fixtures() {
    let out = torelli(&["sigma", "--fixture", "ssip_type2"]);
    assert_eq!(stdout(&out), "b1 b2\n");
    let out = torelli(&["sigma", "--fixture", "ssip_type3"]);
    assert_eq!(stdout(&out), "b2 + a1 b2\n");
    let out = torelli(&["sigma", "--fixture", "ssip_type4"]);
    assert_eq!(
        stdout(&out),
        "1 + a1 + a2 + b1 + b2 + a1 a2 + a1 b2 + a2 b1 + b1 b2\n"
    );
}
