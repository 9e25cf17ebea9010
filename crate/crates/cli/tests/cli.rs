use std::process::{Command, Output};

use edcert::cert::CertificateJson;

fn edcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edcert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn act_prints_image_with_formal_degree() {
    let o = edcert(&["act", "--poly", "x^3+x^2-2", "--matrix", "1,0;1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-5x^2 - 6x - 2 (formal degree 3)\n");
}

#[test]
fn act_accepts_negative_entries() {
    let o = edcert(&["act", "--poly", "x^2 + 1", "--matrix", "-1,0;0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x^2 + 1 (formal degree 2)\n");
}

#[test]
fn certify_exit_codes() {
    let o = edcert(&["certify", "--poly", "x^2+4x+8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("p = 2, stage 1"));

    let o = edcert(&["certify", "--poly", "x^4-14x^2+9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("inconclusive"));
}

#[test]
fn certify_with_extra_primes_and_height() {
    // x^2 + 1 splits mod 5, so the extra prime is tried without success.
    let o = edcert(&[
        "certify",
        "--poly",
        "x^2 + 1",
        "--t-height",
        "2",
        "--primes",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("primes tried: 2, 5"));
    let o = edcert(&["certify", "--poly", "x^2 + 1", "--primes", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a prime"));
}

#[test]
fn json_certificate_verifies_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let path_s = path.to_str().unwrap();
    let o = edcert(&[
        "certify",
        "--poly",
        "x^6+x^5+x^4+x^3+x^2+x+1",
        "--json",
        path_s,
    ]);
    assert_eq!(o.status.code(), Some(0));

    let text = std::fs::read_to_string(&path).unwrap();
    let cert: CertificateJson = serde_json::from_str(&text).unwrap();
    assert_eq!(cert.verdict, "irreducible");
    assert_eq!(cert.prime.as_deref(), Some("7"));
    assert_eq!(cert.transform.as_ref().unwrap()[1], "-1/6");
    assert!(cert.witness_coeffs.iter().all(|c| c.contains('/')));

    let o = edcert(&["verify", "--json", path_s]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let mut bad = cert.clone();
    bad.witness_coeffs[0] = "1/1".into();
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let o = edcert(&["verify", "--json", path_s]);
    assert_eq!(o.status.code(), Some(1));

    std::fs::write(&path, "not json").unwrap();
    let o = edcert(&["verify", "--json", path_s]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ed_check_weak_and_strict() {
    let o = edcert(&["ed-check", "--poly", "x^2+4x+8", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = edcert(&["ed-check", "--poly", "x^2+4x+8", "--prime", "2", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(strict)"));
    let o = edcert(&["ed-check", "--poly", "x^2+4", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("gcd = 2"));
    let o = edcert(&[
        "ed-check", "--poly", "x + 1", "--prime", "3", "--degree", "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("D0 (a_0 a_n != 0): false"));
}

#[test]
fn newton_writes_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for path in [&a, &b] {
        let o = edcert(&[
            "newton",
            "--poly",
            "x^3 + 9x + 27",
            "--prime",
            "3",
            "--svg",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("vertices: (0, 3) (3, 0)"));
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    assert!(String::from_utf8(first).unwrap().starts_with("<?xml"));
}

#[test]
fn dumas_checks_concatenation() {
    let o = edcert(&[
        "dumas", "--polyA", "x^2 + 2", "--polyB", "x - 4", "--prime", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "concatenation holds\n");
    let o = edcert(&["dumas", "--polyA", "0", "--polyB", "x - 4", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_is_hidden_but_works() {
    let help = edcert(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(!stdout(&help).contains("oracle"));
    let o = edcert(&["oracle", "--poly", "x^4 - 14x^2 + 9"]);
    assert_eq!(o.status.code(), Some(0));
    let o = edcert(&["oracle", "--poly", "x^4 - 1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("reducible"));
}

#[test]
fn usage_and_parse_errors_exit_2_with_one_line() {
    for args in [
        vec!["certify", "--poly", "x^^2"],
        vec!["ed-check", "--poly", "x^2+1", "--prime", "6"],
        vec!["act", "--poly", "x", "--matrix", "1,2;2,4"],
        vec![
            "act", "--poly", "x^3", "--matrix", "1,0;0,1", "--degree", "2",
        ],
        vec!["certify", "--poly", "x + 1"],
    ] {
        let o = edcert(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "));
    }
    let o = edcert(&["certify"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn factoring_budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_edcert"))
        .args(["certify", "--poly", "x^2+4x+8"])
        .env(edcert::RHO_ITERATIONS_VAR, "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_edcert"))
        .args(["certify", "--poly", "x^2+4x+8"])
        .env(edcert::RHO_ITERATIONS_VAR, "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
