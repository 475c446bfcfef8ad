//! CLI-level acceptance: exit-code contract, file formats, and criterion 8
//! (byte-identical structured reports across thread counts).

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn norbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_norbit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn norbit_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_norbit"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("norbit-test-{}-{name}", std::process::id()));
    p
}

/// Criterion 8: two main-theorem runs with different thread counts produce
/// byte-identical structured reports.
#[test]
fn criterion_8_structured_report_determinism() {
    let run1 = norbit(&[
        "main-theorem",
        "--max-n",
        "6",
        "--format",
        "structured",
        "--threads",
        "1",
    ]);
    let run2 = norbit(&[
        "main-theorem",
        "--max-n",
        "6",
        "--format",
        "structured",
        "--threads",
        "4",
    ]);
    assert_eq!(run1.status.code(), Some(0), "{}", stdout(&run1));
    assert_eq!(run2.status.code(), Some(0));
    assert_eq!(
        run1.stdout, run2.stdout,
        "structured reports differ across thread counts"
    );
    let text = stdout(&run1);
    assert!(text.contains("disagreements=0"), "{text}");
    // the positive families audited at max_n = 6
    for needle in [
        "kind=tautological n=6",
        "kind=adjoint n=5",
        "kind=exceptional n=6 highest=1,1,1,0,0,0",
        "kind=exceptional n=2 highest=3,0",
    ] {
        assert!(text.contains(needle), "missing `{needle}` in report");
    }
    // no negative fundamentals exist below n = 7
    assert!(!text.contains("kind=negative-fundamental"));
    println!("criterion 8: PASS — byte-identical structured reports (threads 1 vs 4)");
}

#[test]
fn classify_exit_codes_match_contract() {
    // positive exceptional row: exit 0
    let out = norbit(&["classify", "-n", "6", "--highest", "pi3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("exceptional-table-row"));

    // negative: exit 1 plus a certificate file
    let cert_path = tmp("pi2-sl7.cert");
    let out = norbit(&[
        "classify",
        "-n",
        "7",
        "--highest",
        "pi2",
        "-o",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let cert_text = fs::read_to_string(&cert_path).unwrap();
    assert!(cert_text.starts_with("dimension: 7"));
    assert!(cert_text.contains("provenance: example-1"));

    // the emitted certificate verifies, with context
    let out = norbit(&[
        "verify",
        "--file",
        cert_path.to_str().unwrap(),
        "-n",
        "7",
        "--highest",
        "pi2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("certificate verifies"));

    // verifying against the wrong weight system fails clause (d): exit 1
    let out = norbit(&[
        "verify",
        "--file",
        cert_path.to_str().unwrap(),
        "-n",
        "7",
        "--highest",
        "pi3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("clause (d)"));

    // bad weight: input error
    let out = norbit(&["classify", "-n", "7", "--highest", "wat"]);
    assert_eq!(out.status.code(), Some(2));
    fs::remove_file(&cert_path).ok();
}

#[test]
fn saturated_file_checks() {
    // three linearly independent vectors: exit 0
    let indep = tmp("indep.txt");
    fs::write(&indep, "# three independent rows\n1 0 0\n0 1 0\n1 1 1\n").unwrap();
    let out = norbit(&["saturated", "--file", indep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("saturated"));
    fs::remove_file(&indep).ok();

    // the (2,-2),(3,-3) ray: exit 1 with the (1,-1) witness
    let ray = tmp("ray.txt");
    fs::write(&ray, "2 -2\n3 -3\n").unwrap();
    let out = norbit(&["saturated", "--file", ray.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("witness: 1 -1"), "{text}");
    fs::remove_file(&ray).ok();

    // rational entries are fine
    let frac = tmp("frac.txt");
    fs::write(&frac, "3/2 -3/2\n5/2 -5/2\n").unwrap();
    let out = norbit(&["saturated", "--file", frac.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness: 1/2 -1/2"));
    fs::remove_file(&frac).ok();

    // malformed line: exit 2 with position
    let bad = tmp("bad.txt");
    fs::write(&bad, "1 0\nx y\n").unwrap();
    let out = norbit(&["saturated", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    fs::remove_file(&bad).ok();
}

#[test]
fn scan_resource_limit_is_exit_3() {
    let out = norbit(&[
        "scan",
        "-n",
        "5",
        "--highest",
        "pi2",
        "--subset-cap",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // the environment variable is honored too
    let out = norbit_env(
        &["scan", "-n", "5", "--highest", "pi2"],
        "NORBIT_SUBSET_CAP",
        "10",
    );
    assert_eq!(out.status.code(), Some(3));

    // and an explicit flag wins over the environment
    let out = norbit_env(
        &["scan", "-n", "5", "--highest", "pi2", "--subset-cap", "2000"],
        "NORBIT_SUBSET_CAP",
        "10",
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn forge_and_verify_roundtrip() {
    // example-6 values through the file format
    let path = tmp("ex6.cert");
    let out = norbit(&[
        "forge",
        "-n",
        "9",
        "--highest",
        "pi3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "a forged certificate is a negative finding");
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("provenance: example-6"));

    let out = norbit(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // a rational lattice coefficient is a parse error naming the field
    let broken = text.replace("lattice_combination: ", "lattice_combination: 0:1/2 ");
    let broken_path = tmp("broken.cert");
    fs::write(&broken_path, broken).unwrap();
    let out = norbit(&["verify", "--file", broken_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("lattice_combination"), "{err}");

    // a corrupted witness is caught by verification, not parsing
    let tampered = text.replace("witness: 1 1 1 0 0 0 0 0 0", "witness: 1 1 0 1 0 0 0 0 0");
    assert_ne!(tampered, text, "tamper pattern must apply");
    let tampered_path = tmp("tampered.cert");
    fs::write(&tampered_path, tampered).unwrap();
    let out = norbit(&["verify", "--file", tampered_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("clause"));

    for p in [path, broken_path, tampered_path] {
        fs::remove_file(p).ok();
    }
}

#[test]
fn forge_refuses_positive_cases_with_exit_0() {
    let out = norbit(&["forge", "-n", "5", "--highest", "pi2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("saturated case"));
}

#[test]
fn weights_command_lists_systems() {
    let out = norbit(&["weights", "-n", "4", "--highest", "pi2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
    assert!(text.contains("1 1 0 0"));

    // quoted quasi-coordinates as input
    let out = norbit(&["weights", "--highest", "2 0 0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).lines().filter(|l| !l.starts_with('#')).count(),
        6
    );

    // contradictory -n is an input error
    let out = norbit(&["weights", "-n", "4", "--highest", "2 0 0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_finds_the_example_witness_family() {
    // the pi2 SL(7) scan reports a verified non-saturated subset
    let out = norbit(&["scan", "-n", "4", "--highest", "3 1 0 0"]);
    // lambda = (3,1,0,0) is outside the positive list, so some subset fails
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("found a non-saturated subset"));
}
