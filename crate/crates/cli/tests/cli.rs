//! End-to-end checks of the binary: output schemas, byte stability across
//! runs, residual guarantees, and the exit-code contract.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_darboux"))
}

#[test]
fn spectrum_rows_are_byte_stable_and_clean() {
    let args = ["spectrum", "--l", "1/2", "--m", "3/2", "--k2", "0.5"];
    let first = bin().args(args).output().unwrap();
    assert!(first.status.success());
    let second = bin().args(args).output().unwrap();
    assert_eq!(first.stdout, second.stdout, "output must be byte stable");
    let text = String::from_utf8(first.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,N,parity,period,arscott_ok,energy,residual"
    );
    let mut found = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 7, "{line}");
        let energy: f64 = cols[5].parse().unwrap();
        let residual: f64 = cols[6].parse().unwrap();
        assert!(residual < 1e-9, "{line}");
        if (energy - 1.125).abs() < 1e-9 || (energy - 4.125).abs() < 1e-9 {
            found += 1;
        }
    }
    assert!(found >= 4, "expected the golden energies in {text}");
}

#[test]
fn single_family_selection() {
    let out = bin()
        .args(["spectrum", "--l", "0", "--m", "2", "--k2", "0.3", "--family", "Psi_tilde_8"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("Psi_tilde_8,"));
}

#[test]
fn eigenfunction_table_shape() {
    let out = bin()
        .args([
            "eigenfunction",
            "--l", "1/2", "--m", "3/2", "--k2", "0.5",
            "--family", "Psi_ring_1",
            "--grid", "0:1K:2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert_eq!(lines[0], "u,psi,ode_residual");
    // The one-term member is dn^(3/2); at u = 0 that is exactly 1.
    assert!(lines[1].starts_with("0.0000000000000000e0,1.0000000000000000e0,"));
}

#[test]
fn odd_family_vanishes_at_origin() {
    let out = bin()
        .args([
            "eigenfunction",
            "--l", "1/2", "--m", "3/2", "--k2", "0.5",
            "--family", "Psi_tilde_8",
            "--grid", "0:1K:2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("0.0000000000000000e0,0.0000000000000000e0,"));
}

#[test]
fn classify_json_lists_infinite_availability() {
    let out = bin()
        .args(["classify", "--l", "1/2", "--m", "3/2", "--k2", "0.5", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema"], 1);
    let rows = doc["rows"].as_array().unwrap();
    let names: Vec<String> =
        rows.iter().map(|r| r[1].as_str().unwrap().to_string()).collect();
    assert!(names.contains(&"Psi_tilde_5".to_string()));
    assert!(names.contains(&"Phi_4".to_string()));
    assert!(!names.contains(&"Phi_1".to_string()), "truncating index listed as infinite");
}

#[test]
fn exit_codes() {
    // Domain violation in the modulus: configuration error.
    let out = bin().args(["spectrum", "--l", "1/2", "--m", "3/2", "--k2", "1.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Unknown family name: configuration error.
    let out = bin()
        .args(["spectrum", "--l", "1/2", "--m", "3/2", "--k2", "0.5", "--family", "psi_oops_1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Off-spectrum energy: solver failure.
    let out = bin()
        .args([
            "eigenfunction",
            "--l", "1/2", "--m", "3/2", "--k2", "0.5",
            "--family", "Psi_ring_1",
            "--energy", "3.33",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // A selection with no eigenvalues: solver failure.
    let out = bin()
        .args(["spectrum", "--l", "1/2", "--m", "1/2", "--k2", "0.5", "--family", "psi_hyp_1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_subcommand_filters_and_passes() {
    let out = bin().args(["verify", "--only", "specfun"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS specfun"));
    // Absurd override forces a failure and exit code 1.
    let out = bin()
        .args(["verify", "--only", "specfun", "--tol", "gauss_summation=1e-30"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
