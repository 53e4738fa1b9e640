use std::process::{Command, Output};

fn lmhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmhs"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn kodaira_fails_the_criterion_in_degree_one() {
    let o = lmhs(&["check", "fixtures/kodaira.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("H^1: [Gr0=1 Gr1=0 Gr2=0] criterion fails at r=1"));
}

#[test]
fn single_node_threefold_is_polarized() {
    let o = lmhs(&["--format", "json", "check", "fixtures/odp_m3.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = v["nearby"].as_array().unwrap().iter().find(|e| e["p"] == 2 && e["q"] == 1).unwrap();
    assert_eq!((row["plus"].as_u64(), row["minus"].as_u64()), (Some(1), Some(0)));
}

#[test]
fn malformed_pairing_is_invalid_input() {
    let dir = std::env::temp_dir().join(format!("lmhs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/kodaira.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["strata"][0]["cohomology"][0]["pairing"] = serde_json::json!([["1"]]);
    let path = dir.join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = lmhs(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = lmhs(&["check", "does/not/exist.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn orbit_fixtures() {
    let o = lmhs(&["orbit", "fixtures/elliptic.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("polarized: true"));
    assert!(stdout(&o).contains("(1,0): orbit (1, 0)  formula (1, 0)"));

    let o = lmhs(&["orbit", "fixtures/tate3.json", "--t0", "4", "--a", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("F^1: dim 2  signature (+1, -1)"));

    let o = lmhs(&["orbit", "fixtures/kodaira_mhs.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("W(N, 1)"));

    let o = lmhs(&["orbit", "fixtures/elliptic.json", "--t0", "8", "--t0-cap", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn identities() {
    assert_eq!(lmhs(&["verify-identities", "--max-n", "8"]).status.code(), Some(0));
    assert_eq!(lmhs(&["verify-identities", "--max-n", "1"]).status.code(), Some(0));
    let o = lmhs(&["verify-identities", "--max-n", "4", "--corrupt", "3,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("(n,k) = (3,2)"));
}

#[test]
fn tables() {
    let o = lmhs(&["tables", "sano", "--m", "4", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(2,2): (h-2, 2)"));

    let o = lmhs(&["tables", "kahler", "--k3"]);
    assert!(stdout(&o).contains("(1,1): (+19, -1)"));
    assert!(stdout(&o).contains("total signature: -16"));

    let o = lmhs(&["tables", "lefschetz", "--schoen"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("19 (symmetric reading), 31 (printed reading)"));
    assert!(stdout(&o).contains("dimCheck: pass"));

    assert_eq!(lmhs(&["tables", "odp", "--m", "3", "--l", "3", "--r", "2", "--seed", "7"]).status.code(), Some(0));
    assert_eq!(lmhs(&["tables", "o16", "--defect", "0"]).status.code(), Some(0));
    assert_eq!(lmhs(&["tables", "o16", "--defect", "2"]).status.code(), Some(2));
    assert_eq!(lmhs(&["tables", "sano", "--m", "3", "--a", "3", "--hashimoto-sano"]).status.code(), Some(0));
    assert_eq!(lmhs(&["tables", "nonsense"]).status.code(), Some(1));
}

#[test]
fn validate_both_kinds() {
    for f in ["fixtures/kodaira.json", "fixtures/odp_m3.json", "fixtures/elliptic.json", "fixtures/tate3.json"] {
        assert_eq!(lmhs(&["validate", f]).status.code(), Some(0), "{f}");
    }
}

#[test]
fn json_reports_are_deterministic_and_round_trip() {
    for args in [
        &["--format", "json", "check", "fixtures/kodaira.json"][..],
        &["--format", "json", "--workers", "3", "orbit", "fixtures/tate3.json"][..],
        &["--format", "json", "tables", "lefschetz", "--schoen"][..],
    ] {
        let a = lmhs(args);
        let b = lmhs(args);
        assert_eq!(a.stdout, b.stdout);
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again.as_bytes(), &a.stdout[..]);
    }
}

#[test]
fn worker_count_does_not_change_reports() {
    let one = lmhs(&["--workers", "1", "--format", "json", "check", "fixtures/odp_m3.json"]);
    let four = lmhs(&["--workers", "4", "--format", "json", "check", "fixtures/odp_m3.json"]);
    assert_eq!(one.stdout, four.stdout);
}
