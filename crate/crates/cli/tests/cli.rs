use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multicox"))
        .args(args)
        .env_remove("MULTICOX_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn info_reports_structure() {
    let out = run(&["info", "A", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["order"], 6);
    assert_eq!(v["hyperplane_count"], 3);
    assert_eq!(v["coxeter_number"], 3);
    assert_eq!(v["exponents"], serde_json::json!([1, 2]));

    let b2 = json(&run(&["info", "B", "2"]));
    let sizes: Vec<u64> = b2["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, vec![2, 2]);

    let a1 = json(&run(&["info", "A1"]));
    assert_eq!(
        (a1["hyperplane_count"].as_u64(), a1["coxeter_number"].as_u64()),
        (Some(1), Some(2))
    );
}

#[test]
fn unsupported_inputs_exit_four() {
    assert_eq!(code(&run(&["info", "E8"])), 4);
    assert_eq!(code(&run(&["info", "B3", "--max-order", "10"])), 4);
}

#[test]
fn basis_b2_shift_one() {
    let out = run(&["basis", "--type", "B2", "--m", "1", "--k", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["certificate"]["verdict"], "Free-with-basis");
    assert_eq!(v["certificate"]["degrees"], serde_json::json!([5, 7]));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(!text.contains('.'), "numbers must be exact strings");
}

#[test]
fn basis_rank_one_k_two() {
    let v = json(&run(&["basis", "--type", "A1", "--m", "0", "--k", "2"]));
    assert_eq!(v["members"][0]["degree"], 4);
    assert_eq!(v["certificate"]["contact_orders"], serde_json::json!([[4]]));
}

#[test]
fn basis_reports_are_deterministic() {
    let a = run(&["basis", "--type", "G2", "--m", "1", "--k", "1"]);
    let b = run(&["basis", "--type", "G2", "--m", "1", "--k", "1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn multiplicity_file_uses_oracle_search() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbits.json");
    std::fs::write(&path, r#"{"orbits": [[1, 1], [0, 0]]}"#).unwrap();
    let out = run(&["basis", "--type", "B2", "--mfile", path.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["input"]["base_source"], "oracle-search");
    assert_eq!(v["certificate"]["degree_sum"], 10);
}

#[test]
fn bad_base_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("base.json");
    // Coordinate fields are not in D(A, 1).
    let base = r#"[{"coeffs":[{"nvars":2,"terms":[[[0,0],"1"]]},{"nvars":2,"terms":[]}]},
                   {"coeffs":[{"nvars":2,"terms":[]},{"nvars":2,"terms":[[[0,0],"1"]]}]}]"#;
    std::fs::write(&path, base).unwrap();
    let out = run(&[
        "basis",
        "--type",
        "B2",
        "--m",
        "1",
        "--base-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn basis_rejects_large_base_multiplicity() {
    assert_eq!(code(&run(&["basis", "--type", "A2", "--m", "2"])), 1);
}

#[test]
fn report_members_recertify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["basis", "--type", "A2", "--m", "0", "--k", "1"]);
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    let ok = run(&["certify", "--type", "A2", "--members", p, "--m", "2"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json(&ok)["certificate"]["verdict"], "Free-with-basis");
    let too_much = run(&["certify", "--type", "A2", "--members", p, "--m", "3"]);
    assert_eq!(code(&too_much), 3);
    assert_eq!(json(&too_much)["certificate"]["verdict"], "NotMember");
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--type", "A2", "--suite", "shift", "--samples", "20"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v[0]["passed"], 20);
    assert_eq!(v[0]["failed"], 0);

    assert_eq!(code(&run(&["verify", "--type", "A1", "--suite", "euler"])), 0);

    let g2 = json(&run(&["verify", "--type", "G2", "--suite", "jacobian"]));
    assert!(g2[0]["cases"][0]["detail"].as_str().unwrap().starts_with("c = "));
}

#[test]
fn cache_directory_is_populated() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = run(&["info", "B3", "--cache-dir", d]);
    assert_eq!(code(&first), 0);
    assert!(std::fs::read_dir(Path::new(d)).unwrap().count() >= 1);
    let second = run(&["info", "B3", "--cache-dir", d]);
    assert_eq!(first.stdout, second.stdout);
}
