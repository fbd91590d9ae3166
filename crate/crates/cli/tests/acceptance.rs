//! Runs `polyineq verify --seed 7` twice and prints one line per criterion.
//! Criteria 1–9 come from the binary's own verdicts; criterion 10 is the
//! byte-for-byte comparison of the two runs.

use std::process::Command;
use std::thread;

use serde_json::Value;

fn verify_run() -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_polyineq"))
        .args(["--seed", "7", "--format", "json", "verify"])
        .output()
        .expect("spawn polyineq");
    (out.stdout, out.status.code().unwrap_or(-1))
}

#[test]
fn acceptance() {
    let second = thread::spawn(verify_run);
    let (first, code) = verify_run();
    let (again, code_again) = second.join().expect("second run");

    let doc: Value = serde_json::from_slice(&first).expect("verify emits json");
    let rows = doc["rows"].as_array().expect("rows");
    let mut failed = Vec::new();
    for row in rows {
        let id = row["criterion"].as_u64().unwrap();
        let status = row["status"].as_str().unwrap();
        println!(
            "criterion {:>2} {} {}: {}",
            id,
            status,
            row["name"].as_str().unwrap(),
            row["detail"].as_str().unwrap()
        );
        if status != "PASS" {
            failed.push(id);
        }
    }
    let identical = first == again && code == code_again;
    println!(
        "criterion 10 {} determinism: two runs with seed 7 {} ({} bytes)",
        if identical { "PASS" } else { "FAIL" },
        if identical { "byte-identical" } else { "differ" },
        first.len()
    );
    if !identical {
        failed.push(10);
    }

    assert_eq!(rows.len(), 9, "expected nine computed criteria");
    assert_eq!(code, if failed.is_empty() { 0 } else { 2 });
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
