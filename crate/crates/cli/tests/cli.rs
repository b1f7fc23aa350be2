//! End-to-end checks of the command line interface: output shapes, exit
//! codes, and the JSON round-trip through the field parser.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_partalg"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn repr_smallest_table() {
    let (stdout, _, code) = run(&["repr", "--level", "1", "--lam", "", "--ell", "1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("p_1 ->"));
    assert!(stdout.contains("[z]"));
}

#[test]
fn repr_sign_representations() {
    let (stdout, _, code) = run(&["repr", "--level", "2", "--lam", "2", "--gen", "sigma2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("[1]"));
    let (stdout, _, code) = run(&["repr", "--level", "2", "--lam", "1,1", "--gen", "sigma2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("[-1]"));
}

#[test]
fn repr_json_roundtrips_through_parser() {
    let (stdout, _, code) = run(&[
        "repr", "--level", "2", "--lam", "1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let mats = v["matrices"].as_object().unwrap();
    assert!(mats.contains_key("p_2"));
    for (_, rows) in mats {
        for row in rows.as_array().unwrap() {
            for cell in row.as_array().unwrap() {
                let s = cell.as_str().unwrap();
                let parsed = partalg::field::parse_ratfn(s).unwrap();
                assert_eq!(parsed.to_string(), s, "bit-exact round trip");
            }
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    let (_, _, code) = run(&["repr", "--level", "2", "--lam", "5"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["repr", "--level", "2", "--lam", "1", "--ell", "3"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["repr", "--level", "9", "--lam", ""]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn dims_matches_bell() {
    let (stdout, _, code) = run(&["dims", "--level", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["match"], true);
    assert_eq!(v["bell"], "15");
    let dims: Vec<u64> = v["shapes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![2, 3, 1, 1]);
}

#[test]
fn verify_counts_suite() {
    let (stdout, _, code) = run(&["verify", "--suite", "jm"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("known-discrepancy"));
}

#[test]
fn qseries_closed_form() {
    let (stdout, _, code) = run(&["qseries", "--level", "1+1/2", "--mu", ""]);
    assert_eq!(code, 0);
    let f = partalg::field::parse_uratfn(stdout.trim()).unwrap();
    let want = partalg::field::parse_uratfn("-(u+1+z/2)*(u-z/2)/(u+z/2)").unwrap();
    assert_eq!(f, want);
}

#[test]
fn bratteli_json_shape() {
    let (stdout, _, code) = run(&[
        "bratteli", "--level", "1+1/2", "--lam", "", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["paths"].as_array().unwrap().len(), 2);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
}

#[test]
fn max_level_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_partalg"))
        .args(["repr", "--level", "3", "--lam", ""])
        .env("PARTALG_MAX_LEVEL", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exceeds"));
}
