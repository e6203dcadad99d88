use crg::cli::{run_in, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use serde_json::Value;
use std::path::Path;

fn crg(args: &[&str], data_dir: Option<&Path>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("crg").chain(args.iter().copied());
    let code = run_in(argv, data_dir, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn discriminants_json_for_g333() {
    let (code, out, _) = crg(&["discriminants", "--group", "G(3,3,3)", "--format", "json"], None);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["group"], "G(3,3,3)");
    let class = &v["classes"][0];
    assert_eq!(class["size"], 9);
    assert_eq!(class["n_c"], 9);
    assert_eq!(class["sign"], -1);
    assert_eq!(class["factors"], serde_json::json!([[9, 1], [0, 8]]));
}

#[test]
fn json_output_is_deterministic() {
    for group in ["B3", "G(4,2,3)", "H3"] {
        let args = ["discriminants", "--group", group, "--format", "json"];
        let (_, a, _) = crg(&args, None);
        let (_, b, _) = crg(&args, None);
        assert_eq!(a, b, "{}", group);
    }
    let args = ["verify", "--group", "A2", "--suite", "core", "--format", "json"];
    assert_eq!(crg(&args, None).1, crg(&args, None).1);
}

#[test]
fn text_and_csv_formats() {
    let (code, out, _) = crg(&["discriminants", "--group", "A2"], None);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("A2"));
    let (code, out, _) = crg(&["discriminants", "--group", "B2", "--format", "csv"], None);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["discriminants", "--group", "G(6,2,3)"][..],
        &["discriminants", "--group", "G(3,3"],
        &["discriminants", "--group", "G(3,1,2)"],
        &["discriminants", "--group", "G7"],
        &["discriminants", "--group", "A2", "--format", "xml"],
        &["verify", "--group", "A2", "--m", "seven"],
        &["bogus"],
    ] {
        let (code, _, err) = crg(args, None);
        assert_eq!(code, EXIT_USAGE, "{:?}", args);
        assert!(!err.is_empty(), "{:?}", args);
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = crg(&["--help"], None);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("discriminants"));
}

#[test]
fn verify_passes_on_small_groups() {
    for group in ["A2", "B2", "I2(5)"] {
        let (code, out, _) = crg(&["verify", "--group", group], None);
        assert_eq!(code, EXIT_OK, "{}\n{}", group, out);
    }
    let (code, out, _) = crg(&["verify", "--group", "A3", "--suite", "krammer", "--format", "json"], None);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_at_a_discriminant_root_skips_spectral() {
    let (code, out, _) = crg(&["verify", "--group", "A2", "--suite", "spectral", "--m", "3"], None);
    assert_eq!(code, EXIT_OK, "{}", out);
}

#[test]
fn tables_two_and_prop81() {
    let (code, out, _) = crg(&["tables", "--which", "2"], None);
    assert_eq!(code, EXIT_OK, "{}", out);
    assert!(out.lines().last().unwrap().contains("rows match"));
    let (code, _, _) = crg(&["tables", "--which", "prop81"], None);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn tampered_fixture_fails() {
    let dir = std::env::temp_dir().join(format!("crg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut rows: Value = serde_json::from_str(crg::form::fixture::shipped_fixture_json()).unwrap();
    assert_eq!(rows[0]["factors"][0], serde_json::json!([9, 1]));
    rows[0]["factors"][0] = serde_json::json!([8, 1]);
    let path = dir.join("tampered.json");
    std::fs::write(&path, rows.to_string()).unwrap();
    let (code, out, _) = crg(&["tables", "--which", "1", "--fixture", path.to_str().unwrap()], None);
    assert_eq!(code, EXIT_FAIL, "{}", out);
    assert!(out.contains("MISMATCH"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn data_dir_supplies_generator_files() {
    let dir = std::env::temp_dir().join(format!("crg-data-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (code, _, _) = crg(&["discriminants", "--group", "G7"], Some(&dir));
    assert_eq!(code, EXIT_USAGE);
    let g12 = crg::groups::generators::shipped_generator_json(12).unwrap();
    let (code, from_shipped, _) = crg(&["discriminants", "--group", "G12"], None);
    assert_eq!(code, EXIT_OK);
    std::fs::write(dir.join("G12.json"), g12).unwrap();
    let (code, from_dir, _) = crg(&["discriminants", "--group", "G12"], Some(&dir));
    assert_eq!(code, EXIT_OK);
    assert_eq!(from_shipped, from_dir);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn conjecture_and_list_groups() {
    let (code, out, _) = crg(&["conjecture", "--e-max", "5", "--r-max", "4"], None);
    assert_eq!(code, EXIT_OK, "{}", out);
    assert!(out.contains("G(5,5,4)"));
    let (code, out, _) = crg(&["list-groups"], None);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("G(m,p,r)"));
}
