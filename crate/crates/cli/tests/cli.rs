use gsqueeze_cli::table::Table;
use std::io::Cursor;
use std::process::{Command, Output};

fn gsqueeze(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsqueeze"))
        .args(args)
        .env_remove("GSQUEEZE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn state_writes_support_rows() {
    let text = stdout(&gsqueeze(&["state", "--k", "3", "--alpha", "0", "--m-max", "50"]));
    let t = Table::read_csv(Cursor::new(text.as_bytes())).unwrap();
    assert_eq!(t.rows.len(), 51);
    let n: Vec<_> = t.reals("n").unwrap().into_iter().map(Option::unwrap).collect();
    assert_eq!(n.first(), Some(&0.0));
    assert_eq!(n.last(), Some(&300.0));
    for key in ["k", "alpha", "c", "d"] {
        assert!(t.meta_value(key).is_some(), "missing {key}");
    }
}

#[test]
fn k2_is_a_validation_error() {
    let out = gsqueeze(&["state", "--k", "2", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("norm diverges for k<3"));
}

#[test]
fn bad_grid_is_a_validation_error() {
    let out = gsqueeze(&["momentum", "--p-min", "1", "--p-max", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_has_metadata_block() {
    let text = stdout(&gsqueeze(&["state", "--k", "5", "--alpha", "4", "--m-max", "100", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["meta"]["k"], 5);
    assert_eq!(v["meta"]["alpha"], 4);
    assert!(v["meta"]["c"].as_f64().unwrap() > 0.0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 101);
    assert_eq!(v["columns"][1], "n");
}

#[test]
fn csv_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.csv");
    let p = path.to_str().unwrap();
    stdout(&gsqueeze(&["state", "--k", "4", "--alpha", "1", "--m-max", "200", "-o", p]));
    let first = std::fs::read(&path).unwrap();
    let t = Table::read_csv(Cursor::new(&first)).unwrap();
    let mut again = Vec::new();
    t.write_csv(&mut again).unwrap();
    assert_eq!(first, again);
}

#[test]
fn momentum_output_is_deterministic_across_thread_counts() {
    let args = ["momentum", "--alpha", "2", "--m-max", "3000", "--p-min", "-2", "--p-max", "2", "--p-steps", "41"];
    let one = stdout(&gsqueeze(&[&["--threads", "1"][..], &args].concat()));
    let two = stdout(&gsqueeze(&[&["--threads", "2"][..], &args].concat()));
    assert_eq!(one, two);
}

#[test]
fn figures_emit_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = gsqueeze(&["figures", "-o", d, "--m-max", "3000", "--n-max", "40", "--p-steps", "61"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["fig1", "fig2", "fig3"] {
        let bytes = std::fs::read(dir.path().join(format!("{name}.csv"))).unwrap();
        let t = Table::read_csv(Cursor::new(bytes)).unwrap();
        assert!(!t.rows.is_empty());
    }
}

#[test]
fn selftest_passes() {
    let text = stdout(&gsqueeze(&["selftest", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["meta"]["all_passed"], true);
}
