use std::path::PathBuf;
use std::process::Command;

use pca_cli::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn pca(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["pca", "--json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let v = if out.stdout.is_empty() { Value::Null } else { serde_json::from_str(&out.stdout).unwrap() };
    (out.code, v)
}

#[test]
fn radical_of_upper_triangular() {
    let (code, r) = pca(&["radical", &fixture("t2q.alg")]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "radical");
    assert_eq!(r["results"]["dim"], 1);
    assert_eq!(r["results"]["basis"], serde_json::json!([["0", "1", "0"]]));
    assert_eq!(r["results"]["nilpotency_index"], 2);
}

#[test]
fn radical_with_oracle() {
    let (code, r) = pca(&["radical", "--oracle", &fixture("f2c4.alg")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["dim"], 3);
    assert_eq!(r["verified"]["oracle_agrees"], true);
}

#[test]
fn inseparable_extension_exits_two() {
    let (code, r) = pca(&["septest", &fixture("insep.alg")]);
    assert_eq!(code, 2);
    assert_eq!(r["results"]["answer"], "NotSeparable");
    let (code, _) = pca(&["sepidem", &fixture("insep.alg")]);
    assert_eq!(code, 2);
}

#[test]
fn missing_file_exits_one() {
    let out = run(["pca", "radical", "nosuchfile"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.starts_with("error:"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(["pca", "bogus"]).code, 1);
    assert_eq!(run(["pca", "radical"]).code, 1);
    assert_eq!(run(["pca", "--help"]).code, 0);
}

#[test]
fn wedderburn_blocks() {
    let (code, r) = pca(&["wedderburn", &fixture("m2f3.alg")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["blocks"], serde_json::json!([{"center_dim": 1, "dim": 4, "matrix_degree": 2}]));
    let (code, r) = pca(&["wedderburn", &fixture("t2q.alg")]);
    assert_eq!(code, 2);
    assert_eq!(r["results"]["semisimple"], false);
}

#[test]
fn nilpotent_element() {
    let (code, r) = pca(&["nilpotent", &fixture("trunc4q.alg"), "--element", "0,1,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["index"], 4);
    let (code, r) = pca(&["nilpotent", &fixture("trunc4q.alg"), "--element", "1,1,0,0"]);
    assert_eq!(code, 2);
    assert_eq!(r["results"]["index"], Value::Null);
    let (code, _) = pca(&["nilpotent", &fixture("trunc4q.alg"), "--element", "1,1"]);
    assert_eq!(code, 1);
}

#[test]
fn split_then_conjugate() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json").display().to_string();
    let b = dir.path().join("b.json").display().to_string();
    let alg = fixture("t2q.alg");
    assert_eq!(pca(&["split", &alg, "--seed", "5", "-o", &a]).0, 0);
    assert_eq!(pca(&["split", &alg, "--seed", "9", "-o", &b]).0, 0);
    let (code, r) = pca(&["conjugate", &alg, "--s1", &a, "--s2", &b, "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["omega_in_radical"], true);
    assert_eq!(r["verified"]["conjugation"], true);
}

#[test]
fn tower_build_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("k.tower").display().to_string();
    let q = fixture("kronecker.quiver");
    let (code, r) = pca(&["tower", "build", "--kind", "path", "--quiver", &q, "--depth", "3", "-o", &t]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["level_dims"], serde_json::json!([2, 4, 4]));
    let (code, r) = pca(&["tower", "check", &t]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["radical_dims"], serde_json::json!([0, 2, 2]));
    assert_eq!(r["verified"]["radical_is_arrow_ideal"], true);

    let (code, _) = pca(&["tower", "build", "--kind", "cyclicgroup", "--field", "F_2", "--depth", "2", "-o", &t]);
    assert_eq!(code, 1, "missing --p");
    let f = fixture("qc3.alg");
    let (code, r) =
        pca(&["tower", "build", "--kind", "product", "--factor", &f, "--factor", &f, "--depth", "2", "-o", &t]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["level_dims"], serde_json::json!([3, 6]));
}

#[test]
fn text_and_json_agree_on_content() {
    let text = run(["pca", "radical", &fixture("t2q.alg")]).stdout;
    assert!(text.contains("dim: 1\n"));
    assert!(text.contains("method: trace_form\n"));
    assert!(text.starts_with("command: radical\ninput_digest: sha256:"));
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_pca");
    let run_once = || Command::new(bin).args(["--json", "wedderburn", &fixture("qc3.alg")]).output().unwrap();
    let (a, b) = (run_once(), run_once());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
