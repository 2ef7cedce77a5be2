//! Reports compared byte for byte against checked-in files. Set `PCA_BLESS=1` to
//! rewrite them after an intended change.

use std::path::PathBuf;

use pca_cli::run;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn golden(name: &str, args: &[&str]) {
    let fixtures = dir("fixtures");
    let mut argv = vec!["pca".to_string(), "--verify".to_string()];
    argv.extend(
        args.iter().map(|a| a.strip_prefix('@').map_or(a.to_string(), |f| fixtures.join(f).display().to_string())),
    );
    let out = run(argv);
    let text = format!("exit {}\n{}", out.code, out.stdout);
    let path = dir("golden").join(name);
    if std::env::var_os("PCA_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, want, "{name} drifted; rerun with PCA_BLESS=1 if intended");
}

#[test]
fn radical_t2q() {
    golden("radical_t2q.txt", &["radical", "@t2q.alg"]);
}

#[test]
fn radical_f2c4_json() {
    golden("radical_f2c4.json", &["--json", "radical", "--oracle", "@f2c4.alg"]);
}

#[test]
fn wedderburn_qc3() {
    golden("wedderburn_qc3.json", &["--json", "wedderburn", "@qc3.alg"]);
}

#[test]
fn septest_insep() {
    golden("septest_insep.txt", &["septest", "@insep.alg"]);
}

#[test]
fn sepidem_m2f3() {
    golden("sepidem_m2f3.json", &["--json", "sepidem", "@m2f3.alg"]);
}

#[test]
fn split_trunc4q() {
    golden("split_trunc4q.txt", &["split", "@trunc4q.alg"]);
}
