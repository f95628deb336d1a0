use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/mini")
}

fn electweet(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_electweet"))
        .arg("--config")
        .arg(fixture().join("electweet.conf"))
        .arg("--out-dir")
        .arg(out)
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn stdout_lists_written_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = electweet(&["activity"], dir.path());
    assert_eq!(code(&o), 0);
    let listed: Vec<String> = String::from_utf8(o.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(listed.len(), 3);
    assert!(listed.iter().all(|p| Path::new(p).is_file()));
}

#[test]
fn data_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let o = electweet(
        &["--set", &format!("candidate_tweets={}", empty.display()), "report"],
        &dir.path().join("out"),
    );
    assert_eq!(code(&o), 2);

    let o = electweet(&["--set", "feature_sets=word2vec", "report"], &dir.path().join("out"));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("embeddings"));

    let o = electweet(
        &["--set", "tweets=/no/such/file.jsonl", "mentions"],
        &dir.path().join("out"),
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let o = electweet(&["--set", "bogus=1", "mentions"], dir.path());
    assert_eq!(code(&o), 1);
    let o = electweet(&["--frobnicate"], dir.path());
    assert_eq!(code(&o), 1);

    // No config at all: synth has no seed.
    let o = Command::new(env!("CARGO_BIN_EXE_electweet"))
        .arg("--out-dir")
        .arg(dir.path())
        .arg("synth")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn help_exits_0() {
    let o = Command::new(env!("CARGO_BIN_EXE_electweet"))
        .arg("--help")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for sub in [
        "synth",
        "mentions",
        "sentiment",
        "activity",
        "profiles",
        "train",
        "report",
    ] {
        assert!(text.contains(sub), "{sub} missing from help");
    }
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let o = electweet(
        &[
            "--seed",
            "11",
            "--set",
            "models=gnb",
            "--set",
            "feature_sets=bow",
            "report",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let report = fs::read_to_string(dir.path().join("model_report.csv")).unwrap();
    let row = report.lines().nth(1).unwrap();
    assert!(row.starts_with("bow,gaussian_nb,"));
    assert_eq!(row.split(',').nth(4), Some("11"));
}

#[test]
fn saved_models_reload() {
    let dir = tempfile::tempdir().unwrap();
    let o = electweet(
        &["--set", "models=lr,dt", "--set", "feature_sets=bow", "train"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    for name in ["bow__logistic_regression.bsm", "bow__decision_tree.bsm"] {
        let model = electweet::ml::Model::load(dir.path().join("models").join(name)).unwrap();
        assert!(model.n_features > 0);
    }
}
