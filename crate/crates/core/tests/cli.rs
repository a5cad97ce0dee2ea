use std::path::Path;
use std::process::{Command, Output};

use toponet::pipeline::load_report;

const CONFIG: &str = r#"
[dataset]
kind = "annulus-cluster"
points_per_class = 150

[network]
depth = 2
width = 4
activation = "tanh"

[training]
epochs = 150
early_stop = false

[topology]
classes = "both"

[run]
seeds = [3]
"#;

fn toponet(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toponet"))
        .current_dir(dir)
        .env_remove("TOPONET_OUT")
        .args(args)
        .output()
        .unwrap()
}

fn ok(out: Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn every_subcommand_writes_its_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("small.toml"), CONFIG).unwrap();
    let common = ["--config", "small.toml", "--out", "out", "--quiet"];
    let with = |cmd: &str, extra: &[&str]| {
        let mut args = vec![cmd];
        args.extend_from_slice(&common);
        args.extend_from_slice(extra);
        ok(toponet(d, &args))
    };

    with("generate", &["--seed", "4"]);
    for seed in [3, 4] {
        let csv = std::fs::read_to_string(d.join(format!("out/dataset_annulus-cluster_seed{seed}.csv"))).unwrap();
        assert_eq!(csv.lines().count(), 301);
    }

    let trained = with("train", &[]);
    assert!(trained.starts_with("seed 3: "));
    assert!(d.join("out/model_seed3.json").exists());
    assert_eq!(std::fs::read_to_string(d.join("out/history_seed3.csv")).unwrap().lines().count(), 151);

    with("analyze", &["--checkpoint", "out/model_seed3.json"]);
    let from_checkpoint = load_report(d.join("out/report.json")).unwrap();
    with("analyze", &[]);
    let fresh = load_report(d.join("out/report.json")).unwrap();
    // retraining reproduces the checkpoint up to its nine stored digits
    assert_eq!(from_checkpoint.seeds[0].classes, fresh.seeds[0].classes);
    assert!((from_checkpoint.seeds[0].train_accuracy - fresh.seeds[0].train_accuracy).abs() < 1e-12);

    with("plot", &[]);
    for stem in ["betti0-vs-layer", "betti1-vs-layer", "complexity-vs-layer", "accuracy-vs-epoch"] {
        let svg = std::fs::read_to_string(d.join(format!("out/{stem}.svg"))).unwrap();
        assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"), "{stem}");
    }

    let text = with("report", &["--dim", "0", "--class", "a"]);
    assert!(text.contains("β0"));
    assert!(!text.contains("class b"));
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(toponet(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(toponet(dir.path(), &["train", "--seed", "x"]).status.code(), Some(1));
    assert_eq!(toponet(dir.path(), &["train", "--out", "o"]).status.code(), Some(1));
    assert_eq!(toponet(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn a_missing_report_is_not_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = toponet(dir.path(), &["report", "--out", "nowhere"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
