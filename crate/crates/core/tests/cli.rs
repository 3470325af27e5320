use std::path::Path;
use std::process::{Command, Output};

fn mgomea(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgomea")).args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn missing_csv_fails_with_the_path() {
    let o = mgomea(&["run", "--dataset", "/nowhere/data.csv", "--budget-generations", "1"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("/nowhere/data.csv"), "{}", stderr(&o));
}

#[test]
fn invalid_config_is_rejected_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r");
    let o = mgomea(&["run", "--synthetic", "9", "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(!out.join("summary.json").exists());
    let o = mgomea(&["run", "--synthetic", "2", "--grid", "4y4", "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
}

#[test]
fn synth_writes_named_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.csv");
    let o = mgomea(&["synth", "--synthetic", "4", "--seed", "3", "--samples", "50", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x0,x1,x2,x3,y"));
    assert_eq!(lines.count(), 50);
}

fn summary(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

#[test]
fn run_writes_every_artifact_and_repeats_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let o = mgomea(&[
            "run", "--synthetic", "2", "--grid", "3x3", "--pop", "64", "--seed", "5",
            "--budget-generations", "4", "--dump-linkage", "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for f in ["generations.jsonl", "front.csv", "best.txt", "summary.json", "linkage/fos.csv", "linkage/tree0_mi.csv"] {
        assert!(a.join(f).exists(), "{f}");
    }
    let (mut sa, mut sb) = (summary(&a), summary(&b));
    for key in [
        "algo", "config", "r2_train", "r2_test", "recovered", "usage", "evaluations", "generations",
        "wall_seconds", "expression", "seed",
    ] {
        assert!(sa.get(key).is_some(), "{key}");
    }
    assert!(sa["recovered"].is_boolean());
    sa["wall_seconds"] = 0.into();
    sb["wall_seconds"] = 0.into();
    assert_eq!(sa, sb);
}

#[test]
fn sweep_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sw");
    let o = mgomea(&[
        "sweep", "--synthetic", "5", "--grid", "2x2", "--pop", "32", "--reps", "3",
        "--budget-generations", "2", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = out.join("sweep.csv");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 4);
    let o = mgomea(&["report", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = String::from_utf8_lossy(&o.stdout);
    assert!(report.contains("2x2"), "{report}");
    assert!(report.contains("re-used as function"), "{report}");
}

#[test]
fn report_rejects_foreign_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.csv");
    std::fs::write(&p, "a,b\n1,2\n").unwrap();
    let o = mgomea(&["report", p.to_str().unwrap()]);
    assert!(!o.status.success());
}
