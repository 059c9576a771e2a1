use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ribbonforge"));
    cmd.args(args).env_remove("RIBBONFORGE_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn invalid_radford_parameters_are_usage_errors() {
    assert_eq!(run(&["verify", "radford", "1", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "radford", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "taft", "1"]).status.code(), Some(2));
    assert_eq!(run(&["ribbon", "2"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--m", "3..2", "--n", "1..1"]).status.code(), Some(2));
}

#[test]
fn verify_taft_passes() {
    let o = run(&["verify", "taft", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("failures: 0"));
}

#[test]
fn verify_full_depth_writes_clean_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "radford", "2", "3", "--depth", "full", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = read_json(&dir.path().join("verify-radford-2-3.json"));
    assert_eq!(v["failures"], 0);
    let sections = v["sections"].as_array().unwrap();
    let double = sections.iter().find(|s| s["name"] == "double_axioms").unwrap();
    assert_eq!(double["depth"], "full");
    assert!(sections.iter().all(|s| s["passed"] == true));
}

#[test]
fn ribbon_counts() {
    let o = run(&["ribbon", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ribbon elements: 2"));
    let o = run(&["ribbon", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("quasi-ribbon elements: 0"));
    let o = run(&["ribbon", "3", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ribbon elements: 1"));
    let o = run(&["ribbon", "0", "3", "--taft"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ribbon elements: 1"));
}

#[test]
fn group_algebra_cell_fails_the_parity_rule() {
    let o = run(&["ribbon", "2", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("ribbon elements: 4"));
}

#[test]
fn reports_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = run(&["ribbon", "2", "3", "--out", d.path().to_str().unwrap(), "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
    }
    let fa = std::fs::read(a.path().join("ribbon-radford-2-3.json")).unwrap();
    let fb = std::fs::read(b.path().join("ribbon-radford-2-3.json")).unwrap();
    assert_eq!(fa, fb);
    assert_eq!(read_json(&a.path().join("ribbon-radford-2-3.json"))["schema"], "ribbonforge-report-v1");
}

#[test]
fn budget_env_is_honoured() {
    let o = run_env(&["ribbon", "2", "3"], &[("RIBBONFORGE_BUDGET", "100")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_env(&["ribbon", "2", "3"], &[("RIBBONFORGE_BUDGET", "lots")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_persists_caches_and_skips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["sweep", "--m", "2..3", "--n", "1..3", "--out", out]);
    // (2,1) has four ribbon elements over Z_2, so the sweep reports a failure
    assert_eq!(o.status.code(), Some(1));
    let index = read_json(&dir.path().join("index.json"));
    let cells = index["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 6);
    for c in cells {
        assert_eq!(c["status"], "computed");
        let (m, n) = (c["m"].as_u64().unwrap(), c["n"].as_u64().unwrap());
        let ok = c["parity_ok"].as_bool().unwrap();
        assert_eq!(ok, (m, n) != (2, 1), "cell ({m},{n})");
        assert!(dir.path().join(format!("ribbon-radford-{m}-{n}.json")).exists());
    }
    let first = std::fs::read(dir.path().join("ribbon-radford-3-3.json")).unwrap();

    run(&["sweep", "--m", "2..3", "--n", "1..3", "--out", out]);
    let index = read_json(&dir.path().join("index.json"));
    assert!(index["cells"].as_array().unwrap().iter().all(|c| c["status"] == "cached"));

    run(&["sweep", "--m", "3..3", "--n", "3..3", "--out", out, "--force"]);
    let index = read_json(&dir.path().join("index.json"));
    assert_eq!(index["cells"][0]["status"], "computed");
    assert_eq!(std::fs::read(dir.path().join("ribbon-radford-3-3.json")).unwrap(), first);

    // a corrupted report is recomputed
    std::fs::write(dir.path().join("ribbon-radford-2-2.json"), "{").unwrap();
    run(&["sweep", "--m", "2..2", "--n", "2..2", "--out", out]);
    assert_eq!(read_json(&dir.path().join("index.json"))["cells"][0]["status"], "computed");

    let o = run(&["sweep", "--m", "4..4", "--n", "4..4", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let index = read_json(&dir.path().join("index.json"));
    assert_eq!(index["cells"][0]["status"], "skipped: dim 4096 exceeds budget");
}
