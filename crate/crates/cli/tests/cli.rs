use std::path::Path;
use std::process::{Command, Output};

use rilab_core::experiment::{ExperimentConfig, ExperimentReport};

fn rilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rilab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn configs_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

#[test]
fn list_has_catalog() {
    let o = rilab(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().count() >= 6);
    assert!(text.contains("mystery-module") && text.contains("macaulay"));
}

#[test]
fn describe_known_and_unknown() {
    let o = rilab(&["describe", "mystery-module"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Example, §2"));
    assert_eq!(rilab(&["describe", "bogus"]).status.code(), Some(2));
}

#[test]
fn unknown_example_and_check_exit_2() {
    assert_eq!(rilab(&["run", "example:bogus"]).status.code(), Some(2));
    assert_eq!(rilab(&["run", "example:ci-link", "--checks", "nonsense"]).status.code(), Some(2));
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[source]\nkind = \"catalog\"\nexample = \"ci-link\"\nunknown_key = 1\n").unwrap();
    assert_eq!(rilab(&["run", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, "schema = 99\n[source]\nkind = \"catalog\"\nexample = \"ci-link\"\n").unwrap();
    assert_eq!(rilab(&["run", bad.to_str().unwrap()]).status.code(), Some(2));
    // J not inside I
    std::fs::write(
        &bad,
        "[source]\nkind = \"explicit\"\nvariables = [\"x\", \"y\"]\ngenerators = [\"x\"]\n[j]\nkind = \"explicit\"\ngenerators = [\"y\"]\n",
    )
    .unwrap();
    assert_eq!(rilab(&["run", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn mystery_report_contents() {
    let o = rilab(&["run", "example:mystery-module", "--checks", "duality,hom", "--json"]);
    assert!(o.status.success());
    let report: ExperimentReport = serde_json::from_str(&stdout(&o)).unwrap();
    let hf = report.results.module_hilbert.as_ref().unwrap();
    assert_eq!(hf[1].values, vec![3, 4, 3]);
    assert_eq!(hf[2].values, vec![5, 2]);
    assert_eq!(report.results.omega_hilbert.as_ref().unwrap().values, vec![6, 3, 1]);
    assert!(report.results.hom.as_ref().unwrap().holds);
    let pairings = report.results.duality.as_ref().unwrap();
    assert!(pairings.iter().all(|p| !p.rank_test.applicable));
}

#[test]
fn reports_are_reproducible_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let cfg = configs_dir().join("mystery-module.toml");
    let cfg = cfg.to_str().unwrap();
    assert!(rilab(&["run", cfg, "--out", out]).status.success());
    let first = std::fs::read_to_string(dir.path().join("mystery-module.json")).unwrap();
    assert!(dir.path().join("mystery-module.txt").exists());
    assert!(dir.path().join("mystery-module.timings.json").exists());
    assert!(rilab(&["run", cfg, "--out", out]).status.success());
    let second = std::fs::read_to_string(dir.path().join("mystery-module.json")).unwrap();
    assert_eq!(first, second);

    let parsed: ExperimentReport = serde_json::from_str(&first).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again, first);
}

#[test]
fn config_files_round_trip() {
    for entry in std::fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("toml") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let cfg: ExperimentConfig = toml::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let back: ExperimentConfig = toml::from_str(&toml::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(cfg, back, "{}", path.display());
    }
}

#[test]
fn budget_exhaustion_exits_3_with_partial_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rilab"))
        .args(["run", "example:mystery-module", "--checks", "duality", "--out", dir.path().to_str().unwrap()])
        .env("RILAB_MAX_PAIRS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let body = std::fs::read_to_string(dir.path().join("mystery-module.json")).unwrap();
    let report: ExperimentReport = serde_json::from_str(&body).unwrap();
    assert!(report.partial);
    assert!(report.errors.iter().any(|e| e.budget_exhausted));
}

#[test]
fn bad_env_override_exits_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_rilab"))
        .args(["run", "example:ci-link"])
        .env("RILAB_DEGREE_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_verdicts_do_not_abort_batch() {
    // mystery pairings fail, ci-link pairings pass; both reports appear
    let o = rilab(&["run", "example:mystery-module", "example:ci-link", "--checks", "duality"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("mystery-module") && text.contains("ci-link"));
    assert!(text.contains("FAIL") && text.contains("PASS"));
}

#[test]
fn selftest_passes() {
    let o = rilab(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
}
