use std::path::Path;
use std::process::{Command, Output};

use gtvar_cli::sweep::{SweepConfig, SweepReport};

fn gtvar(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtvar"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn invariant_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let o = gtvar(
        tmp.path(),
        &[
            "invariants",
            "--d",
            "6",
            "--alphas",
            "0,1,2,3",
            "--t",
            "1",
            "--format",
            "json",
        ],
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 16);
    assert_eq!(v["monomials"][2], "x0^3*x1*x2*x3");

    let o = gtvar(
        tmp.path(),
        &[
            "invariants",
            "--d",
            "6",
            "--alphas",
            "0,1,2,3",
            "--t",
            "2",
            "--format",
            "csv",
        ],
    );
    assert_eq!(stdout(&o).lines().count(), 1 + 79);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| gtvar(tmp.path(), args).status.code();
    assert_eq!(
        code(&["invariants", "--d", "4", "--alphas", "0,2,2,2"]),
        Some(2)
    );
    assert_eq!(
        code(&["invariants", "--d", "3", "--alphas", "0,1,2,2"]),
        Some(2)
    );
    assert_eq!(code(&["invariants", "--d", "5"]), Some(2));
    assert_eq!(
        code(&["cohomology", "--d", "4", "--alphas", "0,1,2,3"]),
        Some(3)
    );
    assert_eq!(
        code(&[
            "ideal",
            "--d",
            "6",
            "--alphas",
            "0,1,2,3",
            "--max-multisets",
            "10"
        ]),
        Some(4)
    );
    assert_eq!(code(&["sweep", "/nonexistent/config.json"]), Some(4));
    assert_eq!(
        code(&["canonical", "--d", "6", "--alphas", "0,1,2,3"]),
        Some(0)
    );

    let o = gtvar(
        tmp.path(),
        &["invariants", "--d", "4", "--alphas", "0,2,2,2"],
    );
    assert!(String::from_utf8_lossy(&o.stderr).contains("GcdViolation"));
}

#[test]
fn cohomology_tables_verbatim() {
    let tmp = tempfile::tempdir().unwrap();
    let o = gtvar(
        tmp.path(),
        &[
            "cohomology",
            "--d",
            "5",
            "--alphas",
            "0,1,2",
            "--jmin",
            "-10",
            "--jmax",
            "0",
        ],
    );
    assert_eq!(stdout(&o), fixture("table_5_012.txt"));
    let o = gtvar(
        tmp.path(),
        &[
            "cohomology",
            "--d",
            "4",
            "--alphas",
            "0,1,1,2",
            "--jmin",
            "-9",
            "--jmax",
            "0",
        ],
    );
    assert_eq!(stdout(&o), fixture("table_4_0112.txt"));

    let o = gtvar(
        tmp.path(),
        &[
            "cohomology",
            "--d",
            "5",
            "--alphas",
            "0,1,2",
            "--format",
            "json",
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["eta"].as_u64(), v["N"].as_u64()), (Some(2), Some(18)));
    assert_eq!(v["columns"][0], -11);
    assert_eq!(v["rows"]["0"].as_array().unwrap().last().unwrap(), 390);
}

#[test]
fn ideal_and_canonical() {
    let tmp = tempfile::tempdir().unwrap();
    let o = gtvar(
        tmp.path(),
        &[
            "ideal", "--d", "6", "--alphas", "0,1,2,3", "--kmax", "4", "--format", "json",
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["quadric_count"].as_u64(), v["cubic_count"].as_u64()),
        (Some(57), Some(0))
    );
    assert_eq!(v["certificate"]["certified"], true);

    let o = gtvar(
        tmp.path(),
        &[
            "canonical",
            "--d",
            "6",
            "--alphas",
            "0,1,2,3",
            "--format",
            "json",
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let total = v["c1"].as_array().unwrap().len() + v["c2_minimal"].as_array().unwrap().len();
    assert_eq!(total, 6);
}

#[test]
fn cache_hits_reproduce_output() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["hilbert", "--d", "6", "--alphas", "0,1,2,3"];
    let first = stdout(&gtvar(tmp.path(), &args));
    let entries = walk(tmp.path());
    assert_eq!(entries.len(), 1);
    // a planted entry proves the second run reads the cache
    std::fs::write(&entries[0], "planted\n").unwrap();
    assert_eq!(stdout(&gtvar(tmp.path(), &args)), "planted\n");
    let mut fresh = args.to_vec();
    fresh.push("--no-cache");
    assert_eq!(stdout(&gtvar(tmp.path(), &fresh)), first);
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

const SWEEP: &str = r#"{
  "n_range": [2, 3],
  "d_range": [3, 6],
  "alpha_mode": {"sampled": {"count": 4, "seed": 3}},
  "checks": ["three-distinct", "hilbert-degree", "hilbert-e1", "regularity"]
}"#;

#[test]
fn sweep_is_deterministic_and_round_trips() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("sweep.json");
    std::fs::write(&cfg, SWEEP).unwrap();
    let run = |out: &str, extra: &[&str]| {
        let out = tmp.path().join(out);
        let mut args = vec![
            "sweep",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        let o = gtvar(&tmp.path().join("cache"), &args);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out).unwrap()
    };
    let a = run("a.json", &["--no-cache", "--threads", "1"]);
    let b = run("b.json", &["--threads", "3"]);
    let c = run("c.json", &[]);
    assert_eq!(a, b);
    assert_eq!(a, c);

    let report: SweepReport = serde_json::from_slice(&a).unwrap();
    let again: SweepReport = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(again, report);
    assert_eq!(report.to_json().as_bytes(), a.as_slice());
    let expected = SweepConfig::from_json(SWEEP).unwrap().specs();
    assert_eq!(
        report
            .records
            .iter()
            .map(|r| r.spec.clone())
            .collect::<Vec<_>>(),
        expected
    );
    assert!(report.failures.is_empty());
}

#[test]
fn unknown_check_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("sweep.json");
    std::fs::write(
        &cfg,
        r#"{"n_range":[2,2],"d_range":[3,3],"alpha_mode":"exhaustive","checks":["bogus"]}"#,
    )
    .unwrap();
    let o = gtvar(tmp.path(), &["sweep", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
