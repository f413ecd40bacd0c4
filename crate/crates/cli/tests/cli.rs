use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_classpower"));
    cmd.env_remove("CLASSPOWER_CACHE_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn m11_fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/M11.json")
}

#[test]
fn a4_cube_hit_passes_its_conclusions() {
    let out = run(&[
        "analyze",
        "--group",
        "catalogue:A4",
        "--max-n",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cube = reports
        .as_array()
        .unwrap()
        .iter()
        .find(|r| {
            r["n"] == 3
                && r["oracle_shape"]["tag"]["kind"] == "trivial_plus_class"
                && r["oracle_shape"]["support"].as_array().unwrap().len() == 2
                && r["conclusions"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .any(|c| c["name"] == "theorem_b.character_identity")
        })
        .expect("a K^3 = {1} ∪ D report");
    assert!(cube["conclusions"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["holds"] == true));
}

#[test]
fn trivial_group_is_clean() {
    let out = run(&["analyze", "--group", "catalogue:Z1", "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0 hits, 0 disagreements, 0 violated conclusions"));
}

#[test]
fn m11_table_has_no_hits() {
    let fixture = m11_fixture();
    let out = run(&[
        "analyze",
        "--table",
        fixture.to_str().unwrap(),
        "--max-n",
        "6",
        "--format",
        "text",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains(" 0 hits, 0 disagreements"));
}

#[test]
fn s3_table_degrees() {
    let out = run(&["chartable", "--group", "catalogue:S3"]);
    assert_eq!(code(&out), 0);
    let table: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let degrees: Vec<f64> = table["irreducibles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[0][0].as_f64().unwrap())
        .collect();
    assert_eq!(degrees, vec![1.0, 1.0, 2.0]);
}

#[test]
fn exported_table_round_trips_to_identical_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("s4.json");
    let out = run(&[
        "chartable",
        "--group",
        "catalogue:S4",
        "--out",
        table.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let verify = run(&[
        "chartable",
        "--group",
        "catalogue:S4",
        "--verify-against",
        table.to_str().unwrap(),
    ]);
    assert_eq!(code(&verify), 0, "{}", stderr(&verify));

    let from_file = run(&[
        "analyze",
        "--table",
        table.to_str().unwrap(),
        "--max-n",
        "4",
    ]);
    let reports: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    let from_group = run(&["analyze", "--group", "catalogue:S4", "--max-n", "4"]);
    let group_reports: serde_json::Value = serde_json::from_str(&stdout(&from_group)).unwrap();
    let verdicts = |v: &serde_json::Value| -> Vec<(u64, u64, String, bool)> {
        v.as_array()
            .unwrap()
            .iter()
            .filter(|r| r["n"] != 0)
            .flat_map(|r| {
                r["char_verdicts"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .filter_map(move |c| {
                        let name = c["criterion"].as_str().unwrap();
                        matches!(name, "char1" | "char2" | "char3" | "char3.summed").then(|| {
                            (
                                r["class_id"].as_u64().unwrap(),
                                r["n"].as_u64().unwrap(),
                                name.to_string(),
                                c["holds"].as_bool().unwrap(),
                            )
                        })
                    })
            })
            .collect()
    };
    assert_eq!(verdicts(&reports), verdicts(&group_reports));
}

#[test]
fn corrupted_table_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.json");
    let out = run(&[
        "chartable",
        "--group",
        "catalogue:S3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let mut table: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    table["irreducibles"][2][1] = serde_json::json!([-2.0, 0.0]);
    std::fs::write(&path, table.to_string()).unwrap();
    let out = run(&[
        "chartable",
        "--group",
        "catalogue:S3",
        "--verify-against",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn mismatched_table_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.json");
    let out = run(&[
        "chartable",
        "--group",
        "catalogue:Q8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    // four classes against five
    let out = run(&[
        "chartable",
        "--group",
        "catalogue:A4",
        "--verify-against",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn default_suite_is_clean() {
    let out = run(&["suite", "--format", "csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("group,class,n,shape,agreement,conclusions_passed,conclusions_total"));
    assert!(text.lines().any(|l| l.starts_with("M11,")));
}

#[test]
fn injected_bad_fact_names_the_entry() {
    let dir = tempfile::tempdir().unwrap();
    let facts = dir.path().join("facts.json");
    std::fs::write(&facts, r#"{"M16": [{"fact": "class_count", "value": 3}]}"#).unwrap();
    let out = run(&["suite", "--facts", facts.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("M16"));
}

#[test]
fn conjecture_census() {
    let out = run(&[
        "suite",
        "--only",
        "conjectures",
        "--max-n",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let census: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = census.as_array().unwrap();
    let row = |name: &str| rows.iter().find(|r| r["group"] == name).unwrap().clone();
    assert_eq!(row("A5")["conjecture_1"], true);
    assert_eq!(row("M11")["conjecture_1"], true);
    assert_eq!(
        row("M16")["union_with_inverse_hits"],
        row("M16")["conjecture_3_passed"]
    );
    assert!(
        row("AGammaL(1,8)")["conjecture_3_checked"]
            .as_u64()
            .unwrap()
            > 0
    );
}

#[test]
fn suite_selects_entries() {
    let out = run(&["suite", "--only", "S3,Q8", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let groups: std::collections::BTreeSet<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(groups.into_iter().collect::<Vec<_>>(), vec!["Q8", "S3"]);
    assert_eq!(code(&run(&["suite", "--only", "Nope"])), 1);
}

#[test]
fn reports_are_byte_identical_across_runs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "analyze",
        "--group",
        "catalogue:M16",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    let cached: Vec<Output> = (0..2)
        .map(|_| {
            bin()
                .args(args)
                .env("CLASSPOWER_CACHE_DIR", dir.path())
                .output()
                .unwrap()
        })
        .collect();
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, cached[0].stdout);
    assert_eq!(first.stdout, cached[1].stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn exported_group_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("order126.json");
    let out = run(&[
        "export-group",
        "--group",
        "catalogue:(Z7:Z9):Z2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let from_file = run(&["analyze", "--group", path.to_str().unwrap(), "--max-n", "3"]);
    let from_catalogue = run(&["analyze", "--group", "catalogue:(Z7:Z9):Z2", "--max-n", "3"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, from_catalogue.stdout);
}

#[test]
fn operational_and_usage_errors_exit_1() {
    assert_eq!(code(&run(&["analyze", "--group", "catalogue:Nope"])), 1);
    assert_eq!(
        code(&run(&["analyze", "--group", "/nonexistent/group.json"])),
        1
    );
    assert_eq!(
        code(&run(&[
            "analyze",
            "--group",
            "catalogue:A4",
            "--max-n",
            "17"
        ])),
        1
    );
    assert_eq!(
        code(&run(&[
            "analyze",
            "--group",
            "catalogue:A4",
            "--tolerance",
            "0.01"
        ])),
        1
    );
    assert_eq!(code(&run(&["analyze"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}
