use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn refex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_refex"))
        .args(args)
        .env_remove("REFEX_ORACLE_GUARD")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn generate_greedy_red_pen() {
    let kb = data("kb/red_green.json");
    let out = refex(&[
        "generate",
        "--kb",
        &kb,
        "--strategy",
        "greedy",
        "--referent",
        "pen1",
        "--context",
        "pen1,pen2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "colour=red\n");
}

#[test]
fn generate_singleton_full_brevity_is_empty() {
    let kb = data("kb/red_green.json");
    let out = refex(&[
        "generate",
        "--kb",
        &kb,
        "--referent",
        "pen1",
        "--context",
        "pen1",
        "--strategy",
        "full-brevity",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "\n");
}

#[test]
fn generate_false_convey_exits_3() {
    let kb = data("kb/red_green.json");
    let out = refex(&[
        "generate",
        "--kb",
        &kb,
        "--convey",
        "colour=blue",
        "--referent",
        "pen1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("quality violation"));
}

#[test]
fn generate_indiscernible_exits_2() {
    let dir = std::env::temp_dir().join(format!("refex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let kb = dir.join("twins.json");
    std::fs::write(
        &kb,
        r#"{"entities": {"e1": {"type": "pen"}, "e2": {"type": "pen"}}}"#,
    )
    .unwrap();
    let out = refex(&["generate", "--kb", kb.to_str().unwrap(), "--referent", "e1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn input_errors_exit_1() {
    let kb = data("kb/red_green.json");
    for args in [
        vec![
            "generate",
            "--kb",
            "/nonexistent.json",
            "--referent",
            "pen1",
        ],
        vec![
            "generate",
            "--kb",
            &kb,
            "--referent",
            "pen1",
            "--strategy",
            "best",
        ],
        vec![
            "generate",
            "--kb",
            &kb,
            "--referent",
            "pen1",
            "--context",
            "pen2",
        ],
        vec![
            "generate",
            "--kb",
            &kb,
            "--referent",
            "pen1",
            "--context",
            "pen9",
        ],
        vec![
            "generate",
            "--kb",
            &kb,
            "--referent",
            "pen1",
            "--genre",
            "opera",
        ],
        vec![
            "generate",
            "--kb",
            &kb,
            "--referent",
            "pen1",
            "--convey",
            "red",
        ],
        vec!["generate", "--kb", &kb],
        vec!["interpret", "--kb", &kb, "--description", "colour"],
    ] {
        let out = refex(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(stdout(&out).is_empty(), "{args:?}");
    }
}

#[test]
fn generate_json_report() {
    let kb = data("kb/staedtler.json");
    let out = refex(&[
        "generate",
        "--kb",
        &kb,
        "--referent",
        "pen1",
        "--strategy",
        "incremental",
        "--genre",
        "casual",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        report["description"],
        serde_json::json!(["manufacturer=staedtler", "type=pen"])
    );
    assert_eq!(report["warnings"].as_array().unwrap().len(), 1);
    assert_eq!(report["warnings"][0]["reason"], "not_genre_preferred");
    assert_eq!(report["goals"]["outstanding"], serde_json::json!([]));
    assert!(report.get("implicature_risk").is_none());
    assert!(stderr(&out).contains("not identification-preferred in genre casual"));
}

#[test]
fn generate_with_genre_file_and_convey() {
    let kb = data("kb/staedtler.json");
    let genre = data("genres/inventory.json");
    let out = refex(&[
        "generate",
        "--kb",
        &kb,
        "--referent",
        "pen1",
        "--strategy",
        "incremental",
        "--genre",
        &genre,
        "--convey",
        "colour=red",
        "--analyze",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        report["description"],
        serde_json::json!(["colour=red", "manufacturer=staedtler", "type=pen"])
    );
    assert_eq!(report["goals"]["satisfied"].as_array().unwrap().len(), 2);
    // the conveyed colour does no identification work among red pens
    assert_eq!(report["implicature_risk"].as_array().unwrap().len(), 1);
    assert_eq!(
        report["implicature_risk"][0]["reason"],
        "surplus_to_identification"
    );
}

#[test]
fn analyzer_does_not_change_output() {
    let kb = data("kb/staedtler.json");
    let base = [
        "generate",
        "--kb",
        &kb,
        "--referent",
        "pen1",
        "--strategy",
        "incremental",
    ];
    let plain = refex(&base);
    let analysed = refex(&[&base[..], &["--analyze"]].concat());
    assert_eq!(stdout(&plain), stdout(&analysed));
}

#[test]
fn interpret_outcomes() {
    let kb = data("kb/red_green.json");
    let out = refex(&[
        "interpret",
        "--kb",
        &kb,
        "--description",
        "colour=red",
        "--context",
        "pen1,pen2",
    ]);
    assert_eq!(stdout(&out), "outcome: UniqueReferent\nresolved: pen1\n");

    let out = refex(&[
        "interpret",
        "--kb",
        &kb,
        "--description",
        "type=pen",
        "--context",
        "pen1,pen2",
    ]);
    assert_eq!(stdout(&out), "outcome: Ambiguous\nresolved: pen1,pen2\n");

    let out = refex(&[
        "interpret",
        "--kb",
        &kb,
        "--description",
        "colour=red,type=pen",
        "--referent",
        "pen1",
    ]);
    assert_eq!(
        stdout(&out),
        "outcome: UniqueReferent\nresolved: pen1\ncolour=red: Necessary\ntype=pen: Surplus\n"
    );
}

#[test]
fn interpret_ambiguous_with_referent_exits_2() {
    let kb = data("kb/red_green.json");
    let out = refex(&[
        "interpret",
        "--kb",
        &kb,
        "--description",
        "type=pen",
        "--referent",
        "pen1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn interpret_json() {
    let kb = data("kb/newly_painted.json");
    let out = refex(&[
        "interpret",
        "--kb",
        &kb,
        "--description",
        "condition=newly-painted",
        "--referent",
        "table1",
        "--json",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["outcome"], "unique_referent");
}

#[test]
fn compare_greedy_trap() {
    let kb = data("kb/greedy_trap.json");
    let out = refex(&["compare", "--kb", &kb, "--referent", "r", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["minimality_gap"], 1);
    let lengths: Vec<_> = report["runs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["length"].clone())
        .collect();
    assert_eq!(
        lengths,
        [
            serde_json::json!(2),
            serde_json::json!(3),
            serde_json::json!(2)
        ]
    );
    assert!(report["runs"][0].get("wall_time_us").is_none());
}

#[test]
fn compare_fixtures_table() {
    let kb = data("kb/red_green.json");
    let out = refex(&["compare", "--kb", &kb, "--referent", "pen1"]);
    let table = stdout(&out);
    assert!(table.contains("incremental         2  {colour=red, type=pen}"));
    assert!(table.ends_with("minimality gap: 0\n"));

    let out = refex(&[
        "compare",
        "--kb",
        &kb,
        "--referent",
        "pen1",
        "--context",
        "pen1",
    ]);
    let table = stdout(&out);
    assert!(table.contains("full-brevity        0  {}"));
    assert!(table.contains("greedy              0  {}"));
    assert!(table.contains("incremental         1  {type=pen}"));
}

#[test]
fn compare_is_byte_identical_across_runs() {
    let kb = data("kb/greedy_trap.json");
    let args = ["compare", "--kb", &kb, "--referent", "r"];
    assert_eq!(refex(&args).stdout, refex(&args).stdout);
    let args = ["generate", "--kb", &kb, "--referent", "r", "--json"];
    assert_eq!(refex(&args).stdout, refex(&args).stdout);
}

#[test]
fn compare_timings_are_opt_in() {
    let kb = data("kb/greedy_trap.json");
    let out = refex(&["compare", "--kb", &kb, "--referent", "r", "--timings"]);
    assert!(stdout(&out).contains(" us]"));
}

#[test]
fn oracle_guard_env_override() {
    let kb = data("kb/greedy_trap.json");
    let out = Command::new(env!("CARGO_BIN_EXE_refex"))
        .args(["compare", "--kb", &kb, "--referent", "r", "--json"])
        .env("REFEX_ORACLE_GUARD", "2")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["oracle"]["error"]
        .as_str()
        .unwrap()
        .contains("oracle limit of 2"));
    assert!(report["minimality_gap"].is_null());

    let out = Command::new(env!("CARGO_BIN_EXE_refex"))
        .args(["compare", "--kb", &kb, "--referent", "r"])
        .env("REFEX_ORACLE_GUARD", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn normalize_is_canonical() {
    for (flag, name) in [
        ("--kb", "kb/staedtler.json"),
        ("--kb", "kb/greedy_trap.json"),
        ("--genre", "genres/casual.json"),
    ] {
        let path = data(name);
        let out = refex(&["normalize", flag, &path]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(
            stdout(&out),
            std::fs::read_to_string(&path).unwrap(),
            "{name}"
        );
    }
}
