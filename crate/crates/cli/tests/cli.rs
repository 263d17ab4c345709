use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn ar2mt(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_ar2mt"))
        .args(args)
        .env_remove("AR2MT_RULES")
        .env_remove("AR2MT_MORPH_RULES")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn empty_input_gives_empty_output() {
    for cmd in [&["translit"][..], &["normalize"][..]] {
        let o = ar2mt(cmd, "");
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn line_count_is_preserved_and_bom_dropped() {
    let input = "\u{FEFF}أوقفت السيارة في الطريق.\n\nفي\n";
    let o = ar2mt(&["translit", "--scheme", "chartx"], input);
    assert_eq!(stdout(&o), "uqft alsjara fi altriq.\n\nfi\n");
    let o = ar2mt(&["normalize"], "\u{FEFF}ﻻ\n\n");
    assert_eq!(stdout(&o), "لا\n\n");
}

#[test]
fn bad_sidecar_header_is_fatal_with_json_summary() {
    let dir = tempfile::tempdir().unwrap();
    let side = dir.path().join("a.jsonl");
    fs::write(&side, "{\"format\":\"other\",\"version\":1}\n").unwrap();
    let o = ar2mt(
        &[
            "translit",
            "--scheme",
            "morphtx",
            "--analyses",
            side.to_str().unwrap(),
        ],
        "في\n",
    );
    assert!(!o.status.success());
    let err: serde_json::Value = serde_json::from_slice(o.stderr.trim_ascii()).unwrap();
    assert_eq!(err["error"], "analyses_header");
}

#[test]
fn bad_records_are_diagnosed_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let side = dir.path().join("a.jsonl");
    fs::write(&side, "{\"sentence_id\":0,\"tokens\":[{\"diacritized\":\"فِي\",\"morphemes\":[{\"surface\":\"x\",\"tag\":\"PREP\"}]}]}\n").unwrap();
    let diag = dir.path().join("d.jsonl");
    let o = ar2mt(
        &[
            "translit",
            "--scheme",
            "morphtx",
            "--analyses",
            side.to_str().unwrap(),
            "--diagnostics",
            diag.to_str().unwrap(),
        ],
        "في\n",
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "fi\n");
    let d = fs::read_to_string(diag).unwrap();
    assert!(d.contains("\"kind\":\"analysis_record\""), "{d}");
}

#[test]
fn morphtx_without_analyses_equals_chartx() {
    let input = fs::read_to_string(fixture("arsentd_mini.tsv")).unwrap();
    let a = ar2mt(&["translit", "--scheme", "morphtx"], &input);
    let b = ar2mt(&["translit", "--scheme", "chartx"], &input);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn rules_from_environment_and_version_checksum() {
    let dir = tempfile::tempdir().unwrap();
    let rules = dir.path().join("rules.tsv");
    let builtin = fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/rules/chartx.tsv"),
    )
    .unwrap();
    let changed = builtin.replace("f\t-\tf\t", "f\t-\tff\t");
    assert_ne!(builtin, changed);
    fs::write(&rules, &changed).unwrap();

    let default_version = stdout(&ar2mt(&["--version"], ""));
    assert!(default_version.starts_with("ar2mt "));
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_ar2mt"))
            .args(extra)
            .env("AR2MT_RULES", &rules)
            .output()
            .unwrap()
    };
    let custom_version = stdout(&run(&["--version"]));
    assert_ne!(default_version, custom_version);

    let o = run(&["translit", "--in", fixture("golden.txt").to_str().unwrap()]);
    assert_eq!(stdout(&o), "uqfft alsjara ffi altriq.\n");
}

#[test]
fn infeasible_split_and_missing_input_fail() {
    let o = ar2mt(
        &[
            "corpus",
            "--task",
            "sa",
            "--in",
            fixture("arsentd_mini.tsv").to_str().unwrap(),
            "--downsample",
            "100,100",
            "--out",
            "/tmp/unused",
        ],
        "",
    );
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible_split"));
    let o = ar2mt(&["normalize", "--in", "/nonexistent/file"], "");
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"error\":\"io\""));
}

#[test]
fn fertility_report() {
    let o = ar2mt(
        &[
            "fertility",
            "--vocab",
            fixture("vocab_mini.txt").to_str().unwrap(),
            "--in",
            fixture("fertility_corpus.txt").to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(
        stdout(&o),
        "scheme\ttokens\tpieces\tfertility\tunknown_rate\ninput\t6\t13\t2.166667\t0.166667\n"
    );
}
