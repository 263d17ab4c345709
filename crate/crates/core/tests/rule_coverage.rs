mod common;

use std::collections::BTreeSet;

use ar2mt::chartx::CharTx;
use ar2mt::morphtx::MorphTx;
use common::{char_cases, morph_cases, run_char_case, run_morph_case};

#[test]
fn character_cases_match_expected_output() {
    let tx = CharTx::default();
    let mut failures = Vec::new();
    for case in char_cases() {
        let got = run_char_case(&tx, &case).text;
        if got != case.expected {
            failures.push(format!(
                "{:?}: expected {:?}, got {:?}",
                case.input, case.expected, got
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_character_rule_fires_in_an_asserted_case() {
    let tx = CharTx::default();
    let mut fired = BTreeSet::new();
    for case in char_cases() {
        let out = run_char_case(&tx, &case);
        if out.text == case.expected {
            fired.extend(out.applications.iter().map(|a| a.rule));
        }
    }
    let missing: Vec<String> = tx
        .table()
        .rules()
        .iter()
        .filter(|r| !fired.contains(&r.id))
        .map(|r| format!("line {} {:?}", r.line, r.source_buckwalter()))
        .collect();
    assert!(missing.is_empty(), "rules never fired: {missing:?}");
}

#[test]
fn morpheme_cases_match_expected_output() {
    let mx = MorphTx::default();
    let mut failures = Vec::new();
    for case in morph_cases() {
        let got = run_morph_case(&mx, &case).joined();
        if got != case.expected {
            failures.push(format!(
                "{}: expected {:?}, got {:?}",
                case.spec, case.expected, got
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_morpheme_rule_fires_in_an_asserted_case() {
    let mx = MorphTx::default();
    let mut fired = BTreeSet::new();
    for case in morph_cases() {
        let out = run_morph_case(&mx, &case);
        if out.joined() == case.expected {
            fired.extend(out.fired);
        }
    }
    let missing: Vec<usize> = mx
        .rules()
        .rules()
        .iter()
        .filter(|r| !fired.contains(&r.id))
        .map(|r| r.line)
        .collect();
    assert!(
        missing.is_empty(),
        "morpheme rules on lines {missing:?} never fired"
    );
}
