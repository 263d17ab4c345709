//! Helpers shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use std::path::PathBuf;

use ar2mt::chartx::{CharTx, MatchContext};
use ar2mt::morphtx::{sidecar, MorphAnalysis, MorphTx, Morpheme, TokenOutput};
use ar2mt::script::{from_buckwalter, normalize};

pub fn core_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core")
}

pub fn data_path(name: &str) -> PathBuf {
    core_dir().join("tests/data").join(name)
}

pub fn fixture_path(name: &str) -> PathBuf {
    core_dir().join("fixtures").join(name)
}

fn rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.split('\t').collect())
}

#[derive(Debug, Clone)]
pub struct CharCase {
    pub input: String,
    pub expected: String,
}

pub fn char_cases() -> Vec<CharCase> {
    let text = std::fs::read_to_string(data_path("chartx_cases.tsv")).expect("chartx cases");
    rows(&text)
        .map(|r| CharCase {
            input: normalize(&from_buckwalter(r[0])),
            expected: r[1].to_string(),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct MorphCase {
    pub spec: String,
    pub analysis: MorphAnalysis,
    pub expected: String,
}

pub fn analysis_from(parts: &[(String, String)], proper: bool, construct: bool) -> MorphAnalysis {
    let tags: Vec<&str> = parts.iter().map(|p| p.1.as_str()).collect();
    let morphemes: Vec<Morpheme> = parts
        .iter()
        .zip(sidecar::assign_positions(&tags))
        .map(|((surface, tag), position)| Morpheme {
            surface: normalize(&from_buckwalter(surface)),
            tag: tag.clone(),
            position,
        })
        .collect();
    MorphAnalysis {
        token_index: 0,
        diacritized: morphemes.iter().map(|m| m.surface.as_str()).collect(),
        morphemes,
        is_proper_noun: proper,
        construct_state: construct,
    }
}

pub fn morph_cases() -> Vec<MorphCase> {
    let text = std::fs::read_to_string(data_path("morph_cases.tsv")).expect("morph cases");
    rows(&text)
        .map(|r| {
            let parts: Vec<(String, String)> = r[0]
                .split(' ')
                .map(|p| {
                    let (s, t) = p.split_once('/').expect("surface/TAG");
                    (s.to_string(), t.to_string())
                })
                .collect();
            MorphCase {
                spec: r[0].to_string(),
                analysis: analysis_from(&parts, r[1] == "proper", r[1] == "construct"),
                expected: r[2].to_string(),
            }
        })
        .collect()
}

pub fn run_char_case(tx: &CharTx, case: &CharCase) -> ar2mt::chartx::WordOutput {
    tx.map_span(&case.input, MatchContext::default())
}

pub fn run_morph_case(mx: &MorphTx, case: &MorphCase) -> TokenOutput {
    mx.token(&case.analysis)
}

/// Orthographic problems in a Maltese output string: an unassimilated
/// article before a sun letter, Arabic codepoints, or letters that no rule
/// produces (ċ, p, v, z, and g outside għ).
pub fn orthography_violations(text: &str) -> Vec<String> {
    use ar2mt::morphtx::orthography::is_sun_letter;
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    for (i, &c) in chars.iter().enumerate() {
        let lc = c.to_lowercase().next().unwrap_or(c);
        if ar2mt::script::is_arabic_block(c) {
            out.push(format!("Arabic codepoint {c:?} at {i}"));
        }
        if matches!(lc, 'ċ' | 'p' | 'v' | 'z') {
            out.push(format!("letter {c:?} at {i}"));
        }
        if lc == 'g' && chars.get(i + 1).map(|n| n.to_lowercase().next()) != Some(Some('ħ')) {
            out.push(format!("bare g at {i}"));
        }
        let article = c == 'i'
            && chars.get(i + 1) == Some(&'l')
            && chars.get(i + 2) == Some(&'-')
            && chars.get(i + 3).is_some_and(|&s| is_sun_letter(s));
        if article {
            out.push(format!("unassimilated article at {i}"));
        }
    }
    out
}
