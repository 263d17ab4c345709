//! Reader for the morphological analysis sidecar.
//!
//! The sidecar is UTF-8 JSON Lines, one record per sentence:
//!
//! ```text
//! {"sentence_id":0,"tokens":[{"diacritized":"فِي","morphemes":[{"surface":"فِي","tag":"PREP"}],"proper_noun":false,"construct":false}, ...]}
//! ```
//!
//! A token entry may be `null` when the analyzer produced nothing for it. An
//! optional first line `{"format":"ar2mt-analyses","version":1}` identifies
//! the file; if present it must be well formed.

use std::collections::BTreeMap;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::script;

pub const FORMAT_NAME: &str = "ar2mt-analyses";
pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidecarMorpheme {
    pub surface: String,
    pub tag: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidecarToken {
    pub diacritized: String,
    pub morphemes: Vec<SidecarMorpheme>,
    #[serde(default)]
    pub proper_noun: bool,
    #[serde(default)]
    pub construct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidecarRecord {
    pub sentence_id: u64,
    pub tokens: Vec<Option<SidecarToken>>,
    /// Which analyzer model produced the record. Kept, never interpreted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorphemePosition {
    Proclitic,
    Prefix,
    Stem,
    Suffix,
    Enclitic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morpheme {
    /// Normalized, diacritized Arabic.
    pub surface: String,
    pub tag: String,
    pub position: MorphemePosition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphAnalysis {
    pub token_index: usize,
    pub diacritized: String,
    pub morphemes: Vec<Morpheme>,
    pub is_proper_noun: bool,
    pub construct_state: bool,
}

/// Analyses of one sentence, aligned to its tokens. `None` marks a token with
/// no analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceAnalyses {
    pub sentence_id: u64,
    pub tokens: Vec<Option<MorphAnalysis>>,
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordError {
    /// 1-based line in the sidecar.
    pub line: usize,
    pub sentence_id: Option<u64>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalysisSet {
    pub sentences: BTreeMap<u64, SentenceAnalyses>,
    pub errors: Vec<RecordError>,
}

impl AnalysisSet {
    pub fn get(&self, sentence_id: u64) -> Option<&SentenceAnalyses> {
        self.sentences.get(&sentence_id)
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// The record for `sentence_id` failed to parse or validate.
    pub fn rejected(&self, sentence_id: u64) -> Option<&RecordError> {
        self.errors
            .iter()
            .find(|e| e.sentence_id == Some(sentence_id))
    }
}

fn is_affix_before_stem(tag: &str) -> Option<MorphemePosition> {
    const PROCLITICS: &[&str] = &[
        "CONJ",
        "DET",
        "PREP",
        "FUT_PART",
        "PART",
        "NEG_PART",
        "INTERROG_PART",
        "EMPHATIC_PART",
        "SUB_CONJ",
        "RESULT_CLAUSE_PARTICLE",
        "VOC_PART",
    ];
    if PROCLITICS.contains(&tag) {
        return Some(MorphemePosition::Proclitic);
    }
    // IV3MS, CV2MS, ... (stem tags are the bare IV / CV)
    let bytes = tag.as_bytes();
    if (tag.starts_with("IV") || tag.starts_with("CV"))
        && bytes.len() > 2
        && bytes[2].is_ascii_digit()
    {
        return Some(MorphemePosition::Prefix);
    }
    None
}

fn after_stem_position(tag: &str) -> Option<MorphemePosition> {
    if tag.contains("SUFF") || tag.starts_with("CASE_") {
        Some(MorphemePosition::Suffix)
    } else if tag.starts_with("PRON_") || tag.starts_with("POSS_PRON_") || tag.starts_with("DO_") {
        Some(MorphemePosition::Enclitic)
    } else {
        None
    }
}

/// Assigns positions from tags: the first morpheme that is not a
/// proclitic/prefix is the stem, everything after it is suffix, enclitic or a
/// further stem.
pub fn assign_positions(tags: &[&str]) -> Vec<MorphemePosition> {
    let mut seen_stem = false;
    tags.iter()
        .map(|tag| {
            if !seen_stem {
                if let Some(p) = is_affix_before_stem(tag) {
                    return p;
                }
                seen_stem = true;
                MorphemePosition::Stem
            } else {
                after_stem_position(tag).unwrap_or(MorphemePosition::Stem)
            }
        })
        .collect()
}

fn convert_token(
    token_index: usize,
    t: SidecarToken,
) -> std::result::Result<MorphAnalysis, String> {
    if t.morphemes.is_empty() {
        return Err(format!("token {token_index}: empty morpheme list"));
    }
    let diacritized = script::normalize(&t.diacritized);
    let joined: String = t
        .morphemes
        .iter()
        .map(|m| script::normalize(&m.surface))
        .collect();
    if script::strip_diacritics(&joined) != script::strip_diacritics(&diacritized) {
        return Err(format!(
            "token {token_index}: morpheme surfaces {joined:?} do not reconstruct {diacritized:?}"
        ));
    }
    let tags: Vec<&str> = t.morphemes.iter().map(|m| m.tag.as_str()).collect();
    let positions = assign_positions(&tags);
    let morphemes = t
        .morphemes
        .iter()
        .zip(positions)
        .map(|(m, position)| Morpheme {
            surface: script::normalize(&m.surface),
            tag: m.tag.clone(),
            position,
        })
        .collect();
    Ok(MorphAnalysis {
        token_index,
        diacritized,
        morphemes,
        is_proper_noun: t.proper_noun,
        construct_state: t.construct,
    })
}

/// Validates one parsed record.
pub fn convert_record(rec: SidecarRecord) -> std::result::Result<SentenceAnalyses, String> {
    let tokens = rec
        .tokens
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.map(|t| convert_token(i, t)).transpose())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(SentenceAnalyses {
        sentence_id: rec.sentence_id,
        tokens,
        provenance: rec.provenance,
    })
}

#[derive(Deserialize)]
struct Header {
    format: String,
    version: u64,
}

/// Reads a sidecar stream. Malformed records are collected in
/// [`AnalysisSet::errors`]; only I/O failures and a bad header are fatal.
pub fn load_analyses<R: BufRead>(reader: R) -> Result<AnalysisSet> {
    let mut set = AnalysisSet::default();
    let mut first = true;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim().trim_start_matches('\u{FEFF}');
        if trimmed.is_empty() {
            continue;
        }
        let value: serde_json::Value = match serde_json::from_str(trimmed) {
            Ok(v) => v,
            Err(e) => {
                if first && trimmed.contains("\"format\"") {
                    return Err(Error::SidecarHeader(format!("line {line_no}: {e}")));
                }
                first = false;
                set.errors.push(RecordError {
                    line: line_no,
                    sentence_id: None,
                    message: format!("invalid JSON: {e}"),
                });
                continue;
            }
        };
        if first && value.get("format").is_some() {
            first = false;
            let header: Header = serde_json::from_value(value)
                .map_err(|e| Error::SidecarHeader(format!("line {line_no}: {e}")))?;
            if header.format != FORMAT_NAME {
                return Err(Error::SidecarHeader(format!(
                    "unknown format {:?}, expected {FORMAT_NAME:?}",
                    header.format
                )));
            }
            if header.version != FORMAT_VERSION {
                return Err(Error::SidecarHeader(format!(
                    "unsupported version {}, expected {FORMAT_VERSION}",
                    header.version
                )));
            }
            continue;
        }
        first = false;
        let sentence_id = value.get("sentence_id").and_then(|v| v.as_u64());
        let record: SidecarRecord = match serde_json::from_value(value) {
            Ok(r) => r,
            Err(e) => {
                set.errors.push(RecordError {
                    line: line_no,
                    sentence_id,
                    message: format!("malformed record: {e}"),
                });
                continue;
            }
        };
        let id = record.sentence_id;
        if set.sentences.contains_key(&id) {
            set.errors.push(RecordError {
                line: line_no,
                sentence_id: Some(id),
                message: format!("duplicate sentence_id {id}"),
            });
            continue;
        }
        match convert_record(record) {
            Ok(s) => {
                set.sentences.insert(id, s);
            }
            Err(message) => set.errors.push(RecordError {
                line: line_no,
                sentence_id: Some(id),
                message,
            }),
        }
    }
    Ok(set)
}
