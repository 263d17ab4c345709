//! Seeded generators of analyzed sentences.

use ar2mt::morphtx::{MorphAnalysis, SentenceAnalyses};
use ar2mt::script::{from_buckwalter, strip_diacritics};
use rand::seq::SliceRandom;
use rand::Rng;

use super::analysis_from;

pub const LETTERS: &[&str] = &[
    "'", "|", ">", "&", "<", "}", "A", "b", "p", "t", "v", "j", "H", "x", "d", "*", "r", "z", "s",
    "$", "S", "D", "T", "Z", "E", "g", "f", "q", "k", "l", "m", "n", "h", "w", "Y", "y", "{",
];
pub const MARKS: &[&str] = &["a", "u", "i", "o", "F", "N", "K", "~a", "~i", "~u", "`"];

const PROCLITICS: &[(&str, &str)] = &[
    ("wa", "CONJ"),
    ("bi", "PREP"),
    ("li", "PREP"),
    ("sa", "FUT_PART"),
];
const SUFFIXES: &[(&str, &str)] = &[
    ("ap", "NSUFF_FEM_SG"),
    ("At", "NSUFF_FEM_PL"),
    ("uwna", "NSUFF_MASC_PL_NOM"),
    ("Ani", "NSUFF_MASC_DU_NOM"),
    ("atAni", "NSUFF_FEM_DU_NOM"),
    ("u", "CASE_DEF_NOM"),
    ("i", "CASE_INDEF_GEN"),
    ("at", "PVSUFF_SUBJ:3FS"),
    ("tu", "PVSUFF_SUBJ:1S"),
    ("woA", "PVSUFF_SUBJ:3MP"),
    ("nA", "PVSUFF_SUBJ:1P"),
];
const ENCLITICS: &[(&str, &str)] = &[
    ("hA", "POSS_PRON_3FS"),
    ("hu", "PRON_3MS"),
    ("kum", "POSS_PRON_2MP"),
    ("niy", "PRON_1S"),
    ("ka", "POSS_PRON_2MS"),
];
const PARTICLES: &[(&str, &str)] = &[
    ("fiy", "PREP"),
    ("EalaY", "PREP"),
    ("min", "PREP"),
    ("maE", "NOUN"),
];

/// A random diacritized stem in Buckwalter.
pub fn stem<R: Rng>(rng: &mut R) -> String {
    let n = rng.gen_range(1..=5);
    let mut s = String::new();
    for _ in 0..n {
        s.push_str(LETTERS.choose(rng).unwrap());
        if rng.gen_bool(0.6) {
            s.push_str(MARKS.choose(rng).unwrap());
        }
    }
    s
}

pub fn analyzed_word<R: Rng>(rng: &mut R) -> MorphAnalysis {
    let mut parts: Vec<(String, String)> = Vec::new();
    let owned = |(s, t): &(&str, &str)| (s.to_string(), t.to_string());
    if rng.gen_bool(0.15) {
        parts.push(owned(PARTICLES.choose(rng).unwrap()));
    } else {
        if rng.gen_bool(0.3) {
            parts.push(owned(PROCLITICS.choose(rng).unwrap()));
        }
        if rng.gen_bool(0.4) {
            parts.push(("Al".into(), "DET".into()));
        }
        let tag = if rng.gen_bool(0.1) {
            "NOUN_PROP"
        } else {
            "NOUN"
        };
        parts.push((stem(rng), tag.into()));
        if rng.gen_bool(0.5) {
            parts.push(owned(SUFFIXES.choose(rng).unwrap()));
        }
        if rng.gen_bool(0.2) {
            parts.push(owned(ENCLITICS.choose(rng).unwrap()));
        }
    }
    let proper = parts.iter().any(|p| p.1 == "NOUN_PROP");
    analysis_from(&parts, proper, rng.gen_bool(0.1))
}

/// A sentence of analyzed words and punctuation, as raw text plus its
/// analysis record.
pub fn sentence<R: Rng>(rng: &mut R, sentence_id: u64) -> (String, SentenceAnalyses) {
    let n = rng.gen_range(1..=8);
    let mut text = String::new();
    let mut tokens = Vec::new();
    for i in 0..n {
        if i > 0 && rng.gen_bool(0.1) {
            text.push_str(["،", ".", "؟"].choose(rng).unwrap());
            tokens.push(None);
            continue;
        }
        if !text.is_empty() {
            text.push(' ');
        }
        if rng.gen_bool(0.1) {
            // an unanalyzed word
            text.push_str(&from_buckwalter(&stem(rng)));
            tokens.push(None);
            continue;
        }
        let mut a = analyzed_word(rng);
        a.token_index = tokens.len();
        text.push_str(&strip_diacritics(&a.diacritized));
        tokens.push(Some(a));
    }
    (
        text,
        SentenceAnalyses {
            sentence_id,
            tokens,
            provenance: None,
        },
    )
}
