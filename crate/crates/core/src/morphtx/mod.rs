//! Morphology-aware transliteration.
//!
//! Each token arrives with an external analysis: a diacritized form split into
//! tagged morphemes. Affixes are mapped by [`MorphRuleSet`]; whatever no rule
//! claims (normally the stem) goes through the character engine with its
//! diacritics. Sentence output is then passed through the Maltese
//! orthographic conventions in [`orthography`].

pub mod orthography;
pub mod rules;
pub mod sidecar;

use crate::chartx::{CharTx, MatchContext};
use crate::script::{self, ArabicToken, TokenKind};

pub use orthography::{apply_maltese_orthography, OrthographyConfig, Piece};
pub use rules::{MorphRuleSet, MorphemeRule};
pub use sidecar::{
    load_analyses, AnalysisSet, MorphAnalysis, Morpheme, MorphemePosition, RecordError,
    SentenceAnalyses,
};

/// Output of one analyzed token before orthography.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenOutput {
    /// Words of the token; detached morphemes start a new word.
    pub words: Vec<String>,
    /// Ids of the morpheme rules that fired.
    pub fired: Vec<usize>,
    pub unmapped: Vec<char>,
}

impl TokenOutput {
    pub fn joined(&self) -> String {
        self.words.join(" ")
    }
}

/// How a sentence was processed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SentenceMode {
    /// Analyses were applied.
    Morph,
    /// No analysis record for the sentence.
    NoAnalysis,
    /// The record and the tokenizer disagree on the number of tokens.
    Misaligned { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceOutput {
    pub text: String,
    pub mode: SentenceMode,
    /// Word tokens that had no analysis and fell back to character mapping.
    pub missing: usize,
    pub unmapped: Vec<char>,
}

fn capitalize_first_alpha(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut done = false;
    for c in s.chars() {
        if !done && c.is_alphabetic() {
            out.extend(c.to_uppercase());
            done = true;
        } else {
            out.push(c);
        }
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct MorphTx {
    chartx: CharTx,
    rules: MorphRuleSet,
    orthography: OrthographyConfig,
}

impl Default for MorphRuleSet {
    fn default() -> Self {
        MorphRuleSet::builtin()
    }
}

impl MorphTx {
    pub fn new(chartx: CharTx, rules: MorphRuleSet, orthography: OrthographyConfig) -> Self {
        MorphTx {
            chartx,
            rules,
            orthography,
        }
    }

    pub fn chartx(&self) -> &CharTx {
        &self.chartx
    }

    pub fn rules(&self) -> &MorphRuleSet {
        &self.rules
    }

    pub fn orthography(&self) -> &OrthographyConfig {
        &self.orthography
    }

    /// Maps one analyzed token, without orthography.
    pub fn token(&self, analysis: &MorphAnalysis) -> TokenOutput {
        let mut out = TokenOutput::default();
        let mut buf = String::new();
        let last = analysis.morphemes.len().saturating_sub(1);
        let proper = analysis.is_proper_noun
            || analysis
                .morphemes
                .iter()
                .any(|m| m.tag.starts_with("NOUN_PROP"));
        let mut capitalized = false;

        for (i, m) in analysis.morphemes.iter().enumerate() {
            if let Some(rule) = self.rules.find(m, analysis.construct_state) {
                out.fired.push(rule.id);
                buf.push_str(&rule.target);
                if rule.detach {
                    buf.push(' ');
                }
                continue;
            }
            let ctx = MatchContext {
                bos: i == 0,
                eos: i == last,
            };
            let mapped = self.chartx.map_span(&m.surface, ctx);
            out.unmapped.extend(mapped.unmapped);
            let stem_like = m.position == MorphemePosition::Stem || m.tag.starts_with("NOUN_PROP");
            if proper && stem_like && !capitalized {
                buf.push_str(&capitalize_first_alpha(&mapped.text));
                capitalized = true;
            } else {
                buf.push_str(&mapped.text);
            }
        }
        out.words = buf.split_whitespace().map(str::to_string).collect();
        out
    }

    /// Morpheme mapping for a single token, words joined by spaces.
    pub fn morphtx_token(&self, analysis: &MorphAnalysis) -> String {
        self.token(analysis).joined()
    }

    /// A token on its own, with orthography applied inside it and its words
    /// joined without spaces, so the result is still exactly one token. Used
    /// where tokens must stay one-to-one with their source (labeled corpora).
    pub fn standalone_token(
        &self,
        token: &ArabicToken,
        analysis: Option<&MorphAnalysis>,
    ) -> String {
        match analysis {
            None => self.chartx.chartx_word(token),
            Some(a) => {
                let pieces: Vec<Piece> = self
                    .token(a)
                    .words
                    .into_iter()
                    .enumerate()
                    .map(|(i, w)| Piece::new(w, i > 0))
                    .collect();
                orthography::apply(&pieces, &self.orthography)
                    .into_iter()
                    .map(|p| p.text)
                    .collect()
            }
        }
    }

    fn fallback(&self, tokens: &[ArabicToken], mode: SentenceMode) -> SentenceOutput {
        let mut unmapped = Vec::new();
        let pieces: Vec<(String, bool)> = tokens
            .iter()
            .map(|t| {
                let w = self.chartx.word(t);
                unmapped.extend(w.unmapped);
                (w.text, t.preceded_by_space)
            })
            .collect();
        SentenceOutput {
            text: script::detokenize(pieces),
            mode,
            missing: 0,
            unmapped,
        }
    }

    /// Maps a tokenized sentence. Without a usable analysis record the
    /// result is exactly the character-level output.
    pub fn sentence(
        &self,
        tokens: &[ArabicToken],
        analyses: Option<&SentenceAnalyses>,
    ) -> SentenceOutput {
        let Some(analyses) = analyses else {
            return self.fallback(tokens, SentenceMode::NoAnalysis);
        };
        if analyses.tokens.len() != tokens.len() {
            return self.fallback(
                tokens,
                SentenceMode::Misaligned {
                    expected: tokens.len(),
                    found: analyses.tokens.len(),
                },
            );
        }

        let mut pieces = Vec::new();
        let mut missing = 0;
        let mut unmapped = Vec::new();
        for (tok, analysis) in tokens.iter().zip(&analyses.tokens) {
            match analysis {
                Some(a) => {
                    let out = self.token(a);
                    unmapped.extend(out.unmapped);
                    for (i, w) in out.words.into_iter().enumerate() {
                        pieces.push(Piece::new(
                            w,
                            if i == 0 { tok.preceded_by_space } else { true },
                        ));
                    }
                }
                None => {
                    if tok.kind != TokenKind::Punctuation {
                        missing += 1;
                    }
                    let w = self.chartx.word(tok);
                    unmapped.extend(w.unmapped);
                    pieces.push(Piece::new(w.text, tok.preceded_by_space));
                }
            }
        }
        let pieces = orthography::apply(&pieces, &self.orthography);
        SentenceOutput {
            text: script::detokenize(pieces.into_iter().map(|p| (p.text, p.space_before))),
            mode: SentenceMode::Morph,
            missing,
            unmapped,
        }
    }

    /// normalize, tokenize, map with the sentence's analyses, orthography,
    /// detokenize.
    pub fn text(&self, text: &str, analyses: Option<&SentenceAnalyses>) -> SentenceOutput {
        let tokens = script::tokenize(&script::normalize(text));
        self.sentence(&tokens, analyses)
    }

    pub fn morphtx_text(&self, text: &str, analyses: Option<&SentenceAnalyses>) -> String {
        self.text(text, analyses).text
    }
}
