//! Scheme selection and sentence-level batch processing.

use std::fmt;
use std::str::FromStr;

use crate::chartx::CharTx;
use crate::morphtx::{AnalysisSet, MorphAnalysis, MorphTx, SentenceAnalyses, SentenceMode};
use crate::parallel;
use crate::script::{self, ArabicToken};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Buckwalter,
    BuckwalterLc,
    CharTx,
    MorphTx,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [
        Scheme::Buckwalter,
        Scheme::BuckwalterLc,
        Scheme::CharTx,
        Scheme::MorphTx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Buckwalter => "buckwalter",
            Scheme::BuckwalterLc => "buckwalter-lc",
            Scheme::CharTx => "chartx",
            Scheme::MorphTx => "morphtx",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| format!("unknown scheme {s:?}"))
    }
}

/// Per-line notes for the diagnostics stream.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LineDiagnostics {
    pub unmapped: Vec<char>,
    /// Tokens that fell back to character mapping inside an analyzed sentence.
    pub missing_analyses: usize,
    /// Set when a sentence that should have been analyzed fell back entirely.
    pub fallback: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineOutput {
    pub text: String,
    pub diagnostics: LineDiagnostics,
}

/// All schemes behind one handle.
#[derive(Debug, Clone, Default)]
pub struct Transliterator {
    morph: MorphTx,
}

impl Transliterator {
    pub fn new(morph: MorphTx) -> Self {
        Transliterator { morph }
    }

    pub fn chartx(&self) -> &CharTx {
        self.morph.chartx()
    }

    pub fn morphtx(&self) -> &MorphTx {
        &self.morph
    }

    /// Transliterates one sentence.
    pub fn sentence(
        &self,
        text: &str,
        scheme: Scheme,
        analyses: Option<&SentenceAnalyses>,
    ) -> LineOutput {
        match scheme {
            Scheme::Buckwalter | Scheme::BuckwalterLc => {
                let norm = script::normalize(text);
                LineOutput {
                    text: script::to_buckwalter(norm.trim(), scheme == Scheme::BuckwalterLc),
                    diagnostics: LineDiagnostics::default(),
                }
            }
            Scheme::CharTx => {
                let out = self.chartx().text(text);
                LineOutput {
                    text: out.text,
                    diagnostics: LineDiagnostics {
                        unmapped: out.unmapped,
                        ..Default::default()
                    },
                }
            }
            Scheme::MorphTx => {
                let out = self.morph.text(text, analyses);
                let fallback = match out.mode {
                    SentenceMode::Morph | SentenceMode::NoAnalysis => None,
                    SentenceMode::Misaligned { expected, found } => Some(format!(
                        "token count mismatch: tokenizer {expected}, analyses {found}"
                    )),
                };
                LineOutput {
                    text: out.text,
                    diagnostics: LineDiagnostics {
                        unmapped: out.unmapped,
                        missing_analyses: out.missing,
                        fallback,
                    },
                }
            }
        }
    }

    /// Transliterates one token in isolation (no cross-token rules).
    pub fn token(&self, token: &str, scheme: Scheme, analysis: Option<&MorphAnalysis>) -> String {
        let norm = script::normalize(token);
        let tok = ArabicToken::new(norm.as_str(), true);
        match scheme {
            Scheme::Buckwalter => script::to_buckwalter(&norm, false),
            Scheme::BuckwalterLc => script::to_buckwalter(&norm, true),
            Scheme::CharTx => self.chartx().chartx_word(&tok),
            Scheme::MorphTx => self.morph.standalone_token(&tok, analysis),
        }
    }

    /// Transliterates sentence-per-line input. Line `i` uses the analysis
    /// record with `sentence_id == i`. Output order equals input order.
    pub fn lines<S: AsRef<str> + Sync>(
        &self,
        lines: &[S],
        scheme: Scheme,
        analyses: Option<&AnalysisSet>,
    ) -> Vec<LineOutput> {
        let indexed: Vec<(usize, &str)> = lines.iter().map(|l| l.as_ref()).enumerate().collect();
        parallel::map_ordered(&indexed, |&(i, line)| self.line(i, line, scheme, analyses))
    }

    /// Same as [`Transliterator::lines`] on the calling thread only.
    pub fn lines_sequential<S: AsRef<str>>(
        &self,
        lines: &[S],
        scheme: Scheme,
        analyses: Option<&AnalysisSet>,
    ) -> Vec<LineOutput> {
        lines
            .iter()
            .enumerate()
            .map(|(i, l)| self.line(i, l.as_ref(), scheme, analyses))
            .collect()
    }

    fn line(
        &self,
        i: usize,
        line: &str,
        scheme: Scheme,
        analyses: Option<&AnalysisSet>,
    ) -> LineOutput {
        let id = i as u64;
        let record = analyses.and_then(|a| a.get(id));
        let mut out = self.sentence(line, scheme, record);
        if scheme == Scheme::MorphTx && record.is_none() {
            if let Some(err) = analyses.and_then(|a| a.rejected(id)) {
                out.diagnostics.fallback = Some(format!("record rejected: {}", err.message));
            }
        }
        out
    }
}
