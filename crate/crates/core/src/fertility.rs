//! Subword fertility: how many vocabulary pieces a tokenizer needs per
//! whitespace token.

use std::collections::HashSet;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::parallel;

pub const DEFAULT_MARKER: &str = "##";
pub const DEFAULT_UNKNOWN: &str = "[UNK]";

/// Word-initial entries are stored as-is, continuation entries with the
/// marker prefix, so the two never collide.
#[derive(Debug, Clone)]
pub struct SubwordVocab {
    entries: HashSet<String>,
    marker: String,
    unknown_piece: String,
    max_piece_chars: usize,
}

impl SubwordVocab {
    pub fn new<I, S>(
        entries: I,
        marker: impl Into<String>,
        unknown_piece: impl Into<String>,
    ) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let marker = marker.into();
        let entries: HashSet<String> = entries.into_iter().map(Into::into).collect();
        let max_piece_chars = entries
            .iter()
            .map(|e| {
                let body = if marker.is_empty() {
                    e.as_str()
                } else {
                    e.strip_prefix(marker.as_str()).unwrap_or(e)
                };
                body.chars().count()
            })
            .max()
            .unwrap_or(0);
        SubwordVocab {
            entries,
            marker,
            unknown_piece: unknown_piece.into(),
            max_piece_chars,
        }
    }

    /// One entry per line; blank lines are ignored.
    pub fn from_reader<R: BufRead>(reader: R, marker: &str, unknown_piece: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let entry = line.trim_end_matches(['\r', '\n']);
            if !entry.trim().is_empty() {
                entries.push(entry.to_string());
            }
        }
        if entries.is_empty() {
            return Err(Error::Vocab("vocabulary is empty".into()));
        }
        Ok(SubwordVocab::new(entries, marker, unknown_piece))
    }

    pub fn marker(&self) -> &str {
        &self.marker
    }

    pub fn unknown_piece(&self) -> &str {
        &self.unknown_piece
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, entry: &str) -> bool {
        self.entries.contains(entry)
    }

    pub fn insert(&mut self, entry: impl Into<String>) {
        let entry = entry.into();
        let body = entry.strip_prefix(self.marker.as_str()).unwrap_or(&entry);
        self.max_piece_chars = self.max_piece_chars.max(body.chars().count());
        self.entries.insert(entry);
    }
}

/// Greedy longest-match segmentation. The first piece is matched bare, later
/// pieces with the continuation marker. If any position has no match the whole
/// token becomes the unknown piece.
pub fn subword_tokenize(token: &str, vocab: &SubwordVocab) -> Vec<String> {
    let chars: Vec<char> = token.chars().collect();
    let mut pieces = Vec::new();
    let mut start = 0;
    let mut candidate = String::new();
    while start < chars.len() {
        let mut end = chars.len().min(start + vocab.max_piece_chars);
        let mut found = None;
        while end > start {
            candidate.clear();
            if start > 0 {
                candidate.push_str(&vocab.marker);
            }
            candidate.extend(&chars[start..end]);
            if vocab.contains(&candidate) {
                found = Some(candidate.clone());
                break;
            }
            end -= 1;
        }
        match found {
            Some(piece) => {
                pieces.push(piece);
                start = end;
            }
            None => return vec![vocab.unknown_piece.clone()],
        }
    }
    if pieces.is_empty() {
        // empty token
        return vec![vocab.unknown_piece.clone()];
    }
    pieces
}

/// How an unknown token contributes to the piece count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnknownCounting {
    /// One piece, the unknown symbol.
    #[default]
    OnePiece,
    /// One piece per character.
    Characters,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FertilityReport {
    pub token_count: u64,
    pub subword_count: u64,
    pub unknown_count: u64,
    pub fertility: f64,
    pub unknown_rate: f64,
}

fn piece_count(token: &str, vocab: &SubwordVocab, counting: UnknownCounting) -> (u64, u64) {
    let pieces = subword_tokenize(token, vocab);
    let unknown = pieces.len() == 1 && pieces[0] == vocab.unknown_piece && !vocab.contains(token);
    match (unknown, counting) {
        (true, UnknownCounting::Characters) => (token.chars().count().max(1) as u64, 1),
        (true, UnknownCounting::OnePiece) => (1, 1),
        (false, _) => (pieces.len() as u64, 0),
    }
}

/// Average pieces per token over `tokens`.
pub fn fertility<S: AsRef<str> + Sync>(
    tokens: &[S],
    vocab: &SubwordVocab,
    counting: UnknownCounting,
) -> Result<FertilityReport> {
    if tokens.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let (pieces, unknown) = parallel::sum_by(tokens, |t| piece_count(t.as_ref(), vocab, counting));
    let n = tokens.len() as u64;
    Ok(FertilityReport {
        token_count: n,
        subword_count: pieces,
        unknown_count: unknown,
        fertility: pieces as f64 / n as f64,
        unknown_rate: unknown as f64 / n as f64,
    })
}

/// Whitespace tokens of a text.
pub fn whitespace_tokens(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

/// One TSV row: scheme, tokens, pieces, fertility, unknown_rate.
pub fn report_row(label: &str, r: &FertilityReport) -> String {
    format!(
        "{label}\t{}\t{}\t{:.6}\t{:.6}",
        r.token_count, r.subword_count, r.fertility, r.unknown_rate
    )
}

pub const REPORT_HEADER: &str = "scheme\ttokens\tpieces\tfertility\tunknown_rate";

#[cfg(test)]
mod tests {
    use super::*;

    fn vocab(entries: &[&str]) -> SubwordVocab {
        SubwordVocab::new(entries.iter().copied(), DEFAULT_MARKER, DEFAULT_UNKNOWN)
    }

    #[test]
    fn examples() {
        let v = vocab(&["fit", "##-", "##triq", "triq"]);
        assert_eq!(subword_tokenize("triq", &v), ["triq"]);
        assert_eq!(subword_tokenize("fit-triq", &v), ["fit", "##-", "##triq"]);
        assert_eq!(subword_tokenize("xyz", &v), ["[UNK]"]);
        // a dead end after a valid prefix is also unknown
        assert_eq!(subword_tokenize("fitx", &v), ["[UNK]"]);
    }

    #[test]
    fn longest_match_wins() {
        let v = vocab(&["a", "ab", "##c", "##bc"]);
        assert_eq!(subword_tokenize("abc", &v), ["ab", "##c"]);
    }

    #[test]
    fn ratios() {
        let v = vocab(&["a", "b"]);
        let r = fertility(&["a", "b"], &v, UnknownCounting::OnePiece).unwrap();
        assert_eq!(r.fertility, 1.0);
        let v = vocab(&["a", "##a"]);
        // 3 pieces + 5 pieces
        let r = fertility(
            &["aaa", "aaaaa"],
            &vocab(&["a", "##a"]),
            UnknownCounting::OnePiece,
        )
        .unwrap();
        assert_eq!((r.subword_count, r.fertility), (8, 4.0));
        assert!(matches!(
            fertility::<&str>(&[], &v, UnknownCounting::OnePiece),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn unknown_counting_modes() {
        let v = vocab(&["a"]);
        let one = fertility(&["a", "xyz"], &v, UnknownCounting::OnePiece).unwrap();
        assert_eq!((one.subword_count, one.unknown_rate), (2, 0.5));
        let chars = fertility(&["a", "xyz"], &v, UnknownCounting::Characters).unwrap();
        assert_eq!(chars.subword_count, 4);
    }

    #[test]
    fn vocab_file() {
        let v =
            SubwordVocab::from_reader("fit\n##-\n\n##triq\n".as_bytes(), "##", "[UNK]").unwrap();
        assert_eq!(v.len(), 3);
        assert!(SubwordVocab::from_reader("\n".as_bytes(), "##", "[UNK]").is_err());
    }
}
