//! Character-level Arabic to Maltese mapping.
//!
//! Rules are grouped into precedence classes. Matching is greedy over the
//! whole word: the rule with the lowest class fires first, then longer sources
//! before shorter ones, then leftmost positions. A rule may only consume
//! codepoints that no earlier application has consumed. Whatever is left over
//! passes through unchanged.

use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::script::{self, ArabicToken, TokenKind, SHADDA};

pub const DEFAULT_RULES: &str = include_str!("../rules/chartx.tsv");

/// Word-boundary requirement of a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Anchor {
    None,
    Bos,
    Eos,
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Anchor::None => "-",
            Anchor::Bos => "BOS",
            Anchor::Eos => "EOS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingRule {
    /// Position in the rule file, used for tracing and tie-breaking.
    pub id: usize,
    pub source: Vec<char>,
    pub anchor: Anchor,
    pub target: String,
    pub class: u8,
    pub group: String,
    /// 1-based line number in the rule file.
    pub line: usize,
}

impl MappingRule {
    pub fn source_buckwalter(&self) -> String {
        script::to_buckwalter(&self.source.iter().collect::<String>(), false)
    }

    /// True when the rule matches `word[pos..pos + len]` given the boundary
    /// context of the span.
    pub fn matches_at(&self, word: &[char], pos: usize, ctx: MatchContext) -> bool {
        let end = pos + self.source.len();
        if end > word.len() || word[pos..end] != self.source[..] {
            return false;
        }
        match self.anchor {
            Anchor::None => true,
            Anchor::Bos => pos == 0 && ctx.bos,
            Anchor::Eos => end == word.len() && ctx.eos,
        }
    }
}

/// Characters a rule target may contain.
fn target_char_allowed(c: char) -> bool {
    matches!(
        c,
        'a' | 'b'
            | 'd'
            | 'e'
            | 'f'
            | 'g'
            | 'ġ'
            | 'h'
            | 'ħ'
            | 'i'
            | 'j'
            | 'k'
            | 'l'
            | 'm'
            | 'n'
            | 'q'
            | 'r'
            | 's'
            | 't'
            | 'u'
            | 'w'
            | 'x'
            | 'ż'
            | '\''
            | '-'
    ) || c.is_ascii_digit()
        || c.is_ascii_punctuation()
}

/// `g` is only legal as the first half of `għ`.
pub fn has_bare_g(s: &str) -> bool {
    let chars: Vec<char> = s.chars().collect();
    chars
        .iter()
        .enumerate()
        .any(|(i, &c)| c == 'g' && chars.get(i + 1) != Some(&'ħ'))
}

/// Boundary context of the span being matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchContext {
    /// The span starts a word, so BOS rules may fire at its first position.
    pub bos: bool,
    /// The span ends a word.
    pub eos: bool,
}

impl Default for MatchContext {
    fn default() -> Self {
        MatchContext {
            bos: true,
            eos: true,
        }
    }
}

type Bucket = HashMap<Vec<char>, Vec<usize>>;

/// Ordered rule list with a (class, length) index for matching.
#[derive(Debug, Clone)]
pub struct RuleTable {
    rules: Vec<MappingRule>,
    version: String,
    checksum: String,
    // (class, source length) in firing order, each with its source lookup.
    passes: Vec<(u8, usize, Bucket)>,
}

impl RuleTable {
    /// Parses the tab-separated rule format.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut rules = Vec::new();
        let mut version = String::from("unversioned");
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim_end_matches('\r');
            if let Some(comment) = raw.strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("version:") {
                    version = v.trim().to_string();
                }
                continue;
            }
            if raw.trim().is_empty() {
                continue;
            }
            let bad = |msg: String| Error::RuleTable { line, message: msg };
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() < 4 {
                return Err(bad(format!(
                    "expected at least 4 tab-separated fields, got {}",
                    fields.len()
                )));
            }
            let source: Vec<char> = script::from_buckwalter(fields[0]).chars().collect();
            if source.is_empty() || source.len() > 3 {
                return Err(bad(format!(
                    "source must be 1-3 characters: {:?}",
                    fields[0]
                )));
            }
            let anchor = match fields[1] {
                "-" | "" => Anchor::None,
                "BOS" => Anchor::Bos,
                "EOS" => Anchor::Eos,
                other => return Err(bad(format!("unknown anchor {other:?}"))),
            };
            let target = match fields[2] {
                "∅" => String::new(),
                t => t.to_string(),
            };
            if let Some(c) = target.chars().find(|&c| !target_char_allowed(c)) {
                return Err(bad(format!("target {target:?} contains disallowed {c:?}")));
            }
            if has_bare_g(&target) {
                return Err(bad(format!("target {target:?} contains g outside għ")));
            }
            let class: u8 = fields[3]
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad class {:?}", fields[3])))?;
            let group = fields
                .get(4)
                .map(|g| g.trim().to_string())
                .unwrap_or_default();
            rules.push(MappingRule {
                id: rules.len(),
                source,
                anchor,
                target,
                class,
                group,
                line,
            });
        }

        let mut seen = HashMap::new();
        for r in &rules {
            if let Some(prev) = seen.insert((r.source.clone(), r.anchor), r.line) {
                return Err(Error::RuleTable {
                    line: r.line,
                    message: format!("duplicate source/anchor (first defined on line {prev})"),
                });
            }
        }

        let mut keys: Vec<(u8, usize)> = rules.iter().map(|r| (r.class, r.source.len())).collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        keys.dedup();
        let passes = keys
            .into_iter()
            .map(|(class, len)| {
                let mut bucket: Bucket = HashMap::new();
                for r in rules
                    .iter()
                    .filter(|r| r.class == class && r.source.len() == len)
                {
                    bucket.entry(r.source.clone()).or_default().push(r.id);
                }
                // anchored variants are tried before the unanchored one
                for ids in bucket.values_mut() {
                    ids.sort_by_key(|&id| (rules[id].anchor == Anchor::None, id));
                }
                (class, len, bucket)
            })
            .collect();

        Ok(RuleTable {
            rules,
            version,
            checksum: hex::encode(Sha256::digest(text.as_bytes())),
            passes,
        })
    }

    /// The rule file compiled into the library.
    pub fn builtin() -> Self {
        RuleTable::parse(DEFAULT_RULES).expect("built-in rule table is valid")
    }

    pub fn rules(&self) -> &[MappingRule] {
        &self.rules
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    /// SHA-256 of the rule file contents, hex encoded.
    pub fn checksum(&self) -> &str {
        &self.checksum
    }
}

/// One rule firing inside a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Application {
    pub pos: usize,
    pub len: usize,
    pub rule: usize,
}

/// Result of mapping one word, with the trace needed for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordOutput {
    pub text: String,
    /// Applications sorted by position.
    pub applications: Vec<Application>,
    /// Arabic-block codepoints that no rule consumed.
    pub unmapped: Vec<char>,
}

/// Moves a shadda that follows other marks to sit directly after its base
/// letter, where gemination rules expect it.
pub fn reorder_shadda(chars: &mut [char]) {
    let mut i = 0;
    while i < chars.len() {
        if script::is_arabic_mark(chars[i]) {
            i += 1;
            continue;
        }
        let start = i + 1;
        let mut end = start;
        while end < chars.len() && script::is_arabic_mark(chars[end]) {
            end += 1;
        }
        if let Some(off) = chars[start..end].iter().position(|&c| c == SHADDA) {
            chars[start..=start + off].rotate_right(1);
        }
        i = end.max(i + 1);
    }
}

/// The character mapping engine.
#[derive(Debug, Clone)]
pub struct CharTx {
    table: RuleTable,
}

impl Default for CharTx {
    fn default() -> Self {
        CharTx::new(RuleTable::builtin())
    }
}

impl CharTx {
    pub fn new(table: RuleTable) -> Self {
        CharTx { table }
    }

    pub fn table(&self) -> &RuleTable {
        &self.table
    }

    /// Maps an already-prepared codepoint sequence. No normalization or
    /// shadda reordering happens here.
    pub fn map_chars(&self, word: &[char], ctx: MatchContext) -> WordOutput {
        let n = word.len();
        let mut taken = vec![false; n];
        let mut apps = Vec::new();

        for (_, len, bucket) in &self.table.passes {
            let len = *len;
            if len > n {
                continue;
            }
            let mut pos = 0;
            while pos + len <= n {
                if taken[pos..pos + len].iter().any(|&t| t) {
                    pos += 1;
                    continue;
                }
                let hit = bucket.get(&word[pos..pos + len]).and_then(|ids| {
                    ids.iter()
                        .copied()
                        .find(|&id| self.table.rules[id].matches_at(word, pos, ctx))
                });
                match hit {
                    Some(rule) => {
                        taken[pos..pos + len].iter_mut().for_each(|t| *t = true);
                        apps.push(Application { pos, len, rule });
                        pos += len;
                    }
                    None => pos += 1,
                }
            }
        }

        apps.sort_by_key(|a| a.pos);
        let mut out = WordOutput {
            applications: apps,
            ..Default::default()
        };
        let mut next_app = out.applications.iter().peekable();
        let mut pos = 0;
        while pos < n {
            match next_app.peek() {
                Some(app) if app.pos == pos => {
                    out.text.push_str(&self.table.rules[app.rule].target);
                    pos += app.len;
                    next_app.next();
                }
                _ => {
                    let c = word[pos];
                    if script::is_arabic_block(c) {
                        out.unmapped.push(c);
                    }
                    out.text.push(c);
                    pos += 1;
                }
            }
        }
        out
    }

    /// Maps a normalized span (a word or a morpheme) with the given boundary
    /// context.
    pub fn map_span(&self, text: &str, ctx: MatchContext) -> WordOutput {
        let mut chars: Vec<char> = text.chars().collect();
        reorder_shadda(&mut chars);
        self.map_chars(&chars, ctx)
    }

    /// Maps one token. Foreign tokens pass through untouched.
    pub fn word(&self, token: &ArabicToken) -> WordOutput {
        if token.kind == TokenKind::Foreign {
            return WordOutput {
                text: token.text.clone(),
                ..Default::default()
            };
        }
        self.map_span(&token.text, MatchContext::default())
    }

    pub fn chartx_word(&self, token: &ArabicToken) -> String {
        self.word(token).text
    }

    /// normalize, tokenize, map every token, detokenize.
    pub fn text(&self, text: &str) -> TextOutput {
        let tokens = script::tokenize(&script::normalize(text));
        let mut unmapped = Vec::new();
        let pieces: Vec<(String, bool)> = tokens
            .iter()
            .map(|t| {
                let w = self.word(t);
                unmapped.extend(w.unmapped);
                (w.text, t.preceded_by_space)
            })
            .collect();
        TextOutput {
            text: script::detokenize(pieces),
            unmapped,
        }
    }

    pub fn chartx_text(&self, text: &str) -> String {
        self.text(text).text
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TextOutput {
    pub text: String,
    pub unmapped: Vec<char>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::from_buckwalter;

    fn word(cx: &CharTx, bw: &str) -> String {
        cx.chartx_word(&ArabicToken::new(from_buckwalter(bw), true))
    }

    #[test]
    fn builtin_table_loads() {
        let t = RuleTable::builtin();
        assert_eq!(t.rules().len(), 151);
        assert_eq!(t.version(), "1");
        assert_eq!(t.checksum().len(), 64);
    }

    #[test]
    fn example_sentence_words() {
        let cx = CharTx::default();
        assert_eq!(word(&cx, ">wqft"), "uqft");
        assert_eq!(word(&cx, "AlsyArp"), "alsjara");
        assert_eq!(word(&cx, "fy"), "fi");
        assert_eq!(word(&cx, "AlTryq"), "altriq");
        assert_eq!(
            cx.chartx_text("أوقفت السيارة في الطريق."),
            "uqft alsjara fi altriq."
        );
    }

    #[test]
    fn text_edge_cases() {
        let cx = CharTx::default();
        assert_eq!(cx.chartx_text(""), "");
        assert_eq!(cx.chartx_text("٢٠٢٣؟"), "2023?");
        assert_eq!(cx.chartx_word(&ArabicToken::new("abc", true)), "abc");
    }

    #[test]
    fn lam_sun_gemination_beats_letters() {
        let cx = CharTx::default();
        assert_eq!(word(&cx, "Alz~yt"), "ażżit");
    }

    #[test]
    fn shadda_after_vowel_is_reordered() {
        let cx = CharTx::default();
        // s a y i ~ d  (canonical order puts kasra before shadda)
        assert_eq!(word(&cx, "sayi~d"), "sejjid");
        assert_eq!(word(&cx, "say~id"), "sejjid");
    }

    #[test]
    fn unmapped_codepoints_pass_through_and_are_reported() {
        let cx = CharTx::default();
        let out = cx.word(&ArabicToken::new("ب\u{06F1}", true));
        assert_eq!(out.text, "b\u{06F1}");
        assert_eq!(out.unmapped, vec!['\u{06F1}']);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(RuleTable::parse("b\t-\tp\t1\n").is_err());
        assert!(RuleTable::parse("b\t-\tg\t1\n").is_err());
        assert!(RuleTable::parse("b\t-\tb\t1\nb\t-\tbb\t2\n").is_err());
        assert!(RuleTable::parse("bbbb\t-\tb\t1\n").is_err());
        assert!(RuleTable::parse("b\tMID\tb\t1\n").is_err());
        assert!(RuleTable::parse("b\t-\tgħ\t1\n").is_ok());
    }
}
