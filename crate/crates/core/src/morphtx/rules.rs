//! Morpheme-level override rules.

use regex::Regex;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::script;

use super::sidecar::Morpheme;

pub const DEFAULT_MORPH_RULES: &str = include_str!("../../rules/morph.tsv");

#[derive(Debug, Clone)]
pub struct MorphemeRule {
    pub id: usize,
    pub line: usize,
    pub tag_pattern: String,
    matcher: Regex,
    /// Normalized Arabic form the rule is restricted to.
    pub source_constraint: Option<String>,
    pub target: String,
    /// The output is followed by a word break.
    pub detach: bool,
    pub requires_construct: bool,
}

impl MorphemeRule {
    pub fn matches(&self, morpheme: &Morpheme, construct: bool) -> bool {
        if self.requires_construct && !construct {
            return false;
        }
        if !self.matcher.is_match(&morpheme.tag) {
            return false;
        }
        match &self.source_constraint {
            None => true,
            Some(form) => same_form(form, &morpheme.surface),
        }
    }
}

fn trim_edge_marks(s: &str) -> &str {
    s.trim_matches(script::is_arabic_mark)
}

/// Forms are equal if they agree after dropping leading and trailing
/// diacritics; analyzers disagree on which side of a boundary a vowel sits.
pub fn same_form(a: &str, b: &str) -> bool {
    a == b || trim_edge_marks(a) == trim_edge_marks(b)
}

/// Compiles a tag pattern: `{A,B}` alternates, `*` matches one
/// underscore-delimited field (or the remainder after `:`).
pub fn compile_tag_pattern(pattern: &str) -> Result<Regex, String> {
    let mut re = String::from("^");
    let mut chars = pattern.chars();
    while let Some(c) = chars.next() {
        match c {
            '{' => {
                let mut body = String::new();
                loop {
                    match chars.next() {
                        Some('}') => break,
                        Some(c) => body.push(c),
                        None => return Err(format!("unclosed '{{' in {pattern:?}")),
                    }
                }
                let alts: Vec<String> = body.split(',').map(|a| regex::escape(a.trim())).collect();
                if alts.iter().any(|a| a.is_empty()) {
                    return Err(format!("empty alternative in {pattern:?}"));
                }
                re.push_str("(?:");
                re.push_str(&alts.join("|"));
                re.push(')');
            }
            '}' => return Err(format!("stray '}}' in {pattern:?}")),
            '*' => re.push_str("[^_]+"),
            c => re.push_str(&regex::escape(&c.to_string())),
        }
    }
    re.push('$');
    Regex::new(&re).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
pub struct MorphRuleSet {
    /// Form-specific rules first, then wildcard rules, file order within each.
    rules: Vec<MorphemeRule>,
    checksum: String,
}

impl MorphRuleSet {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim_end_matches('\r');
            if raw.starts_with('#') || raw.trim().is_empty() {
                continue;
            }
            let bad = |message: String| Error::MorphRule { line, message };
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() < 3 {
                return Err(bad(format!(
                    "expected at least 3 fields, got {}",
                    fields.len()
                )));
            }
            let matcher = compile_tag_pattern(fields[0]).map_err(bad)?;
            let source_constraint = match fields[1].trim() {
                "*" | "" => None,
                s => Some(script::normalize(&script::from_buckwalter(s))),
            };
            let mut target = match fields[2] {
                "∅" => String::new(),
                t => t.to_string(),
            };
            let detach = target.ends_with('_');
            if detach {
                target.pop();
            }
            if target.contains(|c: char| c == '_' || c.is_whitespace()) {
                return Err(bad(format!("bad target {:?}", fields[2])));
            }
            if crate::chartx::has_bare_g(&target) {
                return Err(bad(format!("target {target:?} contains g outside għ")));
            }
            let requires_construct = match fields.get(3).map(|s| s.trim()) {
                None | Some("-") | Some("") => false,
                Some("construct") => true,
                Some(other) => return Err(bad(format!("unknown condition {other:?}"))),
            };
            rules.push(MorphemeRule {
                id: rules.len(),
                line,
                tag_pattern: fields[0].to_string(),
                matcher,
                source_constraint,
                target,
                detach,
                requires_construct,
            });
        }
        rules.sort_by_key(|r| (r.source_constraint.is_none(), r.id));
        Ok(MorphRuleSet {
            rules,
            checksum: hex::encode(Sha256::digest(text.as_bytes())),
        })
    }

    pub fn builtin() -> Self {
        MorphRuleSet::parse(DEFAULT_MORPH_RULES).expect("built-in morpheme rules are valid")
    }

    /// Rules in lookup order.
    pub fn rules(&self) -> &[MorphemeRule] {
        &self.rules
    }

    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    pub fn find(&self, morpheme: &Morpheme, construct: bool) -> Option<&MorphemeRule> {
        self.rules.iter().find(|r| r.matches(morpheme, construct))
    }
}
