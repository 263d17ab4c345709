//! Labeled datasets: tagset normalization, label-preserving transliteration,
//! sentiment filtering and seeded downsampling.
//!
//! NER files are CoNLL style: one `token<TAB>tag` per line (MAPA-style files
//! carry a third column with the fine-grained tag), blank line between
//! sentences. Sentiment files are `text<TAB>label`.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::morphtx::SentenceAnalyses;
use crate::parallel;
use crate::pipeline::{Scheme, Transliterator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityType {
    Per,
    Org,
    Loc,
}

impl EntityType {
    pub fn name(self) -> &'static str {
        match self {
            EntityType::Per => "PER",
            EntityType::Org => "ORG",
            EntityType::Loc => "LOC",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BioTag {
    O,
    B(EntityType),
    I(EntityType),
}

impl fmt::Display for BioTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BioTag::O => f.write_str("O"),
            BioTag::B(e) => write!(f, "B-{}", e.name()),
            BioTag::I(e) => write!(f, "I-{}", e.name()),
        }
    }
}

impl FromStr for BioTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "O" {
            return Ok(BioTag::O);
        }
        let (prefix, label) = s.split_once('-').ok_or_else(|| format!("bad tag {s:?}"))?;
        let ty = match label {
            "PER" => EntityType::Per,
            "ORG" => EntityType::Org,
            "LOC" => EntityType::Loc,
            _ => return Err(format!("unknown entity type in {s:?}")),
        };
        match prefix {
            "B" => Ok(BioTag::B(ty)),
            "I" => Ok(BioTag::I(ty)),
            _ => Err(format!("bad BIO prefix in {s:?}")),
        }
    }
}

/// True if no `I-X` follows anything other than `B-X` or `I-X`.
pub fn is_valid_bio(tags: &[BioTag]) -> bool {
    let mut prev = BioTag::O;
    for &t in tags {
        if let BioTag::I(ty) = t {
            if prev != BioTag::B(ty) && prev != BioTag::I(ty) {
                return false;
            }
        }
        prev = t;
    }
    true
}

/// Turns every orphaned `I-X` into `B-X`.
pub fn repair_bio(tags: &mut [BioTag]) {
    let mut prev = BioTag::O;
    for t in tags.iter_mut() {
        if let BioTag::I(ty) = *t {
            if prev != BioTag::B(ty) && prev != BioTag::I(ty) {
                *t = BioTag::B(ty);
            }
        }
        prev = *t;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerSentence {
    pub tokens: Vec<String>,
    pub tags: Vec<BioTag>,
}

impl NerSentence {
    pub fn new(tokens: Vec<String>, tags: Vec<BioTag>) -> std::result::Result<Self, String> {
        if tokens.len() != tags.len() {
            return Err(format!("{} tokens but {} tags", tokens.len(), tags.len()));
        }
        if !is_valid_bio(&tags) {
            return Err("invalid BIO sequence".into());
        }
        Ok(NerSentence { tokens, tags })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// A tag as found in a source corpus, before normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceTag {
    pub level1: String,
    /// Fine-grained tag (MAPA's second annotation level).
    pub level2: Option<String>,
}

impl SourceTag {
    pub fn new(level1: impl Into<String>) -> Self {
        SourceTag {
            level1: level1.into(),
            level2: None,
        }
    }

    pub fn with_level2(level1: impl Into<String>, level2: impl Into<String>) -> Self {
        SourceTag {
            level1: level1.into(),
            level2: Some(level2.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSentence {
    pub tokens: Vec<String>,
    pub tags: Vec<SourceTag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceSchema {
    /// PER(S)/ORG/LOC/MISC; MISC is dropped.
    Anercorp,
    /// Two-level MAPA annotation.
    Mapa,
    /// Already PER/ORG/LOC.
    Common,
}

impl FromStr for SourceSchema {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "anercorp" => Ok(SourceSchema::Anercorp),
            "mapa" => Ok(SourceSchema::Mapa),
            "common" => Ok(SourceSchema::Common),
            _ => Err(format!("unknown schema {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Prefix {
    B,
    I,
}

fn split_bio(tag: &str) -> Option<(Prefix, &str)> {
    let (p, label) = tag.split_once('-')?;
    let p = match p {
        "B" => Prefix::B,
        "I" => Prefix::I,
        _ => return None,
    };
    (!label.is_empty()).then_some((p, label))
}

fn make(prefix: Prefix, ty: EntityType) -> BioTag {
    match prefix {
        Prefix::B => BioTag::B(ty),
        Prefix::I => BioTag::I(ty),
    }
}

const MAPA_LEVEL1: &[&str] = &[
    "PERSON",
    "ORGANISATION",
    "ORGANIZATION",
    "ADDRESS",
    "DATE",
    "AMOUNT",
    "TIME",
    "VEHICLE",
];

fn mapa_level2_key(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c == '_' {
                ' '
            } else {
                c.to_ascii_lowercase()
            }
        })
        .collect()
}

fn normalize_tag(tag: &SourceTag, schema: SourceSchema) -> std::result::Result<BioTag, String> {
    let unknown = || format!("unknown {schema:?} tag {:?}", tag.level1);
    match schema {
        SourceSchema::Common => tag.level1.parse().map_err(|_| unknown()),
        SourceSchema::Anercorp => {
            if tag.level1 == "O" {
                return Ok(BioTag::O);
            }
            let (p, label) = split_bio(&tag.level1).ok_or_else(unknown)?;
            Ok(match label {
                "PER" | "PERS" => make(p, EntityType::Per),
                "ORG" => make(p, EntityType::Org),
                "LOC" => make(p, EntityType::Loc),
                "MISC" => BioTag::O,
                _ => return Err(unknown()),
            })
        }
        SourceSchema::Mapa => {
            let level1 = if tag.level1 == "O" {
                None
            } else {
                let (p, label) = split_bio(&tag.level1).ok_or_else(unknown)?;
                if !MAPA_LEVEL1.contains(&label) {
                    return Err(unknown());
                }
                Some((p, label))
            };
            let level2 = match tag.level2.as_deref() {
                None | Some("O") | Some("-") | Some("") => None,
                Some(l2) => Some(
                    split_bio(l2).ok_or_else(|| format!("malformed MAPA level-2 tag {l2:?}"))?,
                ),
            };
            if let Some((p, label)) = level2 {
                match mapa_level2_key(label).as_str() {
                    "given name" | "family name" => return Ok(make(p, EntityType::Per)),
                    "city" | "country" => return Ok(make(p, EntityType::Loc)),
                    _ => {}
                }
            }
            Ok(match level1 {
                Some((p, "ORGANISATION" | "ORGANIZATION")) => make(p, EntityType::Org),
                _ => BioTag::O,
            })
        }
    }
}

/// Maps a source sentence onto the PER/ORG/LOC tagset, repairing BIO
/// sequences broken by dropped tags.
pub fn normalize_ner_tags(
    sentence: &SourceSentence,
    schema: SourceSchema,
) -> std::result::Result<NerSentence, String> {
    let mut tags = sentence
        .tags
        .iter()
        .map(|t| normalize_tag(t, schema))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    repair_bio(&mut tags);
    NerSentence::new(sentence.tokens.clone(), tags)
}

/// Transliterates every token on its own and copies tags positionally.
pub fn transliterate_ner(
    sentence: &NerSentence,
    tx: &Transliterator,
    scheme: Scheme,
    analyses: Option<&SentenceAnalyses>,
) -> NerSentence {
    let aligned = analyses.filter(|a| a.tokens.len() == sentence.tokens.len());
    let tokens = sentence
        .tokens
        .iter()
        .enumerate()
        .map(|(i, tok)| {
            let analysis = aligned.and_then(|a| a.tokens[i].as_ref());
            let out = tx.token(tok, scheme, analysis);
            // an empty rendering would break the column format
            if out.trim().is_empty() {
                tok.clone()
            } else {
                out
            }
        })
        .collect();
    NerSentence {
        tokens,
        tags: sentence.tags.clone(),
    }
}

/// Target sizes for a seeded train/validation draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSpec {
    pub train_size: usize,
    pub valid_size: usize,
    pub seed: u64,
}

/// Draws disjoint train and validation sets uniformly without replacement.
/// Each set keeps the records' original relative order.
pub fn downsample<T: Clone>(records: &[T], spec: SplitSpec) -> Result<(Vec<T>, Vec<T>)> {
    let need = spec.train_size + spec.valid_size;
    if need > records.len() {
        return Err(Error::InfeasibleSplit {
            train: spec.train_size,
            valid: spec.valid_size,
            available: records.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let picked = index::sample(&mut rng, records.len(), need).into_vec();
    let mut train: Vec<usize> = picked[..spec.train_size].to_vec();
    let mut valid: Vec<usize> = picked[spec.train_size..].to_vec();
    train.sort_unstable();
    valid.sort_unstable();
    Ok((
        train.into_iter().map(|i| records[i].clone()).collect(),
        valid.into_iter().map(|i| records[i].clone()).collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn name(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        }
    }
}

/// A sentiment line as read, label unchecked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSentiment {
    pub line: usize,
    pub text: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentimentRecord {
    /// Index of the record among the input records; analysis records are
    /// keyed by it.
    pub source_index: usize,
    pub text: String,
    pub label: Polarity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusError {
    /// Sentence index (NER) or 1-based line (sentiment).
    pub record: usize,
    pub message: String,
}

/// Drops neutral records and keeps the rest in order. Unknown labels are
/// reported and skipped.
pub fn filter_sentiment(records: &[RawSentiment]) -> (Vec<SentimentRecord>, Vec<CorpusError>) {
    let mut kept = Vec::new();
    let mut errors = Vec::new();
    for (source_index, r) in records.iter().enumerate() {
        let label = match r.label.trim().to_ascii_lowercase().as_str() {
            "positive" | "pos" => Polarity::Positive,
            "negative" | "neg" => Polarity::Negative,
            "neutral" | "neu" => continue,
            other => {
                errors.push(CorpusError {
                    record: r.line,
                    message: format!("unknown sentiment label {other:?}"),
                });
                continue;
            }
        };
        kept.push(SentimentRecord {
            source_index,
            text: r.text.clone(),
            label,
        });
    }
    (kept, errors)
}

pub fn transliterate_sentiment(
    records: &[SentimentRecord],
    tx: &Transliterator,
    scheme: Scheme,
    analyses: Option<&crate::morphtx::AnalysisSet>,
) -> Vec<SentimentRecord> {
    parallel::map_ordered(records, |r| {
        let record = analyses.and_then(|a| a.get(r.source_index as u64));
        SentimentRecord {
            text: tx.sentence(&r.text, scheme, record).text,
            ..r.clone()
        }
    })
}

/// Transliterates sentences in parallel, sentence `i` using analysis record `i`.
pub fn transliterate_ner_corpus(
    sentences: &[NerSentence],
    tx: &Transliterator,
    scheme: Scheme,
    analyses: Option<&crate::morphtx::AnalysisSet>,
) -> Vec<NerSentence> {
    let indexed: Vec<(usize, &NerSentence)> = sentences.iter().enumerate().collect();
    parallel::map_ordered(&indexed, |&(i, s)| {
        transliterate_ner(s, tx, scheme, analyses.and_then(|a| a.get(i as u64)))
    })
}

/// Reads a CoNLL-style file. Lines starting with `#` and `-DOCSTART-` lines
/// are skipped.
pub fn read_conll<R: BufRead>(reader: R, path: &str) -> Result<Vec<SourceSentence>> {
    let mut out = Vec::new();
    let mut cur = SourceSentence {
        tokens: Vec::new(),
        tags: Vec::new(),
    };
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r').trim_start_matches('\u{FEFF}');
        if line.trim().is_empty() {
            if !cur.tokens.is_empty() {
                out.push(std::mem::replace(
                    &mut cur,
                    SourceSentence {
                        tokens: Vec::new(),
                        tags: Vec::new(),
                    },
                ));
            }
            continue;
        }
        if line.starts_with('#') || line.starts_with("-DOCSTART-") {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 2 || fields[0].is_empty() {
            return Err(Error::Format {
                path: path.to_string(),
                line: idx + 1,
                message: "expected token<TAB>tag".into(),
            });
        }
        cur.tokens.push(fields[0].to_string());
        cur.tags.push(SourceTag {
            level1: fields[1].trim().to_string(),
            level2: fields.get(2).map(|s| s.trim().to_string()),
        });
    }
    if !cur.tokens.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

pub fn write_conll(sentences: &[NerSentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        for (tok, tag) in s.tokens.iter().zip(&s.tags) {
            out.push_str(tok);
            out.push('\t');
            out.push_str(&tag.to_string());
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Reads `text<TAB>label` lines; a first line `text<TAB>label` is a header.
pub fn read_sentiment<R: BufRead>(reader: R, path: &str) -> Result<Vec<RawSentiment>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r').trim_start_matches('\u{FEFF}');
        if line.trim().is_empty() || (idx == 0 && line == "text\tlabel") {
            continue;
        }
        let (text, label) = line.rsplit_once('\t').ok_or_else(|| Error::Format {
            path: path.to_string(),
            line: idx + 1,
            message: "expected text<TAB>label".into(),
        })?;
        out.push(RawSentiment {
            line: idx + 1,
            text: text.to_string(),
            label: label.to_string(),
        });
    }
    Ok(out)
}

pub fn write_sentiment(records: &[SentimentRecord]) -> String {
    let mut out = String::from("text\tlabel\n");
    for r in records {
        out.push_str(&r.text);
        out.push('\t');
        out.push_str(r.label.name());
        out.push('\n');
    }
    out
}
