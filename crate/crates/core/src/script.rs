//! Arabic codepoint model, Buckwalter codec, normalization and tokenization.
//!
//! Everything here is shared by all transliteration schemes. The functions are
//! pure and operate on `&str`, so they can be called from any thread.

use unicode_normalization::UnicodeNormalization;

/// Broad category of an Arabic-block codepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharClass {
    Letter,
    Diacritic,
    Digit,
    Punctuation,
    Other,
}

/// One entry of the Arabic codepoint table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArabicChar {
    pub codepoint: char,
    pub class: CharClass,
    /// Buckwalter ASCII symbol, defined for letters and diacritics.
    pub buckwalter: Option<char>,
}

const fn letter(codepoint: char, bw: char) -> ArabicChar {
    ArabicChar {
        codepoint,
        class: CharClass::Letter,
        buckwalter: Some(bw),
    }
}

const fn mark(codepoint: char, bw: char) -> ArabicChar {
    ArabicChar {
        codepoint,
        class: CharClass::Diacritic,
        buckwalter: Some(bw),
    }
}

const fn other(codepoint: char, class: CharClass) -> ArabicChar {
    ArabicChar {
        codepoint,
        class,
        buckwalter: None,
    }
}

// Sorted by codepoint; `lookup` relies on it.
static CHARS: &[ArabicChar] = &[
    other('\u{060C}', CharClass::Punctuation), // ،
    other('\u{061B}', CharClass::Punctuation), // ؛
    other('\u{061F}', CharClass::Punctuation), // ؟
    letter('\u{0621}', '\''),
    letter('\u{0622}', '|'),
    letter('\u{0623}', '>'),
    letter('\u{0624}', '&'),
    letter('\u{0625}', '<'),
    letter('\u{0626}', '}'),
    letter('\u{0627}', 'A'),
    letter('\u{0628}', 'b'),
    letter('\u{0629}', 'p'),
    letter('\u{062A}', 't'),
    letter('\u{062B}', 'v'),
    letter('\u{062C}', 'j'),
    letter('\u{062D}', 'H'),
    letter('\u{062E}', 'x'),
    letter('\u{062F}', 'd'),
    letter('\u{0630}', '*'),
    letter('\u{0631}', 'r'),
    letter('\u{0632}', 'z'),
    letter('\u{0633}', 's'),
    letter('\u{0634}', '$'),
    letter('\u{0635}', 'S'),
    letter('\u{0636}', 'D'),
    letter('\u{0637}', 'T'),
    letter('\u{0638}', 'Z'),
    letter('\u{0639}', 'E'),
    letter('\u{063A}', 'g'),
    other('\u{0640}', CharClass::Other), // tatweel
    letter('\u{0641}', 'f'),
    letter('\u{0642}', 'q'),
    letter('\u{0643}', 'k'),
    letter('\u{0644}', 'l'),
    letter('\u{0645}', 'm'),
    letter('\u{0646}', 'n'),
    letter('\u{0647}', 'h'),
    letter('\u{0648}', 'w'),
    letter('\u{0649}', 'Y'),
    letter('\u{064A}', 'y'),
    mark('\u{064B}', 'F'),
    mark('\u{064C}', 'N'),
    mark('\u{064D}', 'K'),
    mark('\u{064E}', 'a'),
    mark('\u{064F}', 'u'),
    mark('\u{0650}', 'i'),
    mark('\u{0651}', '~'),
    mark('\u{0652}', 'o'),
    other('\u{0660}', CharClass::Digit),
    other('\u{0661}', CharClass::Digit),
    other('\u{0662}', CharClass::Digit),
    other('\u{0663}', CharClass::Digit),
    other('\u{0664}', CharClass::Digit),
    other('\u{0665}', CharClass::Digit),
    other('\u{0666}', CharClass::Digit),
    other('\u{0667}', CharClass::Digit),
    other('\u{0668}', CharClass::Digit),
    other('\u{0669}', CharClass::Digit),
    other('\u{066A}', CharClass::Punctuation), // ٪
    mark('\u{0670}', '`'),                     // dagger alef
    letter('\u{0671}', '{'),
];

pub const SHADDA: char = '\u{0651}';
pub const TATWEEL: char = '\u{0640}';

/// Looks up a codepoint in the Arabic table.
pub fn lookup(c: char) -> Option<&'static ArabicChar> {
    CHARS
        .binary_search_by_key(&c, |e| e.codepoint)
        .ok()
        .map(|i| &CHARS[i])
}

/// All table entries, in codepoint order.
pub fn arabic_chars() -> &'static [ArabicChar] {
    CHARS
}

pub fn is_arabic_letter(c: char) -> bool {
    matches!(lookup(c), Some(e) if e.class == CharClass::Letter)
}

/// Harakat, tanween, shadda, sukun and dagger alef, plus the other combining
/// marks of the Arabic block.
pub fn is_arabic_mark(c: char) -> bool {
    matches!(c, '\u{064B}'..='\u{065F}' | '\u{0670}' | '\u{06D6}'..='\u{06ED}')
}

pub fn is_arabic_digit(c: char) -> bool {
    ('\u{0660}'..='\u{0669}').contains(&c)
}

/// True for any codepoint in the Arabic blocks (main, supplement, extended,
/// presentation forms).
pub fn is_arabic_block(c: char) -> bool {
    matches!(c,
        '\u{0600}'..='\u{06FF}'
        | '\u{0750}'..='\u{077F}'
        | '\u{08A0}'..='\u{08FF}'
        | '\u{FB50}'..='\u{FDFF}'
        | '\u{FE70}'..='\u{FEFE}')
}

fn is_presentation_form(c: char) -> bool {
    matches!(c, '\u{FB50}'..='\u{FDFF}' | '\u{FE70}'..='\u{FEFE}')
}

/// Decomposes presentation forms and ligatures to base letters and marks and
/// removes tatweel. Every other codepoint is left as is.
pub fn normalize(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if is_presentation_form(c) {
            let mut decomposed = std::iter::once(c).nfkc().peekable();
            // Isolated harakat forms decompose to SPACE + mark.
            if decomposed.peek() == Some(&' ') {
                let rest: Vec<char> = decomposed.clone().skip(1).collect();
                if !rest.is_empty() && rest.iter().all(|&m| is_arabic_mark(m) || m == TATWEEL) {
                    decomposed.next();
                }
            }
            out.extend(decomposed.filter(|&d| d != TATWEEL));
        } else if c != TATWEEL {
            out.push(c);
        }
    }
    out
}

/// Maps covered Arabic codepoints to Buckwalter ASCII, optionally lowercasing
/// the result afterwards.
pub fn to_buckwalter(text: &str, lowercase: bool) -> String {
    let mapped: String = text
        .chars()
        .map(|c| lookup(c).and_then(|e| e.buckwalter).unwrap_or(c))
        .collect();
    if lowercase {
        mapped.to_lowercase()
    } else {
        mapped
    }
}

fn from_buckwalter_char(c: char) -> Option<char> {
    if !c.is_ascii() {
        return None;
    }
    CHARS
        .iter()
        .find(|e| e.buckwalter == Some(c))
        .map(|e| e.codepoint)
}

/// Inverse of [`to_buckwalter`] without lowercasing. Characters that are not
/// Buckwalter symbols are kept.
pub fn from_buckwalter(text: &str) -> String {
    text.chars()
        .map(|c| from_buckwalter_char(c).unwrap_or(c))
        .collect()
}

pub fn strip_diacritics(text: &str) -> String {
    text.chars().filter(|&c| !is_arabic_mark(c)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Word,
    Number,
    Punctuation,
    Foreign,
}

/// A whitespace- and punctuation-delimited unit of normalized text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArabicToken {
    pub text: String,
    pub kind: TokenKind,
    pub preceded_by_space: bool,
}

impl ArabicToken {
    pub fn new(text: impl Into<String>, preceded_by_space: bool) -> Self {
        let text = text.into();
        let kind = classify(&text);
        ArabicToken {
            text,
            kind,
            preceded_by_space,
        }
    }
}

/// Characters that detach from words into their own tokens.
pub fn is_punctuation(c: char) -> bool {
    matches!(
        c,
        '\u{060C}'
            | '\u{061B}'
            | '\u{061F}'
            | '\u{066A}'
            | '.'
            | ','
            | '!'
            | '?'
            | ';'
            | ':'
            | '('
            | ')'
            | '"'
            | '\''
            | '%'
    )
}

// Punctuation that may sit inside a word ("3.5", "l'", "12:30").
fn may_be_word_internal(c: char) -> bool {
    matches!(c, '\'' | '.' | ',' | ':')
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_arabic_mark(c)
}

fn classify(text: &str) -> TokenKind {
    let mut chars = text.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if is_punctuation(c) {
            return TokenKind::Punctuation;
        }
    }
    if text.chars().any(is_arabic_letter) {
        TokenKind::Word
    } else if text.chars().any(is_arabic_digit)
        && text.chars().all(|c| {
            is_arabic_digit(c) || may_be_word_internal(c) || c == '\u{066B}' || c == '\u{066C}'
        })
    {
        TokenKind::Number
    } else {
        TokenKind::Foreign
    }
}

/// Splits normalized text on whitespace and detaches punctuation.
pub fn tokenize(text: &str) -> Vec<ArabicToken> {
    let mut tokens = Vec::new();
    let mut space_pending = false;
    let mut chunk: Vec<char> = Vec::new();

    let flush = |chunk: &mut Vec<char>, space_before: bool, tokens: &mut Vec<ArabicToken>| {
        let mut first = true;
        let mut word = String::new();
        for (i, &c) in chunk.iter().enumerate() {
            let internal = may_be_word_internal(c)
                && i > 0
                && i + 1 < chunk.len()
                && is_word_char(chunk[i - 1])
                && is_word_char(chunk[i + 1]);
            if is_punctuation(c) && !internal {
                if !word.is_empty() {
                    tokens.push(ArabicToken::new(
                        std::mem::take(&mut word),
                        first && space_before,
                    ));
                    first = false;
                }
                tokens.push(ArabicToken::new(c.to_string(), first && space_before));
                first = false;
            } else {
                word.push(c);
            }
        }
        if !word.is_empty() {
            tokens.push(ArabicToken::new(word, first && space_before));
        }
        chunk.clear();
    };

    for c in text.chars() {
        if c.is_whitespace() {
            if !chunk.is_empty() {
                flush(&mut chunk, space_pending, &mut tokens);
            }
            space_pending = true;
        } else {
            chunk.push(c);
        }
    }
    if !chunk.is_empty() {
        flush(&mut chunk, space_pending, &mut tokens);
    }
    tokens
}

/// Joins output pieces, inserting one space before every piece whose flag is
/// set. Empty pieces are dropped; there is never leading or trailing space.
pub fn detokenize<I, S>(pieces: I) -> String
where
    I: IntoIterator<Item = (S, bool)>,
    S: AsRef<str>,
{
    let mut out = String::new();
    for (piece, space_before) in pieces {
        let piece = piece.as_ref().trim();
        if piece.is_empty() {
            continue;
        }
        if space_before && !out.is_empty() {
            out.push(' ');
        }
        out.push_str(piece);
    }
    out
}

/// Joins pieces with single spaces, except before punctuation.
pub fn detokenize_plain<S: AsRef<str>>(pieces: &[S]) -> String {
    detokenize(pieces.iter().map(|p| {
        let s = p.as_ref();
        let punct = !s.is_empty() && s.chars().all(is_punctuation);
        (s, !punct)
    }))
}

/// Convenience: rejoin per-token outputs using the spacing recorded on tokens.
pub fn detokenize_tokens<S: AsRef<str>>(pieces: &[S], tokens: &[ArabicToken]) -> String {
    debug_assert_eq!(pieces.len(), tokens.len());
    detokenize(
        pieces
            .iter()
            .zip(tokens)
            .map(|(p, t)| (p.as_ref(), t.preceded_by_space)),
    )
}
