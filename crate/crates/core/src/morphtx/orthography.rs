//! Maltese orthographic conventions applied after morpheme mapping:
//! sun-letter assimilation of the article, fi/bi contraction and the
//! post-vocalic article.

/// Maltese consonants that assimilate the article.
pub const SUN_LETTERS: [char; 9] = ['ċ', 'd', 'n', 'r', 's', 't', 'x', 'ż', 'z'];

pub fn is_sun_letter(c: char) -> bool {
    c.to_lowercase().all(|l| SUN_LETTERS.contains(&l))
}

fn lower(c: char) -> char {
    c.to_lowercase().next().unwrap_or(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthographyConfig {
    /// Also contract `bi il-` to `bil-`.
    pub bi_contraction: bool,
    /// Reduce `il-` to `l-` after a word ending in a vowel.
    pub euphonic_l: bool,
}

impl Default for OrthographyConfig {
    fn default() -> Self {
        OrthographyConfig {
            bi_contraction: true,
            euphonic_l: true,
        }
    }
}

/// An output word together with whether a space precedes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub text: String,
    pub space_before: bool,
}

impl Piece {
    pub fn new(text: impl Into<String>, space_before: bool) -> Self {
        Piece {
            text: text.into(),
            space_before,
        }
    }
}

/// Rewrites every article `l-` followed by a sun letter to `C-`, dropping a
/// doubled copy of that letter from the stem (`il-xxems` becomes `ix-xems`).
pub fn assimilate(word: &str) -> String {
    let mut chars: Vec<char> = word.chars().collect();
    let mut i = 0;
    while i + 2 < chars.len() {
        let article = chars[i] == 'l'
            && chars[i + 1] == '-'
            && (i == 0 || chars[i - 1] == 'i')
            && is_sun_letter(chars[i + 2]);
        if article {
            let sun = lower(chars[i + 2]);
            chars[i] = sun;
            if i + 3 < chars.len() && lower(chars[i + 3]) == sun {
                chars.remove(i + 3);
            }
            i += 3;
        } else {
            i += 1;
        }
    }
    chars.into_iter().collect()
}

/// `il-` or an assimilated `iC-`.
pub fn starts_with_article(word: &str) -> bool {
    let mut it = word.chars();
    match (it.next(), it.next(), it.next()) {
        (Some('i'), Some('l'), Some('-')) => true,
        (Some('i'), Some(c), Some('-')) => is_sun_letter(c),
        _ => false,
    }
}

fn ends_with_vowel(word: &str) -> bool {
    word.chars()
        .last()
        .is_some_and(|c| matches!(lower(c), 'a' | 'e' | 'i' | 'o' | 'u'))
}

/// Applies assimilation, then contraction, then the post-vocalic article.
pub fn apply(pieces: &[Piece], config: &OrthographyConfig) -> Vec<Piece> {
    let assimilated: Vec<Piece> = pieces
        .iter()
        .map(|p| Piece::new(assimilate(&p.text), p.space_before))
        .collect();

    let mut contracted: Vec<Piece> = Vec::with_capacity(assimilated.len());
    let mut iter = assimilated.into_iter().peekable();
    while let Some(p) = iter.next() {
        let prep = p.text == "fi" || (config.bi_contraction && p.text == "bi");
        if prep {
            if let Some(next) = iter.peek() {
                if starts_with_article(&next.text) {
                    let next = iter.next().expect("peeked");
                    // drop the article's initial i: fi + it-triq -> fit-triq
                    let merged = format!("{}{}", p.text, &next.text[1..]);
                    contracted.push(Piece::new(merged, p.space_before));
                    continue;
                }
            }
        }
        contracted.push(p);
    }

    if config.euphonic_l {
        for j in 1..contracted.len() {
            if contracted[j].space_before
                && contracted[j].text.starts_with("il-")
                && ends_with_vowel(&contracted[j - 1].text)
            {
                contracted[j].text.remove(0);
            }
        }
    }
    contracted
}

/// Applies the conventions to a sequence of space-separated words.
pub fn apply_maltese_orthography<S: AsRef<str>>(
    tokens: &[S],
    config: &OrthographyConfig,
) -> Vec<String> {
    let pieces: Vec<Piece> = tokens
        .iter()
        .map(|t| Piece::new(t.as_ref(), true))
        .collect();
    apply(&pieces, config).into_iter().map(|p| p.text).collect()
}
