//! Brute-force reference matcher. Repeatedly commits the best match anywhere
//! in the unconsumed part of the word, ranked by class, then length (longer
//! first), then position, then anchored before unanchored, then table order.

use std::cmp::Reverse;

use ar2mt::chartx::{Anchor, RuleTable};

/// (class, longer first, position, anchored first, table order)
type Rank = (u8, Reverse<usize>, usize, u8, usize);

pub fn anchored_rank(anchor: Anchor) -> u8 {
    match anchor {
        Anchor::None => 1,
        _ => 0,
    }
}

fn matches(
    source: &[char],
    anchor: Anchor,
    word: &[char],
    pos: usize,
    bos: bool,
    eos: bool,
) -> bool {
    let end = pos + source.len();
    if end > word.len() || word[pos..end] != *source {
        return false;
    }
    match anchor {
        Anchor::None => true,
        Anchor::Bos => pos == 0 && bos,
        Anchor::Eos => end == word.len() && eos,
    }
}

pub fn map(
    table: &RuleTable,
    word: &[char],
    bos: bool,
    eos: bool,
) -> (String, Vec<(usize, usize)>) {
    let n = word.len();
    let mut taken = vec![false; n];
    let mut chosen: Vec<(usize, usize, usize)> = Vec::new();
    loop {
        let mut best: Option<(Rank, usize, usize)> = None;
        for pos in 0..n {
            for (id, rule) in table.rules().iter().enumerate() {
                let len = rule.source.len();
                if pos + len > n || taken[pos..pos + len].iter().any(|&t| t) {
                    continue;
                }
                if !matches(&rule.source, rule.anchor, word, pos, bos, eos) {
                    continue;
                }
                let key = (
                    rule.class,
                    Reverse(len),
                    pos,
                    anchored_rank(rule.anchor),
                    id,
                );
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, pos, id));
                }
            }
        }
        let Some((_, pos, id)) = best else { break };
        let len = table.rules()[id].source.len();
        taken[pos..pos + len].iter_mut().for_each(|t| *t = true);
        chosen.push((pos, len, id));
    }
    chosen.sort();
    let mut out = String::new();
    let mut pos = 0;
    let mut it = chosen.iter().peekable();
    while pos < n {
        match it.peek() {
            Some(&&(p, len, id)) if p == pos => {
                out.push_str(&table.rules()[id].target);
                pos += len;
                it.next();
            }
            _ => {
                out.push(word[pos]);
                pos += 1;
            }
        }
    }
    (out, chosen.into_iter().map(|(p, _, id)| (p, id)).collect())
}

/// Moves the first shadda of a run of marks after a letter to the front of
/// the run.
pub fn shadda_first(word: &[char]) -> Vec<char> {
    let is_mark = |c: char| ('\u{064B}'..='\u{065F}').contains(&c) || c == '\u{0670}';
    let mut out: Vec<char> = Vec::with_capacity(word.len());
    let mut i = 0;
    while i < word.len() {
        if is_mark(word[i]) && i > 0 && !is_mark(word[i - 1]) {
            let start = i;
            while i < word.len() && is_mark(word[i]) {
                i += 1;
            }
            let mut run = word[start..i].to_vec();
            if let Some(k) = run.iter().position(|&c| c == '\u{0651}') {
                let shadda = run.remove(k);
                run.insert(0, shadda);
            }
            out.extend(run);
        } else {
            out.push(word[i]);
            i += 1;
        }
    }
    out
}
