//! Brute-force reference computations.
//!
//! These are deliberately naive and independent of the fast paths they are
//! used to check.
//!
//! [`smallest_grammar_size`] searches over sets of nonterminal expansions.
//! Fixing the set `N` of strings that nonterminals derive, the cheapest
//! grammar gives each member (and the text itself, for the start symbol) a
//! right-hand side that is a shortest segmentation into single bytes and
//! other members of `N`. Any grammar with a nonterminal used only once
//! shrinks by one when that nonterminal is inlined, and a nonterminal
//! deriving a single byte is never worth its rule, so an optimal `N` holds
//! only strings of length at least 2 with two non-overlapping occurrences in
//! the text. Enumerating the subsets of those candidates is exhaustive.

use crate::error::{Error, Result};

/// Largest text [`smallest_grammar_size`] accepts.
pub const SMALLEST_GRAMMAR_MAX_LEN: usize = 8;

/// Largest text [`smallest_grammar_size_unpruned`] accepts.
pub const UNPRUNED_MAX_LEN: usize = 6;

/// Longest common prefix of `s[i..t-1]` and `s[t..n]`, 1-based.
pub fn lcp_bounded(text: &[u8], i: usize, t: usize) -> Result<usize> {
    let n = text.len();
    if i == 0 || i >= t || t > n {
        return Err(Error::OutOfRange {
            pos: i,
            len: t.saturating_sub(i),
            n,
        });
    }
    let mut j = 0;
    while i + j < t && t + j <= n && text[i + j - 1] == text[t + j - 1] {
        j += 1;
    }
    Ok(j)
}

/// Minimal 1-based `p` with `s[p..p+hi-lo] == s[lo..hi]`.
pub fn first_occurrence(text: &[u8], lo: usize, hi: usize) -> Result<usize> {
    let n = text.len();
    if lo == 0 || lo > hi || hi > n {
        return Err(Error::OutOfRange {
            pos: lo,
            len: (hi + 1).saturating_sub(lo),
            n,
        });
    }
    let width = hi - lo + 1;
    let needle = &text[lo - 1..hi];
    let mut p = 1;
    loop {
        if &text[p - 1..p - 1 + width] == needle {
            return Ok(p);
        }
        p += 1;
    }
}

/// Exact size of the smallest grammar deriving `text`, `1 <= n <= 8`.
pub fn smallest_grammar_size(text: &[u8]) -> Result<usize> {
    check_len(text, SMALLEST_GRAMMAR_MAX_LEN)?;
    let candidates = distinct_substrings(text)
        .into_iter()
        .filter(|x| has_two_disjoint_occurrences(text, x))
        .collect::<Vec<_>>();
    Ok(search(text, &candidates))
}

/// The same search with every proper substring of length at least 2 as a
/// candidate, `1 <= n <= 6`. Used to check the pruning in
/// [`smallest_grammar_size`].
pub fn smallest_grammar_size_unpruned(text: &[u8]) -> Result<usize> {
    check_len(text, UNPRUNED_MAX_LEN)?;
    Ok(search(text, &distinct_substrings(text)))
}

fn check_len(text: &[u8], max: usize) -> Result<()> {
    match text.len() {
        0 => Err(Error::EmptyInput),
        n if n > max => Err(Error::TooLarge(n)),
        _ => Ok(()),
    }
}

/// Distinct substrings with `2 <= len < n`, in first-seen order.
fn distinct_substrings(text: &[u8]) -> Vec<&[u8]> {
    let n = text.len();
    let mut out: Vec<&[u8]> = Vec::new();
    for len in 2..n {
        for from in 0..=n - len {
            let sub = &text[from..from + len];
            if !out.contains(&sub) {
                out.push(sub);
            }
        }
    }
    out
}

fn has_two_disjoint_occurrences(text: &[u8], x: &[u8]) -> bool {
    let mut count = 0;
    let mut from = 0;
    while from + x.len() <= text.len() {
        if &text[from..from + x.len()] == x {
            count += 1;
            from += x.len();
        } else {
            from += 1;
        }
    }
    count >= 2
}

fn search(text: &[u8], candidates: &[&[u8]]) -> usize {
    assert!(candidates.len() < 32, "candidate set too large");
    let mut best = usize::MAX;
    for mask in 0u32..(1 << candidates.len()) {
        let chosen: Vec<&[u8]> = candidates
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, x)| *x)
            .collect();
        let mut total = segment_cost(text, &chosen);
        for x in &chosen {
            if total >= best {
                break;
            }
            total += segment_cost(x, &chosen);
        }
        best = best.min(total);
    }
    best
}

/// Fewest pieces covering `x`, each a single byte or a member of `dict`
/// other than `x` itself.
fn segment_cost(x: &[u8], dict: &[&[u8]]) -> usize {
    let mut cost = vec![usize::MAX; x.len() + 1];
    cost[0] = 0;
    for k in 0..x.len() {
        let here = cost[k];
        cost[k + 1] = cost[k + 1].min(here + 1);
        for y in dict {
            if y.len() < x.len() && x[k..].starts_with(y) {
                let end = k + y.len();
                cost[end] = cost[end].min(here + 1);
            }
        }
    }
    cost[x.len()]
}
