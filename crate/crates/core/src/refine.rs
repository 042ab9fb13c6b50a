//! Phrase refinement.
//!
//! A copy phrase whose source starts or ends in the middle of an earlier
//! phrase cannot be read as a grammar rule. [`break_phrases`] inserts
//! breaks until every remaining copy's source starts and ends on a phrase
//! boundary.
//!
//! Phrases are processed from right to left, over the *original* parse:
//!
//! * a break `p` strictly inside a copy `[t, t + len)` with source `i`
//!   forces a break at `i + (p - t)`, immediately and recursively;
//! * a copy's outer endpoints `t` and `t + len` are mapped to `i` and
//!   `i + len` only when the fragment next to that endpoint is still at
//!   least two bytes long. A fragment of one byte becomes a literal and
//!   needs no aligned source.
//!
//! Every forced break lies strictly left of its cause, because copies never
//! overlap their destination. So once the phrases to the right of a copy
//! are done, the breaks inside that copy are final and the fragment lengths
//! tested above are known.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lz77::{decode_parse, Parse, Token};

/// Refines `parse` so that every copy source is a run of whole phrases.
///
/// Split copy phrases become copies of the matching sub-range of their
/// source; a fragment of length 1 becomes a literal. The phrase count at
/// most squares.
pub fn break_phrases(parse: &Parse) -> Result<Parse> {
    let text = decode_parse(parse)?;
    let n = text.len();
    let tokens = parse.tokens();
    let starts = parse.starts();

    // Breaks are phrase start positions, plus n + 1 as a sentinel end.
    let mut breaks: BTreeSet<usize> = starts.iter().copied().collect();
    breaks.insert(n + 1);

    // Inserts a break and every break it forces through the copies that
    // contain it.
    let cascade = |first: usize, breaks: &mut BTreeSet<usize>| {
        let mut pending = vec![first];
        while let Some(p) = pending.pop() {
            if !breaks.insert(p) {
                continue;
            }
            // p was not a phrase start, so it lies strictly inside phrase k
            let k = starts.partition_point(|&s| s <= p) - 1;
            if let Token::Copy { source, .. } = tokens[k] {
                pending.push(source + (p - starts[k]));
            }
        }
    };

    for (k, tok) in tokens.iter().enumerate().rev() {
        let Token::Copy { source, len } = *tok else {
            continue;
        };
        let (t, end) = (starts[k], starts[k] + len);
        let first_cut = *breaks.range(t + 1..).next().expect("sentinel");
        if first_cut - t >= 2 {
            cascade(source, &mut breaks);
        }
        let last_cut = *breaks.range(..end).next_back().expect("phrase start");
        if end - last_cut >= 2 {
            cascade(source + len, &mut breaks);
        }
    }

    let bounds: Vec<usize> = breaks.into_iter().collect();
    let mut refined = Vec::with_capacity(bounds.len() - 1);
    for w in bounds.windows(2) {
        let (a, b) = (w[0], w[1]);
        let k = starts.partition_point(|&s| s <= a) - 1;
        let len = b - a;
        let tok = match tokens[k] {
            Token::Literal(byte) => Token::Literal(byte),
            Token::Copy { .. } if len == 1 => Token::Literal(text[a - 1]),
            Token::Copy { source, .. } => Token::Copy {
                source: source + (a - starts[k]),
                len,
            },
        };
        refined.push(tok);
    }
    Ok(Parse::from_tokens(refined))
}

/// True iff every copy's source range starts at a phrase start and ends at
/// a phrase end.
pub fn check_alignment(parse: &Parse) -> bool {
    let starts = parse.starts();
    let is_start = |p: usize| starts.binary_search(&p).is_ok();
    parse.tokens().iter().all(|tok| match *tok {
        Token::Literal(_) => true,
        // source + len is a phrase start because the source lies wholly
        // before the copy's own start
        Token::Copy { source, len } => is_start(source) && is_start(source + len),
    })
}

/// Index ranges `(first, last)` (1-based phrase numbers) of the phrases that
/// exactly cover each copy's source, or an alignment error.
pub(crate) fn source_phrase_ranges(parse: &Parse) -> Result<Vec<Option<(usize, usize)>>> {
    let starts = parse.starts();
    let phrase_at = |p: usize| starts.binary_search(&p).ok();
    parse
        .tokens()
        .iter()
        .enumerate()
        .map(|(k, tok)| match *tok {
            Token::Literal(_) => Ok(None),
            Token::Copy { source, len } => {
                let end = source + len;
                let first = phrase_at(source);
                // the source ends before the copy starts, so `end` is at most
                // the copy's own start
                match (first, phrase_at(end)) {
                    (Some(a), Some(b)) if a < b => Ok(Some((a + 1, b))),
                    _ => Err(Error::Alignment(format!(
                        "phrase {} copies [{source}, {}] which does not cover whole phrases",
                        k + 1,
                        end - 1
                    ))),
                }
            }
        })
        .collect()
}
