//! Non-self-referencing LZ77.
//!
//! Every phrase is either a single byte or a copy of a substring that lies
//! entirely inside the prefix already parsed. Positions are 1-based
//! throughout: a copy `(source, len)` emitted at cursor `t` satisfies
//! `source + len - 1 <= t - 1`.
//!
//! The parse is greedy. At cursor `t` the candidate length for a source `i`
//! is the longest common prefix of `s[i..t-1]` and `s[t..n]`; the minimal
//! `i` reaching the maximum wins, and a maximum of 0 or 1 yields a literal.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// One phrase of a parse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Literal(u8),
    /// Copy `len` bytes starting at 1-based position `source`.
    Copy {
        source: usize,
        len: usize,
    },
}

#[allow(clippy::len_without_is_empty)]
impl Token {
    /// Number of text bytes this phrase covers.
    pub fn len(&self) -> usize {
        match *self {
            Token::Literal(_) => 1,
            Token::Copy { len, .. } => len,
        }
    }

    pub fn is_copy(&self) -> bool {
        matches!(self, Token::Copy { .. })
    }
}

/// An ordered sequence of phrases.
///
/// A `Parse` built by [`parse_lz77`] or [`crate::refine::break_phrases`]
/// always satisfies the parse invariants. One assembled by hand through
/// [`Parse::from_tokens`] is unchecked until [`Parse::validate`] or
/// [`decode_parse`] looks at it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Parse {
    tokens: Vec<Token>,
}

impl Parse {
    pub fn from_tokens(tokens: Vec<Token>) -> Self {
        Parse { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn into_tokens(self) -> Vec<Token> {
        self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Length of the text this parse decodes to.
    pub fn text_len(&self) -> usize {
        self.tokens.iter().map(Token::len).sum()
    }

    /// 1-based start position of every phrase, in order.
    pub fn starts(&self) -> Vec<usize> {
        let mut pos = 1;
        self.tokens
            .iter()
            .map(|tok| {
                let start = pos;
                pos += tok.len();
                start
            })
            .collect()
    }

    /// Checks copy lengths and that every copy reads only from the decoded
    /// prefix.
    pub fn validate(&self) -> Result<()> {
        let mut cursor = 1;
        for (k, tok) in self.tokens.iter().enumerate() {
            if let Token::Copy { source, len } = *tok {
                if len < 2 {
                    return Err(Error::MalformedParse(format!(
                        "phrase {} is a copy of length {len}",
                        k + 1
                    )));
                }
                if source == 0 {
                    return Err(Error::MalformedParse(format!(
                        "phrase {} copies from position 0",
                        k + 1
                    )));
                }
                // source + len - 1 <= cursor - 1
                if source + len > cursor {
                    return Err(Error::MalformedParse(format!(
                        "phrase {} at position {cursor} copies [{source}, {}] which is not fully decoded",
                        k + 1,
                        source + len - 1
                    )));
                }
            }
            cursor += tok.len();
        }
        Ok(())
    }
}

/// Renders literals as characters and copies as `(source,len)`.
///
/// Non-printable bytes are shown as `\xNN`.
impl fmt::Display for Parse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for tok in &self.tokens {
            match *tok {
                Token::Literal(b) if b.is_ascii_graphic() || b == b' ' => {
                    write!(f, "{}", b as char)?
                }
                Token::Literal(b) => write!(f, "\\x{b:02x}")?,
                Token::Copy { source, len } => write!(f, "({source},{len})")?,
            }
        }
        Ok(())
    }
}

/// Computes the greedy non-self-referencing LZ77 parse of `text`.
///
/// Only sources whose first two bytes match the cursor are examined, since
/// any other source has a match length of at most 1 and cannot produce a
/// copy. The result is token-identical to scanning every `i < t`.
pub fn parse_lz77(text: &[u8]) -> Parse {
    let n = text.len();
    let mut tokens = Vec::new();
    // 0-based positions of each digram already fully inside the parsed prefix
    let mut digrams: HashMap<u16, Vec<usize>> = HashMap::new();
    let mut indexed = 0usize;
    let mut t = 0usize;

    while t < n {
        // index every digram that ends before the cursor
        while indexed + 1 < t {
            digrams
                .entry(digram(text, indexed))
                .or_default()
                .push(indexed);
            indexed += 1;
        }

        let mut best_len = 0usize;
        let mut best_src = 0usize;
        if t + 1 < n {
            let candidates = digrams.get(&digram(text, t)).map_or(&[][..], Vec::as_slice);
            for &i in candidates {
                let cap = (t - i).min(n - t);
                if cap <= best_len {
                    continue;
                }
                let l = text[i..i + cap]
                    .iter()
                    .zip(&text[t..t + cap])
                    .take_while(|(a, b)| a == b)
                    .count();
                if l > best_len {
                    best_len = l;
                    best_src = i;
                }
            }
        }

        if best_len <= 1 {
            tokens.push(Token::Literal(text[t]));
            t += 1;
        } else {
            tokens.push(Token::Copy {
                source: best_src + 1,
                len: best_len,
            });
            t += best_len;
        }
    }
    Parse { tokens }
}

fn digram(text: &[u8], i: usize) -> u16 {
    u16::from_be_bytes([text[i], text[i + 1]])
}

/// Expands a parse back into its text.
pub fn decode_parse(parse: &Parse) -> Result<Vec<u8>> {
    parse.validate()?;
    let mut out = Vec::with_capacity(parse.text_len());
    for tok in &parse.tokens {
        match *tok {
            Token::Literal(b) => out.push(b),
            Token::Copy { source, len } => {
                let from = source - 1;
                out.extend_from_within(from..from + len);
            }
        }
    }
    Ok(out)
}

/// Number of phrases; a lower bound on the size of any grammar for the text.
pub fn phrase_count(parse: &Parse) -> usize {
    parse.tokens.len()
}
