//! The full compression pipeline and its approximation certificate.
//!
//! The LZ77 phrase count is a lower bound on the size of the smallest
//! grammar for a text, so `best_size / lz77_phrases` bounds from above how
//! far the chosen grammar can be from optimal on that input.

use std::fmt;

use crate::bisection::bisection_grammar;
use crate::cnf::to_cnf;
use crate::error::{Error, Result};
use crate::grammar::{grammar_from_parse, Grammar};
use crate::lz77::{parse_lz77, phrase_count};
use crate::refine::break_phrases;

/// Which construction a grammar came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// The smaller of the other two; ties go to `Lz77Cnf`.
    Best,
    /// LZ77 parse, phrase refinement, then CNF.
    Lz77Cnf,
    Bisection,
}

/// Grammar from LZ77 parse, refined and converted to CNF.
pub fn lz77_cnf_grammar(text: &[u8]) -> Result<Grammar> {
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    let refined = break_phrases(&parse_lz77(text))?;
    to_cnf(&grammar_from_parse(&refined)?)
}

/// Builds the grammar for `text` with `method`.
pub fn compress(text: &[u8], method: Method) -> Result<Grammar> {
    match method {
        Method::Lz77Cnf => lz77_cnf_grammar(text),
        Method::Bisection => bisection_grammar(text),
        Method::Best => {
            let cnf = lz77_cnf_grammar(text)?;
            let bis = bisection_grammar(text)?;
            Ok(if bis.size() < cnf.size() { bis } else { cnf })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub lz77_phrases: usize,
    pub broken_phrases: usize,
    pub cnf_size: usize,
    pub bisection_size: usize,
    pub best_size: usize,
}

impl Certificate {
    /// `best_size / lz77_phrases`, at least 1.
    pub fn ratio_upper_bound(&self) -> f64 {
        self.best_size as f64 / self.lz77_phrases as f64
    }

    /// The ratio as an exact fraction `(numerator, denominator)`.
    pub fn ratio_fraction(&self) -> (usize, usize) {
        (self.best_size, self.lz77_phrases)
    }
}

/// `key=value` lines, ratio with three decimals.
impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lz77_phrases={}", self.lz77_phrases)?;
        writeln!(f, "broken_phrases={}", self.broken_phrases)?;
        writeln!(f, "cnf_size={}", self.cnf_size)?;
        writeln!(f, "bisection_size={}", self.bisection_size)?;
        writeln!(f, "best_size={}", self.best_size)?;
        writeln!(f, "ratio_upper_bound={:.3}", self.ratio_upper_bound())
    }
}

/// Runs both constructions on `text` and records every stage's size.
pub fn make_certificate(text: &[u8]) -> Result<Certificate> {
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    let parse = parse_lz77(text);
    let refined = break_phrases(&parse)?;
    let cnf = to_cnf(&grammar_from_parse(&refined)?)?;
    let bis = bisection_grammar(text)?;
    Ok(Certificate {
        lz77_phrases: phrase_count(&parse),
        broken_phrases: phrase_count(&refined),
        cnf_size: cnf.size(),
        bisection_size: bis.size(),
        best_size: cnf.size().min(bis.size()),
    })
}
