//! Grammar-based compression built on the non-self-referencing LZ77 parse.
//!
//! The pipeline turns a byte string into a straight-line grammar that
//! derives exactly that string:
//!
//! 1. [`lz77::parse_lz77`] computes the greedy LZ77 parse whose copies
//!    never overlap their own destination.
//! 2. [`refine::break_phrases`] splits phrases until every copy's source is
//!    a run of whole earlier phrases, at most squaring the phrase count.
//! 3. [`grammar::grammar_from_parse`] reads the refined parse as a grammar,
//!    and [`cnf::to_cnf`] puts it in Chomsky normal form over a forest of
//!    complete binary trees.
//! 4. [`bisection::bisection_grammar`] builds an independent grammar by
//!    dyadic splitting with shared nonterminals for equal blocks.
//!
//! [`certificate::make_certificate`] runs both constructions and compares
//! the smaller one with the LZ77 phrase count, which lower-bounds the size
//! of every grammar for the text.
//!
//! [`rand_access`] answers single-byte and substring queries on a leveled
//! structure of first-occurrence pointers, and [`tape_sim`] runs the LZ77
//! parser on a one-head tape with a fixed register file.
//!
//! ```
//! use lzgrammar::certificate::{compress, Method};
//! use lzgrammar::lz77::parse_lz77;
//!
//! let text = b"how-much-wood-would-a-woodchuck-chuck-if-a-woodchuck-could-chuck-wood?";
//! assert_eq!(parse_lz77(text).tokens().len(), 31);
//!
//! let g = compress(text, Method::Best).unwrap();
//! assert!(g.is_cnf());
//! assert_eq!(g.expand(), text);
//! ```
//!
//! The guide under `book/` walks through each stage with runnable examples;
//! its chapters are compiled as doc-tests of this crate.

pub mod bisection;
pub mod certificate;
pub mod cli;
pub mod cnf;
pub mod error;
pub mod format;
pub mod grammar;
pub mod lz77;
pub mod oracle;
pub mod rand_access;
pub mod refine;
pub mod tape_sim;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lz77.md")]
    mod lz77 {}
    #[doc = include_str!("../../../book/src/refinement.md")]
    mod refinement {}
    #[doc = include_str!("../../../book/src/cnf.md")]
    mod cnf {}
    #[doc = include_str!("../../../book/src/bisection.md")]
    mod bisection {}
    #[doc = include_str!("../../../book/src/certificate.md")]
    mod certificate {}
    #[doc = include_str!("../../../book/src/random_access.md")]
    mod random_access {}
    #[doc = include_str!("../../../book/src/tape.md")]
    mod tape {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
