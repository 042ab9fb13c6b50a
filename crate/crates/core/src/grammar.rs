//! Straight-line grammars.
//!
//! A [`Grammar`] has exactly one production per nonterminal and no cycles,
//! so it derives exactly one string. Nonterminal ids are dense indices into
//! the production table. Builders in this crate always put the start symbol
//! at id 0.
//!
//! Size is measured as the total number of symbols on right-hand sides.

use std::fmt;

use crate::error::{Error, Result};
use crate::lz77::{Parse, Token};
use crate::refine::source_phrase_ranges;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(u8),
    Nonterminal(usize),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::Terminal(b) if b.is_ascii_graphic() => write!(f, "'{}'", b as char),
            Symbol::Terminal(b) => write!(f, "'\\x{b:02x}'"),
            Symbol::Nonterminal(id) => write!(f, "X{id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    start: usize,
    rules: Vec<Vec<Symbol>>,
}

impl Grammar {
    /// Builds a grammar, checking that every production is non-empty, every
    /// referenced id exists, there are no cycles, and every nonterminal is
    /// reachable from `start`.
    pub fn new(start: usize, rules: Vec<Vec<Symbol>>) -> Result<Self> {
        let g = Grammar { start, rules };
        g.check()?;
        Ok(g)
    }

    pub(crate) fn new_unchecked(start: usize, rules: Vec<Vec<Symbol>>) -> Self {
        let g = Grammar { start, rules };
        debug_assert_eq!(g.check(), Ok(()));
        g
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn rules(&self) -> &[Vec<Symbol>] {
        &self.rules
    }

    pub fn rule(&self, id: usize) -> &[Symbol] {
        &self.rules[id]
    }

    pub fn production_count(&self) -> usize {
        self.rules.len()
    }

    /// Total number of right-hand-side symbols.
    pub fn size(&self) -> usize {
        self.rules.iter().map(Vec::len).sum()
    }

    /// Every production is a single terminal or a pair of nonterminals.
    pub fn is_cnf(&self) -> bool {
        self.rules.iter().all(|rhs| {
            matches!(
                rhs.as_slice(),
                [Symbol::Terminal(_)] | [Symbol::Nonterminal(_), Symbol::Nonterminal(_)]
            )
        })
    }

    fn check(&self) -> Result<()> {
        let count = self.rules.len();
        if self.start >= count {
            return Err(Error::InvalidGrammar(format!(
                "start symbol {} has no production",
                self.start
            )));
        }
        for (id, rhs) in self.rules.iter().enumerate() {
            if rhs.is_empty() {
                return Err(Error::InvalidGrammar(format!(
                    "nonterminal {id} has an empty right-hand side"
                )));
            }
            for sym in rhs {
                if let Symbol::Nonterminal(child) = *sym {
                    if child >= count {
                        return Err(Error::InvalidGrammar(format!(
                            "nonterminal {id} refers to undefined nonterminal {child}"
                        )));
                    }
                }
            }
        }
        let order = self.postorder_from(self.start)?;
        if order.len() != count {
            let mut seen = vec![false; count];
            order.iter().for_each(|&id| seen[id] = true);
            let missing = seen.iter().position(|s| !s).unwrap_or(0);
            return Err(Error::InvalidGrammar(format!(
                "nonterminal {missing} is unreachable from the start symbol"
            )));
        }
        Ok(())
    }

    /// Nonterminals reachable from `root`, children before parents.
    fn postorder_from(&self, root: usize) -> Result<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let mut mark = vec![Mark::New; self.rules.len()];
        let mut order = Vec::new();
        // (id, index of next child to visit)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some(&mut (id, ref mut next)) = stack.last_mut() {
            let rhs = &self.rules[id];
            if *next < rhs.len() {
                let sym = rhs[*next];
                *next += 1;
                if let Symbol::Nonterminal(child) = sym {
                    match mark[child] {
                        Mark::New => {
                            mark[child] = Mark::Open;
                            stack.push((child, 0));
                        }
                        Mark::Open => return Err(Error::Cyclic(child)),
                        Mark::Done => {}
                    }
                }
            } else {
                mark[id] = Mark::Done;
                order.push(id);
                stack.pop();
            }
        }
        Ok(order)
    }

    /// Length of every nonterminal's expansion, saturating at `u64::MAX`.
    pub fn expansion_lengths(&self) -> Vec<u64> {
        let mut len = vec![0u64; self.rules.len()];
        let order = self
            .postorder_from(self.start)
            .expect("grammar invariants hold");
        for id in order {
            len[id] = self.rules[id]
                .iter()
                .map(|sym| match *sym {
                    Symbol::Terminal(_) => 1,
                    Symbol::Nonterminal(c) => len[c],
                })
                .fold(0u64, u64::saturating_add);
        }
        len
    }

    /// The string derived from the start symbol.
    pub fn expand(&self) -> Vec<u8> {
        self.expand_from(self.start)
    }

    /// The string derived from nonterminal `id`.
    ///
    /// Each nonterminal is expanded once; later occurrences copy the bytes
    /// already written, so the cost is linear in output plus grammar size.
    pub fn expand_from(&self, id: usize) -> Vec<u8> {
        enum Frame {
            Enter(usize),
            Byte(u8),
            Exit(usize, usize),
        }
        let mut span: Vec<Option<(usize, usize)>> = vec![None; self.rules.len()];
        let mut out = Vec::new();
        let mut stack = vec![Frame::Enter(id)];
        while let Some(frame) = stack.pop() {
            match frame {
                Frame::Byte(b) => out.push(b),
                Frame::Exit(id, from) => span[id] = Some((from, out.len() - from)),
                Frame::Enter(id) => {
                    if let Some((from, len)) = span[id] {
                        out.extend_from_within(from..from + len);
                        continue;
                    }
                    stack.push(Frame::Exit(id, out.len()));
                    for sym in self.rules[id].iter().rev() {
                        stack.push(match *sym {
                            Symbol::Terminal(b) => Frame::Byte(b),
                            Symbol::Nonterminal(c) => Frame::Enter(c),
                        });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, rhs) in self.rules.iter().enumerate() {
            write!(f, "X{id} ->")?;
            for sym in rhs {
                write!(f, " {sym}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reads a boundary-aligned parse as a grammar.
///
/// Phrase `k` (1-based) becomes nonterminal `k`: a literal derives its byte,
/// a copy derives the run of phrase nonterminals covering its source. The
/// start symbol 0 derives `X1 .. Xm`.
pub fn grammar_from_parse(parse: &Parse) -> Result<Grammar> {
    if parse.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ranges = source_phrase_ranges(parse)?;
    let m = parse.tokens().len();
    let mut rules = Vec::with_capacity(m + 1);
    rules.push((1..=m).map(Symbol::Nonterminal).collect());
    for (tok, range) in parse.tokens().iter().zip(ranges) {
        rules.push(match (*tok, range) {
            (Token::Literal(b), _) => vec![Symbol::Terminal(b)],
            (Token::Copy { .. }, Some((a, b))) => (a..=b).map(Symbol::Nonterminal).collect(),
            (Token::Copy { .. }, None) => unreachable!("copies always have a source range"),
        });
    }
    Ok(Grammar::new_unchecked(0, rules))
}

/// Total right-hand-side symbol count.
pub fn grammar_size(g: &Grammar) -> usize {
    g.size()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lz77::parse_lz77;
    use crate::refine::break_phrases;
    use Symbol::{Nonterminal as N, Terminal as T};

    #[test]
    fn single_literal() {
        let g = grammar_from_parse(&parse_lz77(b"a")).unwrap();
        assert_eq!(g.rules(), &[vec![N(1)], vec![T(b'a')]]);
        assert_eq!(g.expand(), b"a");
    }

    #[test]
    fn aaaa_from_parse() {
        let g = grammar_from_parse(&break_phrases(&parse_lz77(b"aaaa")).unwrap()).unwrap();
        assert_eq!(
            g.rules(),
            &[
                vec![N(1), N(2), N(3)],
                vec![T(b'a')],
                vec![T(b'a')],
                vec![N(1), N(2)],
            ]
        );
        assert_eq!(g.size(), 7);
        assert_eq!(grammar_size(&g), 7);
        assert_eq!(g.expand(), b"aaaa");
        assert!(!g.is_cnf());
    }

    #[test]
    fn rejects_empty_and_unaligned() {
        assert_eq!(
            grammar_from_parse(&Parse::default()),
            Err(Error::EmptyInput)
        );
        let unaligned =
            parse_lz77(b"how-much-wood-would-a-woodchuck-chuck-if-a-woodchuck-could-chuck-wood?");
        assert!(matches!(
            grammar_from_parse(&unaligned),
            Err(Error::Alignment(_))
        ));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Grammar::new(0, vec![vec![N(1)], vec![N(0)]]),
            Err(Error::Cyclic(_))
        ));
        assert!(matches!(
            Grammar::new(0, vec![vec![N(0)]]),
            Err(Error::Cyclic(0))
        ));
        assert!(matches!(
            Grammar::new(0, vec![vec![T(b'a')], vec![T(b'b')]]),
            Err(Error::InvalidGrammar(_))
        ));
        assert!(matches!(
            Grammar::new(0, vec![vec![N(3)]]),
            Err(Error::InvalidGrammar(_))
        ));
        assert!(matches!(
            Grammar::new(0, vec![vec![]]),
            Err(Error::InvalidGrammar(_))
        ));
        assert!(matches!(
            Grammar::new(1, vec![]),
            Err(Error::InvalidGrammar(_))
        ));
    }

    #[test]
    fn expansion_reuses_spans() {
        // X0 -> X1 X1 X2, X1 -> a b, X2 -> X1 c
        let g = Grammar::new(
            0,
            vec![
                vec![N(1), N(1), N(2)],
                vec![T(b'a'), T(b'b')],
                vec![N(1), T(b'c')],
            ],
        )
        .unwrap();
        assert_eq!(g.expand(), b"abababc");
        assert_eq!(g.expand_from(2), b"abc");
        assert_eq!(g.expansion_lengths(), vec![7, 2, 3]);
    }

    #[test]
    fn cnf_detection() {
        let g = Grammar::new(0, vec![vec![N(1), N(1)], vec![T(b'a')]]).unwrap();
        assert!(g.is_cnf());
        assert_eq!(g.size(), 3);
        assert_eq!(g.to_string(), "X0 -> X1 X1\nX1 -> 'a'\n");
    }
}
