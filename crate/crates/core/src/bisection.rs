//! Bisection grammars.
//!
//! A block of length 1 derives its byte. A longer block splits into a left
//! part whose length is the largest power of two strictly below the block
//! length, and the remainder. Blocks with equal contents share one
//! nonterminal, so no two nonterminals of the result have the same
//! expansion.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Symbol};

/// Builds the Bisection grammar of `text`, start symbol at id 0.
pub fn bisection_grammar(text: &[u8]) -> Result<Grammar> {
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut b = Bisector {
        text,
        ids: HashMap::new(),
        rules: Vec::new(),
    };
    let root = b.block(0, text.len());
    Ok(renumber_from(root, b.rules))
}

/// Length of the left part when a block of length `len >= 2` is split.
pub fn split_point(len: usize) -> usize {
    debug_assert!(len >= 2);
    1 << (usize::BITS - 1 - (len - 1).leading_zeros())
}

struct Bisector<'a> {
    text: &'a [u8],
    ids: HashMap<&'a [u8], usize>,
    rules: Vec<Vec<Symbol>>,
}

impl<'a> Bisector<'a> {
    fn block(&mut self, from: usize, len: usize) -> usize {
        let content = &self.text[from..from + len];
        if let Some(&id) = self.ids.get(content) {
            return id;
        }
        let rhs = if len == 1 {
            vec![Symbol::Terminal(content[0])]
        } else {
            let left = split_point(len);
            let l = self.block(from, left);
            let r = self.block(from + left, len - left);
            vec![Symbol::Nonterminal(l), Symbol::Nonterminal(r)]
        };
        let id = self.rules.len();
        self.rules.push(rhs);
        self.ids.insert(content, id);
        id
    }
}

/// Renumbers in depth-first preorder so `root` becomes 0.
fn renumber_from(root: usize, rules: Vec<Vec<Symbol>>) -> Grammar {
    let mut new_id = vec![usize::MAX; rules.len()];
    let mut order = Vec::with_capacity(rules.len());
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        if new_id[id] != usize::MAX {
            continue;
        }
        new_id[id] = order.len();
        order.push(id);
        for sym in rules[id].iter().rev() {
            if let Symbol::Nonterminal(c) = *sym {
                stack.push(c);
            }
        }
    }
    let remapped = order
        .iter()
        .map(|&id| {
            rules[id]
                .iter()
                .map(|sym| match *sym {
                    Symbol::Nonterminal(c) => Symbol::Nonterminal(new_id[c]),
                    t => t,
                })
                .collect()
        })
        .collect();
    Grammar::new_unchecked(0, remapped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn distinct_expansions(g: &Grammar) -> bool {
        let all: HashSet<Vec<u8>> = (0..g.production_count())
            .map(|id| g.expand_from(id))
            .collect();
        all.len() == g.production_count()
    }

    #[test]
    fn split_points() {
        assert_eq!(split_point(2), 1);
        assert_eq!(split_point(3), 2);
        assert_eq!(split_point(4), 2);
        assert_eq!(split_point(5), 4);
        assert_eq!(split_point(8), 4);
        assert_eq!(split_point(9), 8);
        assert_eq!(split_point(71), 64);
    }

    #[test]
    fn hand_computed_sizes() {
        use Symbol::{Nonterminal as N, Terminal as T};
        let a = bisection_grammar(b"a").unwrap();
        assert_eq!(a.rules(), &[vec![T(b'a')]]);
        assert_eq!(a.size(), 1);

        let abab = bisection_grammar(b"abab").unwrap();
        assert_eq!(abab.size(), 6);
        assert_eq!(
            abab.rules(),
            &[
                vec![N(1), N(1)],
                vec![N(2), N(3)],
                vec![T(b'a')],
                vec![T(b'b')],
            ]
        );

        assert_eq!(bisection_grammar(b"aaaa").unwrap().size(), 5);
        let a8 = bisection_grammar(b"aaaaaaaa").unwrap();
        assert_eq!(a8.size(), 7);
        assert_eq!(a8.production_count(), 4);
    }

    #[test]
    fn expands_and_dedups() {
        for text in [
            &b"how-much-wood-would-a-woodchuck-chuck-if-a-woodchuck-could-chuck-wood?"[..],
            b"abracadabra",
            b"xyz",
            b"aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa",
        ] {
            let g = bisection_grammar(text).unwrap();
            assert!(g.is_cnf() || text.len() == 1);
            assert_eq!(g.expand(), text);
            assert!(distinct_expansions(&g));
        }
    }

    #[test]
    fn empty_is_rejected() {
        assert_eq!(bisection_grammar(b""), Err(Error::EmptyInput));
    }
}
