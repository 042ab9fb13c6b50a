//! Chomsky normal form for grammars read off a refined parse.
//!
//! The phrase nonterminals `X1 .. Xm` become the leaves of a forest of
//! complete binary trees, built left to right with each tree as large as the
//! remaining leaf count allows (so the tree sizes are the binary digits of
//! `m`, largest first). Every internal node gets a nonterminal `X[a,b]`
//! naming the leaf interval it spans.
//!
//! Any run `Xa .. Xb` on a right-hand side is then rewritten into binary
//! productions over interval nonterminals:
//!
//! * a run that crosses a tree boundary splits at the first boundary, so the
//!   left part is a suffix of one tree and the right part starts at the
//!   leftmost leaf of the next tree;
//! * a run inside one tree splits at the midpoint of the lowest common
//!   ancestor of its two end leaves, which peels off the largest complete
//!   subtree at each step.
//!
//! Interval nonterminals are memoized by `[a,b]`, so equal runs share
//! productions. A run of a single nonterminal would be a unit production;
//! it is replaced by a copy of the child's (already binary) right-hand side.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Symbol};

/// What a nonterminal of a CNF grammar stands for, in 1-based leaf indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CnfLabel {
    Start,
    /// An original phrase nonterminal.
    Phrase(usize),
    /// A forest node or decomposition piece spanning leaves `a..=b`.
    Range(usize, usize),
}

/// Leaf counts of the forest's trees, left to right.
pub fn forest_tree_sizes(leaves: usize) -> Vec<usize> {
    (0..usize::BITS)
        .rev()
        .map(|bit| 1usize << bit)
        .filter(|&size| leaves & size != 0)
        .collect()
}

/// Converts a grammar shaped like [`crate::grammar::grammar_from_parse`]
/// output into CNF.
pub fn to_cnf(g: &Grammar) -> Result<Grammar> {
    to_cnf_labeled(g).map(|(g, _)| g)
}

/// Like [`to_cnf`], also returning a label for every nonterminal.
pub fn to_cnf_labeled(g: &Grammar) -> Result<(Grammar, Vec<CnfLabel>)> {
    let shape = Shape::of(g)?;
    let m = shape.leaves.len();

    let mut builder = Builder::new(m);
    // forest nodes, created up front so their ids precede the pieces
    let mut first = 1;
    for size in forest_tree_sizes(m) {
        builder.range(first, first + size - 1);
        first += size;
    }

    // `None` marks a unit production resolved in a second pass.
    let mut leaf_rhs: Vec<Option<Vec<Symbol>>> = vec![None; m + 1];
    let mut unit_of = vec![0usize; m + 1];
    for (k, run) in shape.runs.iter().enumerate().skip(1) {
        match *run {
            Run::Terminal(b) => leaf_rhs[k] = Some(vec![Symbol::Terminal(b)]),
            Run::Leaves(a, b) if a == b => unit_of[k] = a,
            Run::Leaves(a, b) => leaf_rhs[k] = Some(builder.pair(a, b)),
        }
    }
    for k in 1..=m {
        if leaf_rhs[k].is_none() {
            leaf_rhs[k] = Some(resolve_unit(k, &leaf_rhs, &unit_of));
        }
    }
    let start_rhs = if m == 1 {
        leaf_rhs[1].clone().expect("resolved")
    } else {
        builder.pair(1, m)
    };

    builder.rules[0] = start_rhs;
    for (rule, rhs) in builder.rules[1..=m].iter_mut().zip(&mut leaf_rhs[1..]) {
        *rule = rhs.take().expect("resolved");
    }
    Ok(builder.finish())
}

fn resolve_unit(k: usize, rhs: &[Option<Vec<Symbol>>], unit_of: &[usize]) -> Vec<Symbol> {
    let mut at = k;
    // acyclicity of the input bounds this walk by m steps
    loop {
        if let Some(r) = &rhs[at] {
            return r.clone();
        }
        at = unit_of[at];
    }
}

enum Run {
    Terminal(u8),
    /// Leaf indices, 1-based, inclusive.
    Leaves(usize, usize),
}

struct Shape {
    /// leaves[k - 1] is the grammar id of leaf k
    leaves: Vec<usize>,
    /// runs[k] is leaf k's right-hand side; runs[0] is unused
    runs: Vec<Run>,
}

impl Shape {
    fn of(g: &Grammar) -> Result<Shape> {
        let mut leaf_index = vec![0usize; g.production_count()];
        let mut leaves = Vec::new();
        for sym in g.rule(g.start()) {
            match *sym {
                Symbol::Nonterminal(id) if id != g.start() && leaf_index[id] == 0 => {
                    leaves.push(id);
                    leaf_index[id] = leaves.len();
                }
                _ => {
                    return Err(Error::Shape(
                        "start must derive a sequence of distinct phrase nonterminals".into(),
                    ))
                }
            }
        }
        if leaves.len() + 1 != g.production_count() {
            return Err(Error::Shape(
                "every nonterminal other than the start must be a phrase".into(),
            ));
        }

        let mut runs = vec![Run::Terminal(0)];
        for &id in &leaves {
            let run = match g.rule(id) {
                [Symbol::Terminal(b)] => Run::Terminal(*b),
                rhs => {
                    let idx: Vec<usize> = rhs
                        .iter()
                        .map(|sym| match *sym {
                            Symbol::Nonterminal(c) if leaf_index[c] > 0 => Ok(leaf_index[c]),
                            _ => Err(Error::Shape(format!(
                                "X{id} is neither a terminal nor a run of phrases"
                            ))),
                        })
                        .collect::<Result<_>>()?;
                    if idx.windows(2).any(|w| w[1] != w[0] + 1) {
                        return Err(Error::Shape(format!(
                            "X{id} derives phrases that are not consecutive"
                        )));
                    }
                    Run::Leaves(idx[0], idx[idx.len() - 1])
                }
            };
            runs.push(run);
        }
        Ok(Shape { leaves, runs })
    }
}

struct Builder {
    m: usize,
    /// start offset (1-based leaf index) of each tree, ascending
    tree_starts: Vec<usize>,
    rules: Vec<Vec<Symbol>>,
    labels: Vec<CnfLabel>,
    memo: HashMap<(usize, usize), usize>,
}

impl Builder {
    fn new(m: usize) -> Self {
        let mut tree_starts = Vec::new();
        let mut first = 1;
        for size in forest_tree_sizes(m) {
            tree_starts.push(first);
            first += size;
        }
        let mut labels = vec![CnfLabel::Start];
        labels.extend((1..=m).map(CnfLabel::Phrase));
        Builder {
            m,
            tree_starts,
            rules: vec![Vec::new(); m + 1],
            labels,
            memo: HashMap::new(),
        }
    }

    /// The tree containing leaf `a`, as `(first leaf, last leaf)`.
    fn tree_of(&self, a: usize) -> (usize, usize) {
        let t = self.tree_starts.partition_point(|&s| s <= a) - 1;
        let end = self.tree_starts.get(t + 1).map_or(self.m, |&next| next - 1);
        (self.tree_starts[t], end)
    }

    /// Where the run `a..=b` (a < b) is cut: it becomes `a..=cut` and
    /// `cut+1..=b`.
    fn split(&self, a: usize, b: usize) -> usize {
        let (first, last) = self.tree_of(a);
        if b > last {
            return last;
        }
        let (x, y) = (a - first, b - first);
        let height = usize::BITS - (x ^ y).leading_zeros();
        let block = 1usize << height;
        let lca_start = x & !(block - 1);
        first + lca_start + block / 2 - 1
    }

    /// The two symbols a run `a..=b` (a < b) rewrites to.
    fn pair(&mut self, a: usize, b: usize) -> Vec<Symbol> {
        let cut = self.split(a, b);
        let left = self.range(a, cut);
        let right = self.range(cut + 1, b);
        vec![Symbol::Nonterminal(left), Symbol::Nonterminal(right)]
    }

    /// The nonterminal deriving leaves `a..=b`.
    fn range(&mut self, a: usize, b: usize) -> usize {
        if a == b {
            return a;
        }
        if let Some(&id) = self.memo.get(&(a, b)) {
            return id;
        }
        let rhs = self.pair(a, b);
        let id = self.rules.len();
        self.rules.push(rhs);
        self.labels.push(CnfLabel::Range(a, b));
        self.memo.insert((a, b), id);
        id
    }

    /// Drops nonterminals unreachable from the start and renumbers densely,
    /// keeping relative order.
    fn finish(self) -> (Grammar, Vec<CnfLabel>) {
        let count = self.rules.len();
        let mut reachable = vec![false; count];
        reachable[0] = true;
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            for sym in &self.rules[id] {
                if let Symbol::Nonterminal(c) = *sym {
                    if !reachable[c] {
                        reachable[c] = true;
                        stack.push(c);
                    }
                }
            }
        }
        let mut new_id = vec![usize::MAX; count];
        let mut next = 0;
        for id in 0..count {
            if reachable[id] {
                new_id[id] = next;
                next += 1;
            }
        }
        let mut rules = Vec::with_capacity(next);
        let mut labels = Vec::with_capacity(next);
        for (id, (rhs, label)) in self.rules.into_iter().zip(self.labels).enumerate() {
            if !reachable[id] {
                continue;
            }
            rules.push(
                rhs.into_iter()
                    .map(|sym| match sym {
                        Symbol::Nonterminal(c) => Symbol::Nonterminal(new_id[c]),
                        t => t,
                    })
                    .collect(),
            );
            labels.push(label);
        }
        (Grammar::new_unchecked(0, rules), labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::grammar_from_parse;
    use crate::lz77::parse_lz77;
    use crate::refine::break_phrases;

    fn labeled(text: &[u8]) -> (Grammar, Vec<CnfLabel>) {
        let refined = break_phrases(&parse_lz77(text)).unwrap();
        to_cnf_labeled(&grammar_from_parse(&refined).unwrap()).unwrap()
    }

    /// Right-hand side of the nonterminal labeled `lhs`, as labels.
    fn rhs_labels(g: &Grammar, labels: &[CnfLabel], lhs: CnfLabel) -> Vec<CnfLabel> {
        let id = labels
            .iter()
            .position(|&l| l == lhs)
            .expect("label present");
        g.rule(id)
            .iter()
            .map(|s| match *s {
                Symbol::Nonterminal(c) => labels[c],
                Symbol::Terminal(_) => panic!("terminal"),
            })
            .collect()
    }

    #[test]
    fn tree_sizes_are_binary_digits() {
        assert_eq!(forest_tree_sizes(35), vec![32, 2, 1]);
        assert_eq!(forest_tree_sizes(3), vec![2, 1]);
        assert_eq!(forest_tree_sizes(1), vec![1]);
        assert_eq!(forest_tree_sizes(64), vec![64]);
        assert!(forest_tree_sizes(0).is_empty());
    }

    #[test]
    fn single_byte_collapses_to_start() {
        let (g, labels) = labeled(b"a");
        assert_eq!(g.rules(), &[vec![Symbol::Terminal(b'a')]]);
        assert_eq!(labels, vec![CnfLabel::Start]);
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn aaaa() {
        use CnfLabel::*;
        let (g, labels) = labeled(b"aaaa");
        assert!(g.is_cnf());
        assert_eq!(g.expand(), b"aaaa");
        assert_eq!(rhs_labels(&g, &labels, Start), vec![Range(1, 2), Phrase(3)]);
        assert_eq!(
            rhs_labels(&g, &labels, Range(1, 2)),
            vec![Phrase(1), Phrase(2)]
        );
        assert_eq!(
            rhs_labels(&g, &labels, Phrase(3)),
            vec![Phrase(1), Phrase(2)]
        );
        assert_eq!(g.production_count(), 5);
        assert_eq!(g.size(), 8);
    }

    #[test]
    fn woodchuck_display_productions() {
        use CnfLabel::*;
        let text = b"how-much-wood-would-a-woodchuck-chuck-if-a-woodchuck-could-chuck-wood?";
        let (g, labels) = labeled(text);
        assert!(g.is_cnf());
        assert_eq!(g.expand(), text);
        let cases = [
            (Start, [Range(1, 32), Range(33, 35)]),
            (Range(1, 32), [Range(1, 16), Range(17, 32)]),
            (Range(1, 16), [Range(1, 8), Range(9, 16)]),
            (Range(1, 8), [Range(1, 4), Range(5, 8)]),
            (Range(17, 24), [Range(17, 20), Range(21, 24)]),
            (Range(29, 32), [Range(29, 30), Range(31, 32)]),
            (Range(33, 35), [Range(33, 34), Phrase(35)]),
            (Range(1, 2), [Phrase(1), Phrase(2)]),
            (Range(33, 34), [Phrase(33), Phrase(34)]),
            (Phrase(14), [Phrase(9), Phrase(10)]),
            (Phrase(31), [Range(19, 24), Range(25, 27)]),
            (Range(19, 24), [Range(19, 20), Range(21, 24)]),
            (Range(25, 27), [Range(25, 26), Phrase(27)]),
            (Phrase(34), [Range(10, 12), Phrase(13)]),
            (Range(10, 12), [Phrase(10), Range(11, 12)]),
        ];
        for (lhs, rhs) in cases {
            assert_eq!(rhs_labels(&g, &labels, lhs), rhs, "{lhs:?}");
        }
    }

    #[test]
    fn rejects_other_shapes() {
        use Symbol::{Nonterminal as N, Terminal as T};
        let mixed = Grammar::new(0, vec![vec![N(1), T(b'x')], vec![T(b'a')]]).unwrap();
        assert!(matches!(to_cnf(&mixed), Err(Error::Shape(_))));
        let gap = Grammar::new(
            0,
            vec![
                vec![N(1), N(2), N(3), N(4)],
                vec![T(b'a')],
                vec![T(b'b')],
                vec![T(b'c')],
                vec![N(1), N(3)],
            ],
        )
        .unwrap();
        assert!(matches!(to_cnf(&gap), Err(Error::Shape(_))));
    }
}
