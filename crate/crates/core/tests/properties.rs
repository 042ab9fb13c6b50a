mod common;

use std::collections::{BTreeSet, HashSet};

use lzgrammar::bisection::{bisection_grammar, split_point};
use lzgrammar::certificate::{compress, Method};
use lzgrammar::cnf::{forest_tree_sizes, to_cnf};
use lzgrammar::format;
use lzgrammar::grammar::{grammar_from_parse, Symbol};
use lzgrammar::lz77::{decode_parse, parse_lz77, phrase_count, Parse, Token};
use lzgrammar::oracle::{first_occurrence, lcp_bounded};
use lzgrammar::rand_access::{BlockStructure, Retain};
use lzgrammar::refine::{break_phrases, check_alignment};
use lzgrammar::tape_sim::run_tape_parser;
use proptest::prelude::*;

/// Short texts over small alphabets repeat a lot; a few wide ones do not.
fn text() -> impl Strategy<Value = Vec<u8>> {
    prop_oneof![
        4 => prop::collection::vec(b'a'..=b'b', 1..200),
        2 => prop::collection::vec(b'a'..=b'd', 1..200),
        1 => prop::collection::vec(any::<u8>(), 1..100),
        1 => (1usize..60, 1usize..8).prop_map(|(k, w)| {
            (0..k * w).map(|x| b'a' + (x % w) as u8).collect()
        }),
    ]
}

fn naive_parse(text: &[u8]) -> Vec<Token> {
    let n = text.len();
    let mut out = Vec::new();
    let mut t = 1;
    while t <= n {
        let (mut best_i, mut best) = (0, 0);
        for i in 1..t {
            let l = lcp_bounded(text, i, t).unwrap();
            if l > best {
                (best_i, best) = (i, l);
            }
        }
        if best <= 1 {
            out.push(Token::Literal(text[t - 1]));
            t += 1;
        } else {
            out.push(Token::Copy {
                source: best_i,
                len: best,
            });
            t += best;
        }
    }
    out
}

fn breaks(parse: &Parse) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = parse.starts().into_iter().collect();
    set.insert(parse.text_len() + 1);
    set
}

fn ceil_log2(m: usize) -> usize {
    m.next_power_of_two().trailing_zeros() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_decodes_to_input(text in text()) {
        let parse = parse_lz77(&text);
        prop_assert!(parse.validate().is_ok());
        prop_assert_eq!(decode_parse(&parse).unwrap(), text);
    }

    #[test]
    fn parse_is_greedy_leftmost(text in prop::collection::vec(b'a'..=b'c', 1..80)) {
        prop_assert_eq!(parse_lz77(&text).into_tokens(), naive_parse(&text));
    }

    #[test]
    fn parse_format_roundtrip(text in text()) {
        let parse = parse_lz77(&text);
        prop_assert_eq!(format::read_parse(&format::write_parse(&parse)).unwrap(), parse);
    }

    #[test]
    fn refinement_invariants(text in text()) {
        let parse = parse_lz77(&text);
        let refined = break_phrases(&parse).unwrap();
        let (k, k2) = (phrase_count(&parse), phrase_count(&refined));
        prop_assert!(k2 >= k && k2 <= k * k);
        prop_assert!(check_alignment(&refined));
        prop_assert_eq!(decode_parse(&refined).unwrap(), text.clone());

        let before = breaks(&parse);
        let after = breaks(&refined);
        prop_assert!(before.is_subset(&after));
        // interior breaks of an original copy reappear in its source
        for (t, tok) in parse.starts().into_iter().zip(parse.tokens()) {
            if let Token::Copy { source, len } = *tok {
                for &p in after.range(t + 1..t + len) {
                    prop_assert!(after.contains(&(source + p - t)), "break {} not mapped", p);
                }
            }
        }
        // refining again changes nothing
        prop_assert_eq!(break_phrases(&refined).unwrap(), refined);
    }

    #[test]
    fn cnf_invariants(text in text()) {
        let refined = break_phrases(&parse_lz77(&text)).unwrap();
        let m = phrase_count(&refined);
        let g = grammar_from_parse(&refined).unwrap();
        prop_assert_eq!(g.expand(), text.clone());
        let cnf = to_cnf(&g).unwrap();
        prop_assert!(cnf.is_cnf());
        prop_assert!(cnf.production_count() <= 4 * m * (ceil_log2(m) + 2));
        prop_assert!(!cnf.rules().iter().any(|r| matches!(r.as_slice(), [Symbol::Nonterminal(_)])));
        prop_assert_eq!(cnf.expand(), text);
        prop_assert_eq!(forest_tree_sizes(m).iter().sum::<usize>(), m);
    }

    #[test]
    fn grammar_format_roundtrip(text in text()) {
        for method in [Method::Lz77Cnf, Method::Bisection] {
            let g = compress(&text, method).unwrap();
            let back = format::read_grammar(&format::write_grammar(&g).unwrap()).unwrap();
            prop_assert_eq!(back.expand(), text.clone());
            prop_assert_eq!(back.size(), g.size());
        }
        let pre = grammar_from_parse(&break_phrases(&parse_lz77(&text)).unwrap()).unwrap();
        let back = format::read_grammar(&format::write_grammar(&pre).unwrap()).unwrap();
        prop_assert_eq!(back.expand(), text);
    }

    #[test]
    fn bisection_invariants(text in prop::collection::vec(b'a'..=b'c', 1..=64)) {
        let g = bisection_grammar(&text).unwrap();
        prop_assert!(g.is_cnf());
        prop_assert_eq!(g.expand(), text);
        let mut seen = HashSet::new();
        for id in 0..g.production_count() {
            prop_assert!(seen.insert(g.expand_from(id)), "expansion of {} repeats", id);
        }
    }

    #[test]
    fn split_point_is_largest_smaller_power(len in 2usize..1_000_000) {
        let k = split_point(len);
        prop_assert!(k.is_power_of_two() && k < len && 2 * k >= len);
    }

    #[test]
    fn random_access_agrees_with_text(text in text(), base in 2usize..7) {
        let pruned = BlockStructure::build(&text, base, Retain::Reachable).unwrap();
        let full = BlockStructure::build(&text, base, Retain::All).unwrap();
        for (pos, &byte) in (1..).zip(&text) {
            prop_assert_eq!(pruned.access(pos).unwrap(), byte);
            prop_assert_eq!(full.access(pos).unwrap(), byte);
        }
        prop_assert!(pruned.size_report().retained_total() <= full.size_report().retained_total());
        let file = format::write_block_structure(&pruned);
        prop_assert_eq!(format::read_block_structure(&file).unwrap(), pruned);
    }

    #[test]
    fn tape_parser_matches(text in prop::collection::vec(b'a'..=b'c', 1..120)) {
        let (parse, stats) = run_tape_parser(&text);
        prop_assert_eq!(parse, parse_lz77(&text));
        prop_assert_eq!(stats.registers, 5);
        prop_assert!(stats.max_register <= text.len() + 1);
    }

    #[test]
    fn first_occurrence_is_no_later(text in text(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let n = text.len();
        let (x, y) = (a.index(n) + 1, b.index(n) + 1);
        let (lo, hi) = (x.min(y), x.max(y));
        let p = first_occurrence(&text, lo, hi).unwrap();
        prop_assert!(p <= lo);
        prop_assert_eq!(&text[p - 1..p + hi - lo], &text[lo - 1..hi]);
    }
}

#[test]
fn corpus_roundtrips_through_every_stage() {
    for s in common::corpus() {
        let parse = parse_lz77(&s.text);
        assert_eq!(decode_parse(&parse).unwrap(), s.text, "{}", s.name);
        for method in [Method::Best, Method::Lz77Cnf, Method::Bisection] {
            assert_eq!(
                compress(&s.text, method).unwrap().expand(),
                s.text,
                "{}",
                s.name
            );
        }
    }
}
