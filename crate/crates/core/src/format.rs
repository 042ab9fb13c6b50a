//! Line-oriented text formats.
//!
//! ```text
//! LZ77 v1 n=<n>
//! L <byte>            literal, byte in decimal
//! C <source> <len>    copy
//!
//! GRAMMAR v1 n=<n> start=<id> prods=<k>
//! <id> T <byte>       terminal production
//! <id> B <id> <id>    binary production
//! <id> S <id> ...     sequence of nonterminals (pre-CNF dumps only)
//!
//! RABLOCK v1 n=<n> b=<b> levels=<L+1>
//! LEVEL <i> len=<len_i> blocks=<count>
//! <j> <pointer>       for len_i > 1
//! <j> <byte>          for len_i = 1
//! ```
//!
//! Every line ends with `\n`. Readers accept a trailing `\r` and ignore
//! blank lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Symbol};
use crate::lz77::{Parse, Token};
use crate::rand_access::BlockStructure;

pub fn write_parse(parse: &Parse) -> String {
    let mut out = format!("LZ77 v1 n={}\n", parse.text_len());
    for tok in parse.tokens() {
        match *tok {
            Token::Literal(b) => writeln!(out, "L {b}"),
            Token::Copy { source, len } => writeln!(out, "C {source} {len}"),
        }
        .expect("writing to a String");
    }
    out
}

/// Reads a token stream and checks it against the parse invariants.
pub fn read_parse(input: &str) -> Result<Parse> {
    let mut lines = Lines::new(input);
    let (line_no, header) = lines.next_required("missing header")?;
    let fields = header_fields(line_no, header, &["LZ77", "v1"], &["n"])?;
    let n = fields[0];

    let mut tokens = Vec::new();
    for (line_no, line) in lines {
        let parts: Vec<&str> = line.split_ascii_whitespace().collect();
        let tok = match parts.as_slice() {
            ["L", b] => Token::Literal(parse_num::<u8>(line_no, b)?),
            ["C", source, len] => Token::Copy {
                source: parse_num(line_no, source)?,
                len: parse_num(line_no, len)?,
            },
            _ => return Err(Error::format(line_no, format!("bad token record `{line}`"))),
        };
        tokens.push(tok);
    }
    let parse = Parse::from_tokens(tokens);
    if parse.text_len() != n {
        return Err(Error::format(
            1,
            format!("header says n={n} but tokens cover {}", parse.text_len()),
        ));
    }
    parse.validate()?;
    Ok(parse)
}

/// Writes a grammar. Productions mixing terminals and nonterminals, or with
/// several terminals, have no representation and are rejected.
pub fn write_grammar(g: &Grammar) -> Result<String> {
    let n = g.expansion_lengths()[g.start()];
    let mut out = format!(
        "GRAMMAR v1 n={n} start={} prods={}\n",
        g.start(),
        g.production_count()
    );
    for (id, rhs) in g.rules().iter().enumerate() {
        match rhs.as_slice() {
            [Symbol::Terminal(b)] => writeln!(out, "{id} T {b}"),
            [Symbol::Nonterminal(l), Symbol::Nonterminal(r)] => writeln!(out, "{id} B {l} {r}"),
            syms => {
                let ids = syms
                    .iter()
                    .map(|s| match *s {
                        Symbol::Nonterminal(c) => Ok(c.to_string()),
                        Symbol::Terminal(_) => Err(Error::Shape(format!(
                            "X{id} mixes terminals into a sequence"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                writeln!(out, "{id} S {}", ids.join(" "))
            }
        }
        .expect("writing to a String");
    }
    Ok(out)
}

/// Reads a grammar file. Cycles surface as [`Error::Cyclic`]; everything
/// else malformed as [`Error::Format`] or [`Error::InvalidGrammar`].
pub fn read_grammar(input: &str) -> Result<Grammar> {
    let mut lines = Lines::new(input);
    let (line_no, header) = lines.next_required("missing header")?;
    let fields = header_fields(
        line_no,
        header,
        &["GRAMMAR", "v1"],
        &["n", "start", "prods"],
    )?;
    let (n, start, prods) = (fields[0], fields[1], fields[2]);
    // each production needs its own line
    if prods > input.len() {
        return Err(Error::format(
            line_no,
            format!("prods={prods} exceeds the file size"),
        ));
    }

    let mut rules: Vec<Option<Vec<Symbol>>> = vec![None; prods];
    for (line_no, line) in lines {
        let parts: Vec<&str> = line.split_ascii_whitespace().collect();
        let (id, kind, rest) = match parts.as_slice() {
            [id, kind, rest @ ..] => (parse_num::<usize>(line_no, id)?, *kind, rest),
            _ => return Err(Error::format(line_no, format!("bad production `{line}`"))),
        };
        let nt = |s: &&str| parse_num::<usize>(line_no, s).map(Symbol::Nonterminal);
        let rhs = match (kind, rest) {
            ("T", [b]) => vec![Symbol::Terminal(parse_num(line_no, b)?)],
            ("B", [l, r]) => vec![nt(l)?, nt(r)?],
            ("S", ids) if !ids.is_empty() => ids.iter().map(nt).collect::<Result<_>>()?,
            _ => return Err(Error::format(line_no, format!("bad production `{line}`"))),
        };
        let slot = rules
            .get_mut(id)
            .ok_or_else(|| Error::format(line_no, format!("id {id} exceeds prods={prods}")))?;
        if slot.replace(rhs).is_some() {
            return Err(Error::format(
                line_no,
                format!("duplicate production for {id}"),
            ));
        }
    }
    let rules = rules
        .into_iter()
        .enumerate()
        .map(|(id, r)| r.ok_or_else(|| Error::format(1, format!("no production for {id}"))))
        .collect::<Result<Vec<_>>>()?;
    let g = Grammar::new(start, rules)?;
    let derived = g.expansion_lengths()[start];
    if derived != n as u64 {
        return Err(Error::format(
            1,
            format!("header says n={n} but the grammar derives {derived} bytes"),
        ));
    }
    Ok(g)
}

pub fn write_block_structure(bs: &BlockStructure) -> String {
    let mut out = format!(
        "RABLOCK v1 n={} b={} levels={}\n",
        bs.text_len(),
        bs.base(),
        bs.levels().len()
    );
    for (i, level) in bs.levels().iter().enumerate() {
        writeln!(
            out,
            "LEVEL {i} len={} blocks={}",
            level.block_len(),
            level.retained()
        )
        .expect("writing to a String");
        for (j, v) in level.records() {
            writeln!(out, "{j} {v}").expect("writing to a String");
        }
    }
    out
}

pub fn read_block_structure(input: &str) -> Result<BlockStructure> {
    let mut lines = Lines::new(input);
    let (line_no, header) = lines.next_required("missing header")?;
    let fields = header_fields(line_no, header, &["RABLOCK", "v1"], &["n", "b", "levels"])?;
    let (n, base, count) = (fields[0], fields[1], fields[2]);

    let mut levels = Vec::with_capacity(count.min(64));
    for i in 0..count {
        let (line_no, line) = lines.next_required("missing LEVEL line")?;
        let f = header_fields(
            line_no,
            line,
            &["LEVEL", &i.to_string()],
            &["len", "blocks"],
        )?;
        let (len, blocks) = (f[0], f[1]);
        let mut records = Vec::with_capacity(blocks.min(1 << 16));
        for _ in 0..blocks {
            let (line_no, line) = lines.next_required("missing block record")?;
            let parts: Vec<&str> = line.split_ascii_whitespace().collect();
            match parts.as_slice() {
                [j, v] => records.push((parse_num(line_no, j)?, parse_num(line_no, v)?)),
                _ => return Err(Error::format(line_no, format!("bad block record `{line}`"))),
            }
        }
        levels.push((len, records));
    }
    if let Some((line_no, line)) = lines.next() {
        return Err(Error::format(
            line_no,
            format!("unexpected trailing line `{line}`"),
        ));
    }
    BlockStructure::from_levels(n, base, levels)
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(input: &'a str) -> Self {
        Lines {
            inner: input.lines().enumerate(),
        }
    }

    fn next_required(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next().ok_or_else(|| Error::format(0, what))
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        for (k, line) in self.inner.by_ref() {
            let line = line.trim_end_matches('\r');
            if !line.trim().is_empty() {
                return Some((k + 1, line));
            }
        }
        None
    }
}

/// Checks the literal leading words and returns the `key=value` numbers in
/// the order of `keys`.
fn header_fields(line_no: usize, line: &str, words: &[&str], keys: &[&str]) -> Result<Vec<usize>> {
    let parts: Vec<&str> = line.split_ascii_whitespace().collect();
    if parts.len() != words.len() + keys.len() || parts[..words.len()] != *words {
        return Err(Error::format(
            line_no,
            format!("expected `{} ...`", words.join(" ")),
        ));
    }
    parts[words.len()..]
        .iter()
        .zip(keys)
        .map(|(part, key)| match part.split_once('=') {
            Some((k, v)) if k == *key => parse_num(line_no, v),
            _ => Err(Error::format(line_no, format!("expected `{key}=<number>`"))),
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(line_no: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::format(line_no, format!("`{s}` is not a valid number")))
}
