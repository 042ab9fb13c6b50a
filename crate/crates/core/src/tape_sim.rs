//! LZ77 on a sequential tape with a fixed register file.
//!
//! The parser reads its input only through a single head that moves one
//! cell at a time. Comparing `s[i + j]` with `s[t + j]` means walking the
//! head to one cell, latching the byte in finite control, and walking to the
//! other. A seek of `d` cells is accounted as `d` unit moves in one step of
//! bookkeeping, which keeps long runs tractable without changing any count.
//!
//! All working state besides the latched byte lives in a [`RegisterFile`]
//! whose size is fixed before the input is seen; every register stays in
//! `[0, n + 1]`.

use std::fmt;

use crate::lz77::{Parse, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    Left,
    Right,
}

/// A read-only tape with one head, counting moves and direction flips.
#[derive(Debug)]
pub struct Tape<'a> {
    contents: &'a [u8],
    head: usize,
    direction: Option<Direction>,
    reversals: u64,
    steps: u64,
}

impl<'a> Tape<'a> {
    /// Head starts on cell 1.
    pub fn new(contents: &'a [u8]) -> Self {
        Tape {
            contents,
            head: 1,
            direction: None,
            reversals: 0,
            steps: 0,
        }
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn reversals(&self) -> u64 {
        self.reversals
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// One cell left or right.
    pub fn step(&mut self, right: bool) {
        let dir = if right {
            Direction::Right
        } else {
            Direction::Left
        };
        self.turn(dir);
        self.steps += 1;
        if right {
            self.head += 1;
        } else {
            self.head -= 1;
        }
    }

    /// Walks to cell `target`.
    pub fn seek(&mut self, target: usize) {
        if target == self.head {
            return;
        }
        let dir = if target > self.head {
            Direction::Right
        } else {
            Direction::Left
        };
        self.turn(dir);
        self.steps += self.head.abs_diff(target) as u64;
        self.head = target;
    }

    fn turn(&mut self, dir: Direction) {
        if self.direction.is_some_and(|d| d != dir) {
            self.reversals += 1;
        }
        self.direction = Some(dir);
    }

    /// The byte under the head.
    pub fn read(&self) -> u8 {
        self.contents[self.head - 1]
    }
}

/// Named integer registers, fixed at construction.
#[derive(Debug)]
pub struct RegisterFile {
    names: &'static [&'static str],
    values: Vec<usize>,
    max_seen: usize,
}

impl RegisterFile {
    pub fn new(names: &'static [&'static str]) -> Self {
        RegisterFile {
            names,
            values: vec![0; names.len()],
            max_seen: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn names(&self) -> &[&'static str] {
        self.names
    }

    pub fn get(&self, r: usize) -> usize {
        self.values[r]
    }

    pub fn set(&mut self, r: usize, v: usize) {
        self.max_seen = self.max_seen.max(v);
        self.values[r] = v;
    }

    /// Largest value any register has held.
    pub fn max_seen(&self) -> usize {
        self.max_seen
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TapeStats {
    pub reversals: u64,
    pub steps: u64,
    pub registers: usize,
    pub max_register: usize,
}

impl fmt::Display for TapeStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reversals={}", self.reversals)?;
        writeln!(f, "steps={}", self.steps)?;
        writeln!(f, "registers={}", self.registers)?;
        writeln!(f, "max_register={}", self.max_register)
    }
}

const REGISTERS: &[&str] = &["t", "i", "j", "max_match", "max_length"];
const T: usize = 0;
const I: usize = 1;
const J: usize = 2;
const MAX_MATCH: usize = 3;
const MAX_LENGTH: usize = 4;

/// Runs the scan-every-source LZ77 parser against a tape.
pub fn run_tape_parser(text: &[u8]) -> (Parse, TapeStats) {
    let n = text.len();
    let mut tape = Tape::new(text);
    let mut reg = RegisterFile::new(REGISTERS);
    let mut out = Vec::new();

    reg.set(T, 1);
    while reg.get(T) <= n {
        reg.set(MAX_MATCH, 0);
        reg.set(MAX_LENGTH, 0);
        reg.set(I, 1);
        while reg.get(I) < reg.get(T) {
            reg.set(J, 0);
            // the match may not run past t - 1 or past the end of the text
            while reg.get(I) + reg.get(J) < reg.get(T) && reg.get(T) + reg.get(J) <= n {
                tape.seek(reg.get(I) + reg.get(J));
                let latched = tape.read();
                tape.seek(reg.get(T) + reg.get(J));
                if tape.read() != latched {
                    break;
                }
                reg.set(J, reg.get(J) + 1);
            }
            if reg.get(J) > reg.get(MAX_LENGTH) {
                reg.set(MAX_MATCH, reg.get(I));
                reg.set(MAX_LENGTH, reg.get(J));
            }
            reg.set(I, reg.get(I) + 1);
        }
        if reg.get(MAX_LENGTH) <= 1 {
            tape.seek(reg.get(T));
            out.push(Token::Literal(tape.read()));
            reg.set(T, reg.get(T) + 1);
        } else {
            out.push(Token::Copy {
                source: reg.get(MAX_MATCH),
                len: reg.get(MAX_LENGTH),
            });
            reg.set(T, reg.get(T) + reg.get(MAX_LENGTH));
        }
    }

    let stats = TapeStats {
        reversals: tape.reversals(),
        steps: tape.steps(),
        registers: reg.len(),
        max_register: reg.max_seen(),
    };
    (Parse::from_tokens(out), stats)
}
