//! Shared test corpus.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const WOODCHUCK: &[u8] =
    b"how-much-wood-would-a-woodchuck-chuck-if-a-woodchuck-could-chuck-wood?";

pub const MAX_LEN: usize = 2000;

/// A named corpus text.
pub struct Sample {
    pub name: String,
    pub text: Vec<u8>,
}

/// `len` bytes drawn uniformly from the first `sigma` symbols.
pub fn random_text(rng: &mut impl Rng, sigma: usize, len: usize) -> Vec<u8> {
    let base = if sigma == 256 { 0 } else { b'a' as usize };
    (0..len)
        .map(|_| (base + rng.random_range(0..sigma)) as u8)
        .collect()
}

/// The Fibonacci word with `k` steps: f1 = b, f2 = a, f(k) = f(k-1) f(k-2).
pub fn fibonacci_word(k: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (b"b".to_vec(), b"a".to_vec());
    if k <= 1 {
        return prev;
    }
    for _ in 2..k {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = cur;
        cur = next;
    }
    cur
}

/// Random texts over alphabets of size 2, 4, 26 and 256, runs of `a`,
/// powers of `ab` and Fibonacci words, all of length at most [`MAX_LEN`].
/// Deterministic for a given seed.
pub fn corpus() -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1977);
    let mut out = Vec::new();
    for sigma in [2usize, 4, 26, 256] {
        for k in 0..240 {
            // half short, half spread over the whole range
            let len = if k % 2 == 0 {
                rng.random_range(1..=64)
            } else {
                rng.random_range(1..=MAX_LEN)
            };
            out.push(Sample {
                name: format!("random sigma={sigma} #{k} n={len}"),
                text: random_text(&mut rng, sigma, len),
            });
        }
        out.push(Sample {
            name: format!("random sigma={sigma} n={MAX_LEN}"),
            text: random_text(&mut rng, sigma, MAX_LEN),
        });
    }
    let run_lengths = (1..=40).chain([64, 100, 127, 128, 129, 500, 1000, 1024, MAX_LEN]);
    for k in run_lengths.clone() {
        out.push(Sample {
            name: format!("a^{k}"),
            text: vec![b'a'; k],
        });
    }
    for k in run_lengths.filter(|&k| 2 * k <= MAX_LEN) {
        out.push(Sample {
            name: format!("(ab)^{k}"),
            text: b"ab".repeat(k),
        });
    }
    for k in 1.. {
        let text = fibonacci_word(k);
        if text.len() > MAX_LEN {
            break;
        }
        out.push(Sample {
            name: format!("fibonacci {k} n={}", text.len()),
            text,
        });
    }
    out.push(Sample {
        name: "woodchuck".into(),
        text: WOODCHUCK.to_vec(),
    });
    out
}

/// Every string over `{a, b}` of length `1..=max`.
pub fn binary_strings(max: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for n in 1..=max {
        for bits in 0u32..(1 << n) {
            out.push((0..n).map(|k| b'a' + (bits >> k & 1) as u8).collect());
        }
    }
    out
}
