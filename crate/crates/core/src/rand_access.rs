//! Random access through leveled first-occurrence pointers.
//!
//! Level `i` cuts the text into consecutive blocks of length
//! `len_i = ceil(n / b^i)`, starting at position 1 (the last block may be
//! shorter). The levels run from `i = 0`, a single block holding the whole
//! text, down to the first level `L` whose blocks have length 1.
//!
//! A block with `len_i > 1` stores `p`, the first position in the text where
//! its content occurs. Position `p + off` then holds the same byte as offset
//! `off` of the block, and it lies in block `(p + off - 1) / len_{i+1}` of the
//! next level at offset `(p + off - 1) % len_{i+1}`. A unit block stores its
//! byte. An access therefore makes exactly `L` level transitions.
//!
//! Only blocks that some descent can reach are kept. Since a block's
//! children form a contiguous index range, the reachable set of each level
//! is a union of intervals computed from the level above.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default base: `max(2, round(2^sqrt(log2 n)))`.
pub fn default_base(n: usize) -> usize {
    if n <= 1 {
        return 2;
    }
    let b = (n as f64).log2().sqrt().exp2().round() as usize;
    b.max(2)
}

/// Block lengths `len_0 = n, .., len_L = 1` for text length `n >= 1`.
pub fn level_lengths(n: usize, base: usize) -> Vec<usize> {
    debug_assert!(n >= 1 && base >= 2);
    let mut lens = vec![n];
    let mut pow = 1usize;
    while *lens.last().unwrap() > 1 {
        pow = pow.saturating_mul(base);
        lens.push(n.div_ceil(pow));
    }
    lens
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    len: usize,
    /// retained block indices, ascending
    indices: Vec<usize>,
    /// first-occurrence pointer for `len > 1`, else the byte
    values: Vec<usize>,
}

impl Level {
    pub fn block_len(&self) -> usize {
        self.len
    }

    pub fn retained(&self) -> usize {
        self.indices.len()
    }

    /// `(index, value)` pairs in ascending index order.
    pub fn records(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.indices
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }

    fn get(&self, j: usize) -> Option<usize> {
        self.indices.binary_search(&j).ok().map(|k| self.values[k])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    n: usize,
    base: usize,
    levels: Vec<Level>,
}

/// Which blocks a build keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Retain {
    /// Only blocks some access can visit.
    Reachable,
    /// Every block of every level.
    All,
}

/// Builds the pruned structure for `text` with base `b`.
pub fn build_block_structure(text: &[u8], base: usize) -> Result<BlockStructure> {
    BlockStructure::build(text, base, Retain::Reachable)
}

impl BlockStructure {
    pub fn build(text: &[u8], base: usize, retain: Retain) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        if base < 2 {
            return Err(Error::BadBase(base));
        }
        let n = text.len();
        let lens = level_lengths(n, base);
        let mut levels = Vec::with_capacity(lens.len());
        let mut indices = vec![0usize];

        for (i, &len) in lens.iter().enumerate() {
            if retain == Retain::All {
                indices = (0..n.div_ceil(len)).collect();
            }
            if len == 1 {
                let values = indices.iter().map(|&j| text[j] as usize).collect();
                levels.push(Level {
                    len,
                    indices,
                    values,
                });
                break;
            }
            let values = first_occurrences(text, len, &indices);
            let next_len = lens[i + 1];
            let mut spans: Vec<(usize, usize)> = indices
                .iter()
                .zip(&values)
                .map(|(&j, &p)| {
                    let block = block_len(n, len, j);
                    ((p - 1) / next_len, (p + block - 2) / next_len)
                })
                .collect();
            spans.sort_unstable();
            let mut next = Vec::new();
            for (lo, hi) in spans {
                let from = next.last().map_or(lo, |&last: &usize| lo.max(last + 1));
                next.extend(from..=hi);
            }
            levels.push(Level {
                len,
                indices,
                values,
            });
            indices = next;
        }
        Ok(BlockStructure { n, base, levels })
    }

    /// Reassembles a structure from stored levels, checking level lengths,
    /// index order and pointer ranges.
    pub fn from_levels(
        n: usize,
        base: usize,
        levels: Vec<(usize, Vec<(usize, usize)>)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if base < 2 {
            return Err(Error::BadBase(base));
        }
        let lens = level_lengths(n, base);
        if levels.len() != lens.len() {
            return Err(Error::InvalidStructure(format!(
                "expected {} levels, found {}",
                lens.len(),
                levels.len()
            )));
        }
        let mut out = Vec::with_capacity(levels.len());
        for (i, ((len, records), &want)) in levels.into_iter().zip(&lens).enumerate() {
            if len != want {
                return Err(Error::InvalidStructure(format!(
                    "level {i} has block length {len}, expected {want}"
                )));
            }
            let blocks = n.div_ceil(len);
            let mut indices = Vec::with_capacity(records.len());
            let mut values = Vec::with_capacity(records.len());
            for (j, v) in records {
                if j >= blocks || indices.last().is_some_and(|&prev| prev >= j) {
                    return Err(Error::InvalidStructure(format!(
                        "level {i}: block index {j} out of order or range"
                    )));
                }
                let ok = if len == 1 {
                    v <= u8::MAX as usize
                } else {
                    v >= 1 && v + block_len(n, len, j) - 1 <= n
                };
                if !ok {
                    return Err(Error::InvalidStructure(format!(
                        "level {i}: block {j} has invalid value {v}"
                    )));
                }
                indices.push(j);
                values.push(v);
            }
            out.push(Level {
                len,
                indices,
                values,
            });
        }
        Ok(BlockStructure {
            n,
            base,
            levels: out,
        })
    }

    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// `L`, the number of level transitions every access makes.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// The byte at 1-based `pos`.
    pub fn access(&self, pos: usize) -> Result<u8> {
        self.access_traced(pos).map(|(b, _)| b)
    }

    /// The byte at `pos` and the number of level transitions taken.
    pub fn access_traced(&self, pos: usize) -> Result<(u8, usize)> {
        if pos == 0 || pos > self.n {
            return Err(Error::OutOfRange {
                pos,
                len: 1,
                n: self.n,
            });
        }
        let mut j = 0usize;
        let mut off = pos - 1;
        for (i, level) in self.levels.iter().enumerate() {
            let value = level
                .get(j)
                .ok_or(Error::MissingBlock { level: i, index: j })?;
            if level.len == 1 {
                return Ok((value as u8, i));
            }
            let next_len = self.levels[i + 1].len;
            // q - 1 with q = p + off the absolute 1-based position
            let q0 = value + off - 1;
            j = q0 / next_len;
            off = q0 % next_len;
        }
        unreachable!("the last level always has unit blocks")
    }

    /// `len` bytes starting at 1-based `pos`.
    pub fn extract(&self, pos: usize, len: usize) -> Result<Vec<u8>> {
        if len == 0 {
            return Ok(Vec::new());
        }
        if pos == 0 || pos.checked_add(len - 1).is_none_or(|end| end > self.n) {
            return Err(Error::OutOfRange {
                pos,
                len,
                n: self.n,
            });
        }
        (pos..pos + len).map(|p| self.access(p)).collect()
    }

    pub fn size_report(&self) -> SizeReport {
        let pointer_bits = bits_for(self.n + 1);
        let mut per_level = Vec::with_capacity(self.levels.len());
        let mut pointers = 0;
        let mut unit_bytes = 0;
        let mut estimated_bits = 0;
        for level in &self.levels {
            let retained = level.retained();
            per_level.push(retained);
            let index_bits = bits_for(self.n.div_ceil(level.len));
            let payload_bits = if level.len == 1 {
                unit_bytes += retained;
                8
            } else {
                pointers += retained;
                pointer_bits
            };
            estimated_bits += retained * (index_bits + payload_bits);
        }
        SizeReport {
            per_level,
            pointers,
            unit_bytes,
            estimated_bits,
        }
    }
}

/// Space accounting for a [`BlockStructure`].
///
/// `estimated_bits` charges each retained block its index and its payload,
/// each at the minimal fixed width for its level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeReport {
    pub per_level: Vec<usize>,
    pub pointers: usize,
    pub unit_bytes: usize,
    pub estimated_bits: usize,
}

impl SizeReport {
    pub fn retained_total(&self) -> usize {
        self.per_level.iter().sum()
    }
}

impl fmt::Display for SizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.per_level.iter().enumerate() {
            writeln!(f, "level{i}_retained={r}")?;
        }
        writeln!(f, "retained={}", self.retained_total())?;
        writeln!(f, "pointers={}", self.pointers)?;
        writeln!(f, "unit_bytes={}", self.unit_bytes)?;
        writeln!(f, "estimated_bits={}", self.estimated_bits)
    }
}

pub fn ra_size_report(bs: &BlockStructure) -> SizeReport {
    bs.size_report()
}

fn bits_for(values: usize) -> usize {
    (usize::BITS - values.saturating_sub(1).leading_zeros()).max(1) as usize
}

fn block_len(n: usize, len: usize, j: usize) -> usize {
    len.min(n - j * len)
}

const MOD: u64 = (1 << 61) - 1;
const RADIX: u64 = 1_000_003;

fn mul_mod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let r = (p >> 61) as u64 + (p as u64 & MOD);
    if r >= MOD {
        r - MOD
    } else {
        r
    }
}

fn hash_of(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(0, |h, &b| (mul_mod(h, RADIX) + b as u64 + 1) % MOD)
}

/// First 1-based occurrence of each block `j` (of level block length `len`).
///
/// One Karp-Rabin scan per distinct block length; hash hits are verified
/// byte for byte.
fn first_occurrences(text: &[u8], len: usize, blocks: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut result = vec![0usize; blocks.len()];
    let mut by_len: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, &j) in blocks.iter().enumerate() {
        by_len.entry(block_len(n, len, j)).or_default().push(k);
    }

    for (width, members) in by_len {
        let mut pending: HashMap<u64, Vec<usize>> = HashMap::new();
        for &k in &members {
            let from = blocks[k] * len;
            pending
                .entry(hash_of(&text[from..from + width]))
                .or_default()
                .push(k);
        }
        let top = (0..width - 1).fold(1, |acc, _| mul_mod(acc, RADIX));
        let mut h = hash_of(&text[..width]);
        let mut p = 0;
        loop {
            if let Some(waiting) = pending.get_mut(&h) {
                let window = &text[p..p + width];
                waiting.retain(|&k| {
                    let from = blocks[k] * len;
                    if &text[from..from + width] == window {
                        result[k] = p + 1;
                        false
                    } else {
                        true
                    }
                });
                if waiting.is_empty() {
                    pending.remove(&h);
                    if pending.is_empty() {
                        break;
                    }
                }
            }
            if p + width >= n {
                break;
            }
            let out = mul_mod(text[p] as u64 + 1, top);
            h = (h + MOD - out) % MOD;
            h = (mul_mod(h, RADIX) + text[p + width] as u64 + 1) % MOD;
            p += 1;
        }
        debug_assert!(pending.is_empty(), "every block occurs at its own start");
    }
    result
}
