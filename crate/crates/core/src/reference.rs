//! The reference system: `2N` clocked random telegraph waves.
//!
//! Wire `(i, j)` carries the noise that fingerprints value `j` of bit `i`.
//! Each tick every wire holds one fair ±1 value. Samples are drawn from
//! [`keyed_word`] keyed by `(seed, wire, tick / 64)`, so any tick can be
//! addressed directly and ticks can be evaluated in any order.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::compile::InsertionProgram;
use crate::error::{input, Error, Result};
use crate::exec::Exec;
use crate::rng::keyed_word;
use crate::stats::{five_sigma_unit, StatEntry, StatReport};

/// Widest supported bit string (circuits, wires, strings).
pub const MAX_BITS: usize = 64;

/// Ticks per generator word.
pub const BLOCK: u64 = 64;

/// Index of a clock period.
pub type ClockTick = u64;

/// Reference wire `W(bit, value)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WireId {
    pub bit: usize,
    pub value: u8,
}

impl WireId {
    pub fn new(bit: usize, value: u8) -> Self {
        WireId { bit, value }
    }

    pub fn zero(bit: usize) -> Self {
        WireId { bit, value: 0 }
    }

    pub fn one(bit: usize) -> Self {
        WireId { bit, value: 1 }
    }

    /// Dense index `2 * bit + value`.
    #[inline(always)]
    pub fn index(self) -> usize {
        2 * self.bit + self.value as usize
    }
}

impl fmt::Display for WireId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({},{})", self.bit, self.value)
    }
}

/// A ±1 telegraph value, stored as its sign bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RtwSample {
    negative: bool,
}

impl RtwSample {
    pub const PLUS: RtwSample = RtwSample { negative: false };
    pub const MINUS: RtwSample = RtwSample { negative: true };

    #[inline(always)]
    pub fn from_sign_bit(negative: bool) -> Self {
        RtwSample { negative }
    }

    #[inline(always)]
    pub fn is_negative(self) -> bool {
        self.negative
    }

    #[inline(always)]
    pub fn value(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

impl Mul for RtwSample {
    type Output = RtwSample;

    // sign bits multiply by XOR
    #[allow(clippy::suspicious_arithmetic_impl)]
    #[inline(always)]
    fn mul(self, rhs: RtwSample) -> RtwSample {
        RtwSample::from_sign_bit(self.negative ^ rhs.negative)
    }
}

impl TryFrom<i64> for RtwSample {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(RtwSample::PLUS),
            -1 => Ok(RtwSample::MINUS),
            _ => input(format!("{v} is not a telegraph value")),
        }
    }
}

/// `2N` seeded telegraph sources sharing one clock.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReferenceSystem {
    n_bits: usize,
    seed: u64,
}

impl ReferenceSystem {
    pub fn new(n_bits: usize, seed: u64) -> Result<Self> {
        if n_bits == 0 || n_bits > MAX_BITS {
            return Err(Error::Config(format!(
                "n_bits must be in [1, {MAX_BITS}], got {n_bits}"
            )));
        }
        Ok(ReferenceSystem { n_bits, seed })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_wires(&self) -> usize {
        2 * self.n_bits
    }

    pub(crate) fn check_wire(&self, wire: WireId) -> Result<()> {
        if wire.bit >= self.n_bits || wire.value > 1 {
            return input(format!("{wire} outside a {}-bit reference system", self.n_bits));
        }
        Ok(())
    }

    pub(crate) fn check_program(&self, prog: &InsertionProgram) -> Result<()> {
        if prog.n_bits() != self.n_bits {
            return input(format!(
                "program is for {} bits, reference system has {}",
                prog.n_bits(),
                self.n_bits
            ));
        }
        Ok(())
    }

    /// Sign bits of wire `index` (dense) for ticks `64 * block ..`.
    #[inline(always)]
    pub(crate) fn sign_word(&self, index: usize, block: u64) -> u64 {
        keyed_word(self.seed, index as u64, block)
    }

    #[inline(always)]
    fn sample_unchecked(&self, wire: WireId, tick: ClockTick) -> RtwSample {
        let word = self.sign_word(wire.index(), tick / BLOCK);
        RtwSample::from_sign_bit((word >> (tick % BLOCK)) & 1 == 1)
    }

    /// `W(i, j)` at `tick`.
    pub fn sample_wire(&self, wire: WireId, tick: ClockTick) -> Result<RtwSample> {
        self.check_wire(wire)?;
        Ok(self.sample_unchecked(wire, tick))
    }

    /// The NOT operator of `bit`: `W(bit, 0) * W(bit, 1)`.
    pub fn not_operator_sample(&self, bit: usize, tick: ClockTick) -> Result<RtwSample> {
        if bit >= self.n_bits {
            return input(format!("bit {bit} outside a {}-bit reference system", self.n_bits));
        }
        Ok(self.sample_unchecked(WireId::zero(bit), tick) * self.sample_unchecked(WireId::one(bit), tick))
    }

    /// `wire` after the NOT operators hosted on it by `prog`.
    pub fn effective_wire_sample(
        &self,
        prog: &InsertionProgram,
        wire: WireId,
        tick: ClockTick,
    ) -> Result<RtwSample> {
        self.check_program(prog)?;
        let mut s = self.sample_wire(wire, tick)?;
        for target in prog.targets_on(wire) {
            s = s * self.not_operator_sample(target, tick)?;
        }
        Ok(s)
    }

    /// Empirical zero-mean and orthogonality identities over ticks `0..T`.
    ///
    /// Entries: every wire's mean, every wire's square, every distinct pair
    /// product, and for every pair `(a, b)` the correlation of the product
    /// wave `W(a) W(b)` with each of its factors.
    pub fn orthogonality_report(&self, ticks: u64, exec: Exec) -> Result<StatReport> {
        if ticks == 0 {
            return input("orthogonality report needs at least one tick");
        }
        let n = self.n_wires();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        // negatives per slot: means, squares, pair products, factor correlations (x2)
        let slots = 2 * n + 3 * pairs.len();
        let negatives = exec.map_reduce(
            block_count(ticks),
            vec![0u64; slots],
            |block| {
                let mask = lane_mask(ticks, block as u64);
                let words: Vec<u64> = (0..n).map(|w| self.sign_word(w, block as u64)).collect();
                let mut counts = Vec::with_capacity(slots);
                counts.extend(words.iter().map(|w| (w & mask).count_ones() as u64));
                counts.extend(words.iter().map(|&w| (product(w, w) & mask).count_ones() as u64));
                counts.extend(
                    pairs
                        .iter()
                        .map(|&(a, b)| (product(words[a], words[b]) & mask).count_ones() as u64),
                );
                for &(a, b) in &pairs {
                    let wave = product(words[a], words[b]);
                    counts.push((product(wave, words[a]) & mask).count_ones() as u64);
                    counts.push((product(wave, words[b]) & mask).count_ones() as u64);
                }
                counts
            },
            |mut acc, block| {
                acc.iter_mut().zip(block).for_each(|(a, b)| *a += b);
                acc
            },
        );

        let tol = five_sigma_unit(ticks);
        let mean = |neg: u64| (ticks as f64 - 2.0 * neg as f64) / ticks as f64;
        let label = |w: usize| WireId::new(w / 2, (w % 2) as u8).to_string();
        let mut report = StatReport::new(format!(
            "orthogonality: N = {}, seed = {}, T = {ticks}",
            self.n_bits, self.seed
        ));
        let mut it = negatives.into_iter();
        for w in 0..n {
            let neg = it.next().unwrap();
            report.push(StatEntry::new(format!("mean {}", label(w)), mean(neg), 0.0, tol, ticks));
        }
        for w in 0..n {
            let neg = it.next().unwrap();
            report.push(StatEntry::new(format!("square {}", label(w)), mean(neg), 1.0, tol, ticks));
        }
        for &(a, b) in &pairs {
            let neg = it.next().unwrap();
            report.push(StatEntry::new(
                format!("product {}{}", label(a), label(b)),
                mean(neg),
                0.0,
                tol,
                ticks,
            ));
        }
        for &(a, b) in &pairs {
            for factor in [a, b] {
                let neg = it.next().unwrap();
                report.push(StatEntry::new(
                    format!("factor [{}{}]{}", label(a), label(b), label(factor)),
                    mean(neg),
                    0.0,
                    tol,
                    ticks,
                ));
            }
        }
        Ok(report)
    }
}

/// Tick-wise product of two sign words.
#[inline(always)]
fn product(a: u64, b: u64) -> u64 {
    a ^ b
}

pub(crate) fn block_count(ticks: u64) -> usize {
    ticks.div_ceil(BLOCK) as usize
}

/// Lanes of `block` that fall below `ticks`.
pub(crate) fn lane_mask(ticks: u64, block: u64) -> u64 {
    let start = block * BLOCK;
    let live = ticks.saturating_sub(start).min(BLOCK);
    if live == BLOCK {
        u64::MAX
    } else {
        (1u64 << live) - 1
    }
}

pub(crate) fn lanes(ticks: u64, block: u64) -> u64 {
    ticks.saturating_sub(block * BLOCK).min(BLOCK)
}

/// All `2N` wires (effective or base) for one 64-tick block, as sign words.
pub(crate) struct WireFrame {
    words: Vec<u64>,
}

impl WireFrame {
    pub(crate) fn base(sys: &ReferenceSystem, block: u64) -> Self {
        WireFrame {
            words: (0..sys.n_wires()).map(|w| sys.sign_word(w, block)).collect(),
        }
    }

    /// Wires with every inserted NOT operator multiplied in. NOT operators
    /// are always taken from the untouched base wires.
    pub(crate) fn effective(sys: &ReferenceSystem, prog: &InsertionProgram, block: u64) -> Self {
        let mut frame = Self::base(sys, block);
        if prog.is_empty() {
            return frame;
        }
        let not_words: Vec<u64> = (0..sys.n_bits())
            .map(|u| frame.words[2 * u] ^ frame.words[2 * u + 1])
            .collect();
        for ins in prog.iter() {
            frame.words[ins.host.index()] ^= not_words[ins.target];
        }
        frame
    }

    #[inline(always)]
    pub(crate) fn word(&self, bit: usize, value: u8) -> u64 {
        self.words[2 * bit + value as usize]
    }

    /// Sign word of the product string `bits` over `n_bits` bits.
    #[inline(always)]
    pub(crate) fn product_word(&self, n_bits: usize, bits: u64) -> u64 {
        (0..n_bits).fold(0, |acc, i| acc ^ self.word(i, ((bits >> i) & 1) as u8))
    }
}
