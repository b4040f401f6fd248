//! Product strings, superpositions and the universe.
//!
//! A string `s` is the wave `X_s = prod_i W(i, s_i)`. A superposition is an
//! integer-weighted sum of such waves. Patterns (each bit fixed or free) are
//! never expanded for sampling: their signal is `prod_i (sum of allowed
//! W(i, j))`, `O(N)` per tick for up to `2^N` summands.

use std::collections::BTreeMap;
use std::fmt;

use crate::compile::InsertionProgram;
use crate::error::{input, Error, Result};
use crate::exec::Exec;
use crate::gf2::AffineMapGF2;
use crate::reference::{
    block_count, lane_mask, lanes, ClockTick, ReferenceSystem, RtwSample, WireFrame, WireId, BLOCK,
    MAX_BITS,
};
use crate::stats::{StatEntry, StatReport};

/// Widest pattern that may be sampled; `|signal| <= 2^32`.
pub const MAX_SIGNAL_BITS: usize = 32;

/// Largest number of strings a pattern may expand into.
pub const EXPANSION_BUDGET: u64 = 1 << 20;

/// `N` bits; bit `i` is bit `i` of `bits`, written as the `i`-th character
/// from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    n_bits: usize,
    bits: u64,
}

impl BitString {
    pub fn new(n_bits: usize, bits: u64) -> Result<Self> {
        if n_bits == 0 || n_bits > MAX_BITS {
            return input(format!("string width {n_bits} out of range"));
        }
        if n_bits < 64 && bits >> n_bits != 0 {
            return input(format!("value {bits} does not fit in {n_bits} bits"));
        }
        Ok(BitString { n_bits, bits })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text.len() > MAX_BITS {
            return input(format!("bad bit string {text:?}"));
        }
        let mut bits = 0u64;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return input(format!("bad bit string {text:?}")),
            }
        }
        Ok(BitString {
            n_bits: text.len(),
            bits,
        })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    /// The integer `R = sum_i s_i 2^i`.
    pub fn value(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, i: usize) -> u8 {
        ((self.bits >> i) & 1) as u8
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n_bits {
            f.write_str(if self.bit(i) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Allowed values of one bit in a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Allowed {
    Zero,
    One,
    Both,
}

/// Strings with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Explicit {
    n_bits: usize,
    terms: BTreeMap<u64, i64>,
}

impl Explicit {
    pub fn new(n_bits: usize, terms: impl IntoIterator<Item = (BitString, i64)>) -> Result<Self> {
        if n_bits == 0 || n_bits > MAX_BITS {
            return input(format!("superposition width {n_bits} out of range"));
        }
        let mut merged: BTreeMap<u64, i128> = BTreeMap::new();
        for (s, c) in terms {
            if s.n_bits() != n_bits {
                return input(format!("string {s} is not {n_bits} bits wide"));
            }
            *merged.entry(s.value()).or_default() += c as i128;
        }
        Self::from_merged(n_bits, merged)
    }

    fn from_merged(n_bits: usize, merged: BTreeMap<u64, i128>) -> Result<Self> {
        let mut weight: i128 = 0;
        let mut terms = BTreeMap::new();
        for (s, c) in merged {
            if c == 0 {
                continue;
            }
            weight = weight.saturating_add(c.abs());
            if weight > i64::MAX as i128 {
                return Err(Error::Config(
                    "sum of absolute coefficients exceeds the signal range".into(),
                ));
            }
            terms.insert(s, c as i64);
        }
        Ok(Explicit { n_bits, terms })
    }

    pub fn singleton(s: BitString) -> Self {
        Explicit {
            n_bits: s.n_bits(),
            terms: BTreeMap::from([(s.value(), 1)]),
        }
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &BitString) -> i64 {
        self.terms.get(&s.value()).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BitString, i64)> + '_ {
        self.terms.iter().map(|(&bits, &c)| {
            (
                BitString {
                    n_bits: self.n_bits,
                    bits,
                },
                c,
            )
        })
    }

    /// Coefficient-wise sum (`Y1 ⊎ Y2`).
    pub fn merge(&self, other: &Explicit) -> Result<Explicit> {
        if self.n_bits != other.n_bits {
            return input("cannot merge superpositions of different widths");
        }
        let mut merged: BTreeMap<u64, i128> = self.terms.iter().map(|(&s, &c)| (s, c as i128)).collect();
        for (&s, &c) in &other.terms {
            *merged.entry(s).or_default() += c as i128;
        }
        Self::from_merged(self.n_bits, merged)
    }

    /// `s -> map(s)` on every string, merging coefficients that collide.
    pub fn map_strings(&self, map: &AffineMapGF2) -> Result<Explicit> {
        let mut merged: BTreeMap<u64, i128> = BTreeMap::new();
        for (&s, &c) in &self.terms {
            *merged.entry(map.apply(s)).or_default() += c as i128;
        }
        Self::from_merged(self.n_bits, merged)
    }
}

/// Coefficient-1 sum over the Cartesian product of allowed values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    allowed: Vec<Allowed>,
}

impl Pattern {
    pub fn new(allowed: Vec<Allowed>) -> Result<Self> {
        if allowed.is_empty() {
            return input("empty pattern");
        }
        if allowed.len() > MAX_SIGNAL_BITS {
            return Err(Error::Config(format!(
                "patterns wider than {MAX_SIGNAL_BITS} bits would overflow the signal range"
            )));
        }
        Ok(Pattern { allowed })
    }

    pub fn universe(n_bits: usize) -> Result<Self> {
        Self::new(vec![Allowed::Both; n_bits])
    }

    /// Pattern over `{0, 1, *}`, bit 0 leftmost.
    pub fn parse(text: &str) -> Result<Self> {
        let allowed = text
            .trim()
            .chars()
            .map(|ch| match ch {
                '0' => Ok(Allowed::Zero),
                '1' => Ok(Allowed::One),
                '*' => Ok(Allowed::Both),
                _ => input(format!("bad pattern character {ch:?}")),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(allowed)
    }

    pub fn n_bits(&self) -> usize {
        self.allowed.len()
    }

    pub fn allowed(&self) -> &[Allowed] {
        &self.allowed
    }

    /// Number of free (`*`) bits.
    pub fn free_bits(&self) -> usize {
        self.allowed.iter().filter(|a| **a == Allowed::Both).count()
    }

    pub fn contains(&self, s: &BitString) -> bool {
        s.n_bits() == self.n_bits()
            && self.allowed.iter().enumerate().all(|(i, a)| match a {
                Allowed::Zero => s.bit(i) == 0,
                Allowed::One => s.bit(i) == 1,
                Allowed::Both => true,
            })
    }

    pub fn expand(&self, budget: u64) -> Result<Explicit> {
        let free: Vec<usize> = (0..self.n_bits())
            .filter(|&i| self.allowed[i] == Allowed::Both)
            .collect();
        let count = 1u64 << free.len();
        if count > budget {
            return Err(Error::Resource(format!(
                "pattern expands to {count} strings, budget is {budget}"
            )));
        }
        let fixed = (0..self.n_bits())
            .filter(|&i| self.allowed[i] == Allowed::One)
            .fold(0u64, |acc, i| acc | (1 << i));
        let terms = (0..count)
            .map(|k| {
                let bits = free
                    .iter()
                    .enumerate()
                    .fold(fixed, |acc, (j, &i)| acc | (((k >> j) & 1) << i));
                (bits, 1i64)
            })
            .collect();
        Ok(Explicit {
            n_bits: self.n_bits(),
            terms,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Superposition {
    Explicit(Explicit),
    Pattern(Pattern),
}

impl From<Explicit> for Superposition {
    fn from(e: Explicit) -> Self {
        Superposition::Explicit(e)
    }
}

impl From<Pattern> for Superposition {
    fn from(p: Pattern) -> Self {
        Superposition::Pattern(p)
    }
}

impl Superposition {
    pub fn universe(n_bits: usize) -> Result<Self> {
        Ok(Pattern::universe(n_bits)?.into())
    }

    pub fn n_bits(&self) -> usize {
        match self {
            Superposition::Explicit(e) => e.n_bits(),
            Superposition::Pattern(p) => p.n_bits(),
        }
    }

    /// Sum of squared coefficients.
    pub fn squared_norm(&self) -> f64 {
        match self {
            Superposition::Explicit(e) => e.terms.values().map(|&c| (c as f64) * (c as f64)).sum(),
            Superposition::Pattern(p) => (p.free_bits() as f64).exp2(),
        }
    }

    pub fn coefficient(&self, s: &BitString) -> i64 {
        match self {
            Superposition::Explicit(e) => e.coefficient(s),
            Superposition::Pattern(p) => p.contains(s) as i64,
        }
    }

    pub fn to_explicit(&self, budget: u64) -> Result<Explicit> {
        match self {
            Superposition::Explicit(e) => Ok(e.clone()),
            Superposition::Pattern(p) => p.expand(budget),
        }
    }

    /// Text form: `universe`, a pattern over `{0,1,*}` of exactly `n_bits`
    /// characters, or `;`-separated strings with optional `coeff*` prefixes
    /// (`101;2*110;-1*011`).
    pub fn parse(text: &str, n_bits: usize) -> Result<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("universe") {
            return Self::universe(n_bits);
        }
        if !text.contains(';')
            && text.len() == n_bits
            && text.chars().all(|c| matches!(c, '0' | '1' | '*'))
        {
            return Ok(Pattern::parse(text)?.into());
        }
        let mut terms = Vec::new();
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (coeff, bits) = match item.split_once('*') {
                Some((c, b)) => (
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Input(format!("bad coefficient in {item:?}")))?,
                    b.trim(),
                ),
                None => (1, item),
            };
            let s = BitString::parse(bits)?;
            if s.n_bits() != n_bits {
                return input(format!("string {bits:?} is not {n_bits} bits wide"));
            }
            terms.push((s, coeff));
        }
        if terms.is_empty() {
            return input("empty superposition");
        }
        Ok(Explicit::new(n_bits, terms)?.into())
    }

    fn check(&self, sys: &ReferenceSystem, prog: &InsertionProgram) -> Result<()> {
        sys.check_program(prog)?;
        if self.n_bits() != sys.n_bits() {
            return input(format!(
                "superposition is {} bits wide, reference system has {}",
                self.n_bits(),
                sys.n_bits()
            ));
        }
        Ok(())
    }

    /// Signals for every lane of one frame. Lanes past `live` are zero.
    pub(crate) fn frame_signals(&self, frame: &WireFrame, live: u64) -> [i64; BLOCK as usize] {
        let mut out = [0i64; BLOCK as usize];
        match self {
            Superposition::Explicit(e) => {
                for (&bits, &c) in &e.terms {
                    let word = frame.product_word(e.n_bits, bits);
                    for (lane, v) in out.iter_mut().enumerate().take(live as usize) {
                        *v += if (word >> lane) & 1 == 1 { -c } else { c };
                    }
                }
            }
            Superposition::Pattern(p) => {
                for (lane, v) in out.iter_mut().enumerate().take(live as usize) {
                    *v = pattern_value(p, |i, j| (frame.word(i, j) >> lane) & 1 == 1);
                }
            }
        }
        out
    }
}

/// `prod_i (sum_{j allowed} W(i, j))` given each wire's sign bit.
#[inline]
fn pattern_value(p: &Pattern, negative: impl Fn(usize, u8) -> bool) -> i64 {
    let sign = |i, j| if negative(i, j) { -1 } else { 1 };
    let mut acc = 1i64;
    for (i, a) in p.allowed.iter().enumerate() {
        let factor = match a {
            Allowed::Zero => sign(i, 0),
            Allowed::One => sign(i, 1),
            Allowed::Both => sign(i, 0) + sign(i, 1),
        };
        if factor == 0 {
            return 0;
        }
        acc *= factor;
    }
    acc
}

/// `X_s(t)` with every wire replaced by its effective wire under `prog`.
pub fn product_string_sample(
    sys: &ReferenceSystem,
    prog: &InsertionProgram,
    s: &BitString,
    tick: ClockTick,
) -> Result<RtwSample> {
    sys.check_program(prog)?;
    if s.n_bits() != sys.n_bits() {
        return input(format!("string {s} is not {} bits wide", sys.n_bits()));
    }
    (0..s.n_bits()).try_fold(RtwSample::PLUS, |acc, i| {
        Ok(acc * sys.effective_wire_sample(prog, WireId::new(i, s.bit(i)), tick)?)
    })
}

/// `Y(t)`, exact. Patterns are evaluated in factorized form.
pub fn superposition_sample(
    sys: &ReferenceSystem,
    prog: &InsertionProgram,
    y: &Superposition,
    tick: ClockTick,
) -> Result<i64> {
    y.check(sys, prog)?;
    match y {
        Superposition::Explicit(e) => e.terms().try_fold(0i64, |acc, (s, c)| {
            Ok(acc + c * product_string_sample(sys, prog, &s, tick)?.value())
        }),
        Superposition::Pattern(p) => {
            let mut negative = vec![false; 2 * p.n_bits()];
            for (w, neg) in negative.iter_mut().enumerate() {
                let wire = WireId::new(w / 2, (w % 2) as u8);
                *neg = sys.effective_wire_sample(prog, wire, tick)?.is_negative();
            }
            Ok(pattern_value(p, |i, j| negative[2 * i + j as usize]))
        }
    }
}

/// `Y(t)` for `t = 0..ticks`, evaluated block-wise.
pub fn signal_trace(
    sys: &ReferenceSystem,
    prog: &InsertionProgram,
    y: &Superposition,
    ticks: u64,
    exec: Exec,
) -> Result<Vec<i64>> {
    y.check(sys, prog)?;
    let blocks = exec.map(block_count(ticks), |b| {
        let frame = WireFrame::effective(sys, prog, b as u64);
        let live = lanes(ticks, b as u64);
        y.frame_signals(&frame, live)[..live as usize].to_vec()
    });
    Ok(blocks.concat())
}

/// Bit-level semantics: every string `s` of `y` becomes `map(s)`.
pub fn oracle_apply(map: &AffineMapGF2, y: &Superposition, budget: u64) -> Result<Explicit> {
    if map.n_bits() != y.n_bits() {
        return input(format!(
            "map is {} bits wide, superposition is {}",
            map.n_bits(),
            y.n_bits()
        ));
    }
    y.to_explicit(budget)?.map_strings(map)
}

/// Fraction of ticks at which a pattern's (untransformed) signal is zero.
/// Expected `1 - 2^-k` for `k` free bits.
pub fn zero_fraction(sys: &ReferenceSystem, y: &Superposition, ticks: u64, exec: Exec) -> Result<StatReport> {
    let Superposition::Pattern(p) = y else {
        return input("zero fraction is defined for pattern superpositions");
    };
    if ticks == 0 {
        return input("zero fraction needs at least one tick");
    }
    let empty = InsertionProgram::empty(sys.n_bits());
    y.check(sys, &empty)?;
    let zeros = exec.map_reduce(
        block_count(ticks),
        0u64,
        |b| {
            let frame = WireFrame::base(sys, b as u64);
            let live = lanes(ticks, b as u64);
            y.frame_signals(&frame, live)[..live as usize]
                .iter()
                .filter(|v| **v == 0)
                .count() as u64
        },
        |a, b| a + b,
    );
    let k = p.free_bits();
    let expected = 1.0 - (-(k as f64)).exp2();
    let tolerance = 5.0 * (expected * (1.0 - expected) / ticks as f64).sqrt();
    let mut report = StatReport::new(format!(
        "zero fraction: N = {}, free bits = {k}, seed = {}, T = {ticks}",
        sys.n_bits(),
        sys.seed()
    ));
    report.push(StatEntry::new(
        "zero fraction",
        zeros as f64 / ticks as f64,
        expected,
        tolerance,
        ticks,
    ));
    Ok(report)
}

/// Time-averaged correlation of the transformed signal with the base wave
/// of `probe`. Its expectation is the coefficient of `probe` after `prog`.
pub fn membership_estimate(
    sys: &ReferenceSystem,
    prog: &InsertionProgram,
    y: &Superposition,
    probe: &BitString,
    ticks: u64,
    exec: Exec,
) -> Result<StatReport> {
    y.check(sys, prog)?;
    if ticks == 0 {
        return input("membership estimate needs at least one tick");
    }
    if probe.n_bits() != sys.n_bits() {
        return input(format!("probe {probe} is not {} bits wide", sys.n_bits()));
    }
    let expected = oracle_apply(&prog.to_affine(), y, EXPANSION_BUDGET)?.coefficient(probe);
    let sum = exec.map_reduce(
        block_count(ticks),
        0i128,
        |b| {
            let block = b as u64;
            let frame = WireFrame::effective(sys, prog, block);
            let live = lanes(ticks, block);
            let probe_word = WireFrame::base(sys, block).product_word(sys.n_bits(), probe.value())
                & lane_mask(ticks, block);
            y.frame_signals(&frame, live)[..live as usize]
                .iter()
                .enumerate()
                .map(|(lane, &v)| if (probe_word >> lane) & 1 == 1 { -(v as i128) } else { v as i128 })
                .sum::<i128>()
        },
        |a, b| a + b,
    );
    let tolerance = 5.0 * (y.squared_norm() / ticks as f64).sqrt();
    let mut report = StatReport::new(format!(
        "membership of {probe}: N = {}, seed = {}, T = {ticks}",
        sys.n_bits(),
        sys.seed()
    ));
    report.push(StatEntry::new(
        format!("coefficient {probe}"),
        sum as f64 / ticks as f64,
        expected as f64,
        tolerance,
        ticks,
    ));
    Ok(report)
}
