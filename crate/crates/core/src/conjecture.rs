//! Empirical check of the NOT-element bound for CNOT cascades.
//!
//! For a cascade of `L` CNOTs the conjectured count is
//! `L <= M <= L (L + 1) / 2`. Violations are findings, not errors: each one
//! is reported with its circuit and a redundancy class telling whether a
//! shorter cascade realizes the same map.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::circuit::{random_circuit, Gate, GateCircuit};
use crate::compile::{compile_circuit, hardware_count};
use crate::error::{input, Result};
use crate::exec::Exec;
use crate::rng::trial_rng;

/// Widest cascade whose shortest equivalent is searched for.
pub const CLASSIFY_MAX_BITS: usize = 8;

/// Cap on distinct maps held by the shortest-cascade search.
pub const CLASSIFY_MAX_STATES: usize = 4_000_000;

pub fn lower_bound(len: usize) -> usize {
    len
}

pub fn upper_bound(len: usize) -> usize {
    len * (len + 1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bound {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Redundancy {
    /// Two identical gates that meet after commuting past everything between.
    CancellingPair { first: usize, second: usize },
    /// Not a literal pair, but a shorter CNOT cascade has the same map.
    Reducible { shortest: usize },
    /// No shorter cascade exists: a genuine counterexample.
    Irreducible,
    /// Too wide to search.
    Unclassified,
}

impl Redundancy {
    pub fn is_redundant(&self) -> bool {
        matches!(self, Redundancy::CancellingPair { .. } | Redundancy::Reducible { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub circuit: String,
    pub gates: usize,
    pub m: usize,
    pub bound: Bound,
    pub class: Redundancy,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n_gates: usize,
    pub n_bits: usize,
    pub samples: usize,
    pub seed: u64,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub min_m: usize,
    pub max_m: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub violations: Vec<Violation>,
    /// Violations per redundancy class.
    pub class_counts: BTreeMap<String, usize>,
}

impl ScanReport {
    pub fn irredundant_violations(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| !v.class.is_redundant())
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "conjecture scan: {} CNOTs on {} bits, {} samples, seed {}",
            self.n_gates, self.n_bits, self.samples, self.seed
        )?;
        writeln!(
            f,
            "  bounds {} <= M <= {}; observed min {} max {}",
            self.lower_bound, self.upper_bound, self.min_m, self.max_m
        )?;
        let hist: Vec<String> = self.histogram.iter().map(|(m, c)| format!("{m}:{c}")).collect();
        writeln!(f, "  histogram (M:count) {}", hist.join(" "))?;
        writeln!(f, "  violations {}", self.violations.len())?;
        for (class, count) in &self.class_counts {
            writeln!(f, "    {class}: {count}")?;
        }
        for v in &self.violations {
            writeln!(f, "  warning: {:?} bound, M = {}, {:?}: {}", v.bound, v.m, v.class, v.circuit)?;
        }
        Ok(())
    }
}

fn commutes(a: &Gate, b: &Gate) -> bool {
    match (*a, *b) {
        (Gate::Not { .. }, Gate::Not { .. }) => true,
        (Gate::Not { target }, Gate::Cnot { control, .. })
        | (Gate::Cnot { control, .. }, Gate::Not { target }) => target != control,
        (Gate::Cnot { control: c1, target: t1 }, Gate::Cnot { control: c2, target: t2 }) => {
            c1 != t2 && c2 != t1
        }
    }
}

/// Earliest pair of equal gates that can be commuted next to each other.
pub fn find_cancelling_pair(circ: &GateCircuit) -> Option<(usize, usize)> {
    let gates = circ.gates();
    for i in 0..gates.len() {
        for j in i + 1..gates.len() {
            if gates[j] == gates[i] {
                return Some((i, j));
            }
            if !commutes(&gates[i], &gates[j]) {
                break;
            }
        }
    }
    None
}

/// Minimal CNOT counts of linear maps on `n_bits <= 8` bits, explored
/// breadth-first from the identity up to a fixed depth.
pub struct CnotDistance {
    n_bits: usize,
    depth: usize,
    dist: HashMap<u64, u8>,
}

impl CnotDistance {
    /// `None` when the search would exceed the width or state caps.
    pub fn build(n_bits: usize, depth: usize) -> Option<Self> {
        if n_bits > CLASSIFY_MAX_BITS {
            return None;
        }
        let start = pack((0..n_bits).map(|i| 1u8 << i));
        let mut dist = HashMap::from([(start, 0u8)]);
        let mut frontier = vec![start];
        for d in 1..=depth {
            let mut next = Vec::new();
            for &state in &frontier {
                let rows = unpack(state, n_bits);
                for c in 0..n_bits {
                    for t in (0..n_bits).filter(|&t| t != c) {
                        let mut r = rows;
                        r[t] ^= r[c];
                        let key = pack(r[..n_bits].iter().copied());
                        if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(key) {
                            e.insert(d as u8);
                            next.push(key);
                        }
                    }
                }
            }
            if dist.len() > CLASSIFY_MAX_STATES {
                return None;
            }
            frontier = next;
        }
        Some(CnotDistance { n_bits, depth, dist })
    }

    /// Shortest cascade length if it is at most the explored depth.
    pub fn shortest(&self, circ: &GateCircuit) -> Option<usize> {
        debug_assert_eq!(circ.n_bits(), self.n_bits);
        let map = circ.to_affine();
        let key = pack(map.linear().rows().iter().map(|&r| r as u8));
        self.dist.get(&key).map(|&d| d as usize)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

fn pack(rows: impl Iterator<Item = u8>) -> u64 {
    rows.enumerate().fold(0, |acc, (i, r)| acc | ((r as u64) << (8 * i)))
}

fn unpack(key: u64, n: usize) -> [u8; CLASSIFY_MAX_BITS] {
    let mut rows = [0u8; CLASSIFY_MAX_BITS];
    for (i, r) in rows.iter_mut().enumerate().take(n) {
        *r = (key >> (8 * i)) as u8;
    }
    rows
}

/// Redundancy class of a pure CNOT cascade. `distance` must cover depth
/// `len - 1` on the circuit's width, if present.
pub fn classify(circ: &GateCircuit, distance: Option<&CnotDistance>) -> Redundancy {
    if let Some((first, second)) = find_cancelling_pair(circ) {
        return Redundancy::CancellingPair { first, second };
    }
    let Some(d) = distance.filter(|d| d.n_bits == circ.n_bits() && d.depth + 1 >= circ.len()) else {
        return Redundancy::Unclassified;
    };
    match d.shortest(circ) {
        Some(shortest) if shortest < circ.len() => Redundancy::Reducible { shortest },
        _ => Redundancy::Irreducible,
    }
}

/// Bound check for one cascade.
pub fn check_cascade(circ: &GateCircuit) -> Result<(usize, Option<Violation>)> {
    if !circ.is_pure_cnot() {
        return input("the bound is stated for CNOT cascades");
    }
    let m = hardware_count(&compile_circuit(circ));
    let len = circ.len();
    let bound = if m < lower_bound(len) {
        Some(Bound::Lower)
    } else if m > upper_bound(len) {
        Some(Bound::Upper)
    } else {
        None
    };
    let violation = bound.map(|bound| {
        let distance = if find_cancelling_pair(circ).is_none() && len > 0 {
            CnotDistance::build(circ.n_bits(), len - 1)
        } else {
            None
        };
        Violation {
            circuit: circ.to_string(),
            gates: len,
            m,
            bound,
            class: classify(circ, distance.as_ref()),
        }
    });
    Ok((m, violation))
}

/// Random CNOT cascades of fixed length: distribution of `M` and every
/// bound violation.
pub fn conjecture_scan(n_gates: usize, n_bits: usize, samples: usize, seed: u64, exec: Exec) -> Result<ScanReport> {
    if n_bits < 2 {
        return input("CNOT cascades need at least two bits");
    }
    if n_gates == 0 {
        return input("cascades need at least one gate");
    }
    let sampled = exec.map(samples, |i| {
        let mut rng = trial_rng(seed, i as u64);
        let circ = random_circuit(&mut rng, n_bits, n_gates, true).expect("valid scan parameters");
        let m = hardware_count(&compile_circuit(&circ));
        (circ, m)
    });
    let (lo, hi) = (lower_bound(n_gates), upper_bound(n_gates));
    let mut histogram = BTreeMap::new();
    let mut flagged = Vec::new();
    for (circ, m) in sampled {
        *histogram.entry(m).or_insert(0) += 1;
        if m < lo || m > hi {
            flagged.push((circ, m, if m < lo { Bound::Lower } else { Bound::Upper }));
        }
    }
    let needs_search = flagged.iter().any(|(c, _, _)| find_cancelling_pair(c).is_none());
    let distance = if needs_search {
        CnotDistance::build(n_bits, n_gates - 1)
    } else {
        None
    };
    let violations: Vec<Violation> = flagged
        .into_iter()
        .map(|(circ, m, bound)| Violation {
            circuit: circ.to_string(),
            gates: n_gates,
            m,
            bound,
            class: classify(&circ, distance.as_ref()),
        })
        .collect();
    let mut class_counts = BTreeMap::new();
    for v in &violations {
        let key = match v.class {
            Redundancy::CancellingPair { .. } => "cancelling pair",
            Redundancy::Reducible { .. } => "reducible",
            Redundancy::Irreducible => "irreducible",
            Redundancy::Unclassified => "unclassified",
        };
        *class_counts.entry(key.to_string()).or_insert(0) += 1;
    }
    Ok(ScanReport {
        n_gates,
        n_bits,
        samples,
        seed,
        lower_bound: lo,
        upper_bound: hi,
        min_m: histogram.keys().next().copied().unwrap_or(0),
        max_m: histogram.keys().next_back().copied().unwrap_or(0),
        histogram,
        violations,
        class_counts,
    })
}

/// `M` for the chained families of length `len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainRow {
    pub len: usize,
    /// `CNOT(len-1, len) ... CNOT(0, 1)`, no gate feeds a later control.
    pub m_non_interacting: usize,
    /// `CNOT(0, 1) ... CNOT(len-1, len)`, each gate feeds the next control.
    pub m_interacting: usize,
    pub lower: usize,
    pub upper: usize,
}

impl ChainRow {
    pub fn attains_bounds(&self) -> bool {
        self.m_non_interacting == self.lower && self.m_interacting == self.upper
    }
}

pub fn chained_family(max_len: usize) -> Result<Vec<ChainRow>> {
    (1..=max_len)
        .map(|len| {
            Ok(ChainRow {
                len,
                m_non_interacting: hardware_count(&compile_circuit(&GateCircuit::chained_descending(len)?)),
                m_interacting: hardware_count(&compile_circuit(&GateCircuit::chained_ascending(len)?)),
                lower: lower_bound(len),
                upper: upper_bound(len),
            })
        })
        .collect()
}
