//! Compilation of affine GF(2) maps into reference-wire insertion programs.
//!
//! An insertion multiplies the NOT operator of bit `target` into wire `host`.
//! A product string picks exactly one wire per bit, so string `s` collects
//! one factor of `NOT(target)` for every insertion whose host it selects.
//! Bit `t` of `s` therefore flips by the parity of
//!
//! ```text
//!   sum over hosts (i, 1) of s_i  +  sum over hosts (i, 0) of (1 + s_i)
//! ```
//!
//! and any flip form `support . s + c` can be laid out on the wires: value-1
//! hosts for the support, with the constant absorbed by moving one host to
//! its value-0 wire (or by loading both wires of bit `t` when the support is
//! empty). The layout is canonical, so equal maps give identical programs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::circuit::GateCircuit;
use crate::error::{input, Result};
use crate::gf2::{AffineMapGF2, BitMatrix};
use crate::reference::{WireId, MAX_BITS};

/// NOT operator of bit `target` multiplied into wire `host`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Insertion {
    pub host: WireId,
    pub target: usize,
}

impl Insertion {
    pub fn new(host_bit: usize, host_value: u8, target: usize) -> Self {
        Insertion {
            host: WireId::new(host_bit, host_value),
            target,
        }
    }
}

/// A set of insertions. Adding a pair that is already present removes it,
/// since two copies of the same ±1 factor cancel.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InsertionProgram {
    n_bits: usize,
    insertions: BTreeSet<Insertion>,
}

impl InsertionProgram {
    pub fn empty(n_bits: usize) -> Self {
        InsertionProgram {
            n_bits,
            insertions: BTreeSet::new(),
        }
    }

    pub fn from_insertions(n_bits: usize, insertions: impl IntoIterator<Item = Insertion>) -> Result<Self> {
        let mut prog = Self::empty(n_bits);
        for ins in insertions {
            prog.toggle(ins)?;
        }
        Ok(prog)
    }

    /// XOR-merge one insertion into the program.
    pub fn toggle(&mut self, ins: Insertion) -> Result<()> {
        if ins.host.bit >= self.n_bits || ins.host.value > 1 || ins.target >= self.n_bits {
            return input(format!(
                "insertion NOT({}) on {} outside {} bits",
                ins.target, ins.host, self.n_bits
            ));
        }
        if !self.insertions.remove(&ins) {
            self.insertions.insert(ins);
        }
        Ok(())
    }

    /// XOR-merge of two programs.
    pub fn merge(&self, other: &InsertionProgram) -> Result<Self> {
        if self.n_bits != other.n_bits {
            return input("cannot merge programs of different widths");
        }
        let insertions = self
            .insertions
            .symmetric_difference(&other.insertions)
            .copied()
            .collect();
        Ok(InsertionProgram {
            n_bits: self.n_bits,
            insertions,
        })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn is_empty(&self) -> bool {
        self.insertions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.insertions.len()
    }

    /// Sorted by `(host_bit, host_value, target)`.
    pub fn iter(&self) -> impl Iterator<Item = &Insertion> + '_ {
        self.insertions.iter()
    }

    pub fn contains(&self, ins: &Insertion) -> bool {
        self.insertions.contains(ins)
    }

    /// Targets whose NOT operators ride on `wire`.
    pub fn targets_on(&self, wire: WireId) -> impl Iterator<Item = usize> + '_ {
        self.insertions
            .range(Insertion { host: wire, target: 0 }..=Insertion { host: wire, target: usize::MAX })
            .map(|ins| ins.target)
    }

    /// The string map this program realizes (any program realizes some
    /// affine map, invertible or not).
    pub fn to_affine(&self) -> AffineMapGF2 {
        let mut rows = BitMatrix::identity(self.n_bits).rows().to_vec();
        let mut constant = 0u64;
        for ins in &self.insertions {
            rows[ins.target] ^= 1 << ins.host.bit;
            if ins.host.value == 0 {
                constant ^= 1 << ins.target;
            }
        }
        let linear = BitMatrix::from_rows(self.n_bits, rows).expect("rows within width");
        AffineMapGF2::new(linear, constant).expect("constant within width")
    }

    pub fn to_json(&self) -> ProgramJson {
        ProgramJson {
            n_bits: self.n_bits,
            insertions: self
                .insertions
                .iter()
                .map(|ins| InsertionJson {
                    host_bit: ins.host.bit,
                    host_value: ins.host.value,
                    target: ins.target,
                })
                .collect(),
            m: self.len(),
        }
    }

    pub fn from_json(json: &ProgramJson) -> Result<Self> {
        if json.n_bits == 0 || json.n_bits > MAX_BITS {
            return input(format!("n_bits {} out of range", json.n_bits));
        }
        let prog = Self::from_insertions(
            json.n_bits,
            json.insertions
                .iter()
                .map(|i| Insertion::new(i.host_bit, i.host_value, i.target)),
        )?;
        if prog.len() != json.insertions.len() || prog.len() != json.m {
            return input("program JSON has duplicate insertions or a wrong M");
        }
        Ok(prog)
    }
}

/// Wire format of a compiled program.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgramJson {
    pub n_bits: usize,
    pub insertions: Vec<InsertionJson>,
    #[serde(rename = "M")]
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionJson {
    pub host_bit: usize,
    pub host_value: u8,
    pub target: usize,
}

/// Canonical insertion program for an invertible affine map.
pub fn compile_to_insertions(map: &AffineMapGF2) -> Result<InsertionProgram> {
    if !map.is_invertible() {
        return input("linear part is not invertible over GF(2)");
    }
    let n = map.n_bits();
    let mut prog = InsertionProgram::empty(n);
    for t in 0..n {
        let (support, constant) = map.flip_form(t);
        let hosts = (0..n).filter(|i| (support >> i) & 1 == 1);
        if support == 0 {
            if constant {
                prog.toggle(Insertion::new(t, 0, t))?;
                prog.toggle(Insertion::new(t, 1, t))?;
            }
            continue;
        }
        let lowest = support.trailing_zeros() as usize;
        for i in hosts {
            let value = if constant && i == lowest { 0 } else { 1 };
            prog.toggle(Insertion::new(i, value, t))?;
        }
    }
    Ok(prog)
}

pub fn compile_circuit(circ: &GateCircuit) -> InsertionProgram {
    compile_to_insertions(&circ.to_affine()).expect("gate circuits are invertible")
}

/// `M`, the number of NOT elements in the program.
pub fn hardware_count(prog: &InsertionProgram) -> usize {
    prog.len()
}
