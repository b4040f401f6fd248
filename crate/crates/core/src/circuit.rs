//! NOT/CNOT cascades and their text format.
//!
//! ```text
//! # one gate per line, 0-based bit indices
//! CNOT 1 2
//! NOT 0
//! ```
//!
//! Gates apply in listed order: the first line acts first. The operator
//! product `CNOT(2,3) CNOT(1,2)` in left-to-right notation is therefore the
//! file `CNOT 1 2` / `CNOT 0 1` after shifting to 0-based indices.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::gf2::AffineMapGF2;
use crate::reference::MAX_BITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    Not { target: usize },
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn not(target: usize) -> Self {
        Gate::Not { target }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn target(&self) -> usize {
        match *self {
            Gate::Not { target } | Gate::Cnot { target, .. } => target,
        }
    }

    fn max_index(&self) -> usize {
        match *self {
            Gate::Not { target } => target,
            Gate::Cnot { control, target } => control.max(target),
        }
    }

    /// Bit-level action on a string.
    pub fn apply(&self, s: u64) -> u64 {
        match *self {
            Gate::Not { target } => s ^ (1 << target),
            Gate::Cnot { control, target } => s ^ (((s >> control) & 1) << target),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Not { target } => write!(f, "NOT {target}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GateCircuit {
    n_bits: usize,
    gates: Vec<Gate>,
}

impl GateCircuit {
    pub fn new(n_bits: usize, gates: Vec<Gate>) -> Result<Self> {
        if n_bits == 0 || n_bits > MAX_BITS {
            return Err(Error::Config(format!(
                "n_bits must be in [1, {MAX_BITS}], got {n_bits}"
            )));
        }
        for g in &gates {
            if let Gate::Cnot { control, target } = *g {
                if control == target {
                    return input(format!("{g}: control equals target"));
                }
            }
            if g.max_index() >= n_bits {
                return input(format!("{g}: index outside {n_bits} bits"));
            }
        }
        Ok(GateCircuit { n_bits, gates })
    }

    pub fn empty(n_bits: usize) -> Result<Self> {
        Self::new(n_bits, Vec::new())
    }

    /// `CNOT i i+1` for `i = 0..len`, first gate first (each gate writes
    /// the next one's control).
    pub fn chained_ascending(len: usize) -> Result<Self> {
        Self::new(len + 1, (0..len).map(|i| Gate::cnot(i, i + 1)).collect())
    }

    /// `CNOT i i+1` for `i = len-1 down to 0` (no gate writes a later control).
    pub fn chained_descending(len: usize) -> Result<Self> {
        Self::new(len + 1, (0..len).rev().map(|i| Gate::cnot(i, i + 1)).collect())
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_pure_cnot(&self) -> bool {
        self.gates.iter().all(|g| matches!(g, Gate::Cnot { .. }))
    }

    /// This circuit followed by `other`.
    pub fn concat(&self, other: &GateCircuit) -> Result<Self> {
        if self.n_bits != other.n_bits {
            return input("cannot concatenate circuits of different widths");
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(GateCircuit {
            n_bits: self.n_bits,
            gates,
        })
    }

    /// Step-by-step gate simulation of one string.
    pub fn simulate(&self, s: u64) -> u64 {
        self.gates.iter().fold(s, |s, g| g.apply(s))
    }

    /// Exact semantics as an affine map over GF(2).
    pub fn to_affine(&self) -> AffineMapGF2 {
        let mut map = AffineMapGF2::identity(self.n_bits);
        for g in &self.gates {
            match *g {
                Gate::Not { target } => map.push_not(target),
                Gate::Cnot { control, target } => map.push_cnot(control, target),
            }
        }
        map
    }
}

impl fmt::Display for GateCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.gates.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

pub fn circuit_to_affine(circ: &GateCircuit) -> AffineMapGF2 {
    circ.to_affine()
}

/// Uniformly random cascade of `len` gates on `n_bits` bits. CNOTs need at
/// least two bits; with one bit only NOTs are drawn.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, n_bits: usize, len: usize, cnot_only: bool) -> Result<GateCircuit> {
    if cnot_only && n_bits < 2 {
        return input("CNOT cascades need at least two bits");
    }
    let gates = (0..len)
        .map(|_| {
            if n_bits < 2 || (!cnot_only && rng.random_bool(0.25)) {
                return Gate::not(rng.random_range(0..n_bits));
            }
            let control = rng.random_range(0..n_bits);
            let target = (control + rng.random_range(1..n_bits)) % n_bits;
            Gate::cnot(control, target)
        })
        .collect();
    GateCircuit::new(n_bits, gates)
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    if tok.starts_with('-') {
        return Err(Error::Parse {
            line,
            message: format!("negative bit index {tok}"),
        });
    }
    tok.parse::<usize>()
        .ok()
        .filter(|&i| i < MAX_BITS)
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("bad bit index {tok:?} (expected 0..{MAX_BITS})"),
        })
}

/// Parse the circuit text format. Width is `1 + max index` (at least 1)
/// unless `n_bits` overrides it.
pub fn parse_circuit(text: &str, n_bits: Option<usize>) -> Result<GateCircuit> {
    let mut gates = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        let gate = match toks.as_slice() {
            [] => continue,
            [op, t] if op.eq_ignore_ascii_case("NOT") => Gate::not(parse_index(t, line)?),
            [op, c, t] if op.eq_ignore_ascii_case("CNOT") => {
                let (c, t) = (parse_index(c, line)?, parse_index(t, line)?);
                if c == t {
                    return Err(Error::Parse {
                        line,
                        message: format!("CNOT control and target are both {c}"),
                    });
                }
                Gate::cnot(c, t)
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `NOT <t>` or `CNOT <c> <t>`, got {:?}", body.trim()),
                })
            }
        };
        gates.push(gate);
    }
    let needed = gates.iter().map(|g| g.max_index() + 1).max().unwrap_or(1);
    let n = match n_bits {
        Some(n) if n < needed => {
            return Err(Error::Config(format!(
                "circuit uses {needed} bits but n_bits = {n}"
            )))
        }
        Some(n) => n,
        None => needed,
    };
    GateCircuit::new(n, gates)
}
