//! Tick-wise equivalence between the rewired reference system and the
//! bit-level oracle.
//!
//! Side A evaluates the superposition on wires carrying the compiled
//! insertion program. Side B first maps every string through the circuit's
//! affine semantics and evaluates the result on the untouched wires. The two
//! must agree as exact integers at every tick.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::circuit::{random_circuit, Gate, GateCircuit};
use crate::compile::{compile_circuit, Insertion, InsertionProgram, ProgramJson};
use crate::error::{input, Result};
use crate::exec::Exec;
use crate::hyperspace::{oracle_apply, BitString, Explicit, Superposition, EXPANSION_BUDGET};
use crate::reference::{block_count, lanes, ClockTick, ReferenceSystem, WireFrame};
use crate::rng::trial_rng;

/// Default verification window.
pub const DEFAULT_TICKS: u64 = 1024;

/// Seed used by the figure suite.
pub const FIGURE_SEED: u64 = 2018;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub tick: ClockTick,
    pub transformed: i64,
    pub oracle: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceResult {
    pub ticks_checked: u64,
    pub first_mismatch: Option<Mismatch>,
}

impl EquivalenceResult {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// First tick in `0..ticks` where the two evaluations differ.
fn compare(
    sys: &ReferenceSystem,
    (prog_a, y_a): (&InsertionProgram, &Superposition),
    (prog_b, y_b): (&InsertionProgram, &Superposition),
    ticks: u64,
    exec: Exec,
) -> EquivalenceResult {
    let first_mismatch = exec.find_first(block_count(ticks), |b| {
        let block = b as u64;
        let live = lanes(ticks, block);
        let a = y_a.frame_signals(&WireFrame::effective(sys, prog_a, block), live);
        let b = y_b.frame_signals(&WireFrame::effective(sys, prog_b, block), live);
        (0..live as usize).find(|&l| a[l] != b[l]).map(|l| Mismatch {
            tick: block * 64 + l as u64,
            transformed: a[l],
            oracle: b[l],
        })
    });
    EquivalenceResult {
        ticks_checked: ticks,
        first_mismatch,
    }
}

pub fn signal_equivalence_check(
    sys: &ReferenceSystem,
    circ: &GateCircuit,
    y: &Superposition,
    ticks: u64,
    exec: Exec,
) -> Result<EquivalenceResult> {
    if circ.n_bits() != sys.n_bits() || y.n_bits() != sys.n_bits() {
        return input(format!(
            "widths differ: system {}, circuit {}, superposition {}",
            sys.n_bits(),
            circ.n_bits(),
            y.n_bits()
        ));
    }
    let map = circ.to_affine();
    let prog = compile_circuit(circ);
    let oracle: Superposition = oracle_apply(&map, y, EXPANSION_BUDGET)?.into();
    let empty = InsertionProgram::empty(sys.n_bits());
    Ok(compare(sys, (&prog, y), (&empty, &oracle), ticks, exec))
}

/// A CNOT cascade permutes the universe's strings, so its factorized signal
/// must be unchanged by the compiled program. Never expands the universe.
pub fn universe_invariance_check(
    sys: &ReferenceSystem,
    circ: &GateCircuit,
    ticks: u64,
    exec: Exec,
) -> Result<EquivalenceResult> {
    if !circ.is_pure_cnot() {
        return input("universe invariance is checked for pure CNOT cascades");
    }
    if circ.n_bits() != sys.n_bits() {
        return input("circuit and reference system widths differ");
    }
    let prog = compile_circuit(circ);
    let universe = Superposition::universe(sys.n_bits())?;
    let empty = InsertionProgram::empty(sys.n_bits());
    Ok(compare(sys, (&prog, &universe), (&empty, &universe), ticks, exec))
}

/// A reference cascade with its expected wiring.
#[derive(Clone, Debug)]
pub struct FigureCase {
    pub name: &'static str,
    pub circuit: GateCircuit,
    pub expected: InsertionProgram,
}

/// The reference NOT and CNOT cascades on a 4-bit system.
pub fn figure_cascades() -> Vec<FigureCase> {
    const N: usize = 4;
    let case = |name, gates: Vec<Gate>, wires: &[(usize, u8, usize)]| FigureCase {
        name,
        circuit: GateCircuit::new(N, gates).expect("figure circuit"),
        expected: InsertionProgram::from_insertions(
            N,
            wires.iter().map(|&(b, v, t)| Insertion::new(b, v, t)),
        )
        .expect("figure program"),
    };
    vec![
        case("NOT on bit 2", vec![Gate::not(2)], &[(2, 0, 2), (2, 1, 2)]),
        case("single CNOT", vec![Gate::cnot(1, 2)], &[(1, 1, 2)]),
        case(
            "non-interacting pair",
            vec![Gate::cnot(1, 2), Gate::cnot(0, 1)],
            &[(0, 1, 1), (1, 1, 2)],
        ),
        case(
            "interacting pair",
            vec![Gate::cnot(0, 1), Gate::cnot(1, 2)],
            &[(0, 1, 1), (1, 1, 2), (0, 1, 2)],
        ),
        case(
            "non-interacting triple",
            vec![Gate::cnot(2, 3), Gate::cnot(1, 2), Gate::cnot(0, 1)],
            &[(0, 1, 1), (1, 1, 2), (2, 1, 3)],
        ),
        case(
            "interacting triple",
            vec![Gate::cnot(0, 1), Gate::cnot(1, 2), Gate::cnot(2, 3)],
            &[(0, 1, 1), (0, 1, 2), (1, 1, 2), (0, 1, 3), (1, 1, 3), (2, 1, 3)],
        ),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub circuit: String,
    pub program: ProgramJson,
    pub expected_m: Option<usize>,
    pub program_matches: bool,
    pub equivalence: Vec<EquivalenceResult>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub ticks: u64,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, ticks: u64, checks: Vec<CheckOutcome>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport {
            suite: suite.to_string(),
            seed,
            ticks,
            checks,
            pass,
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {}, T = {})", self.suite, self.seed, self.ticks)?;
        for c in &self.checks {
            write!(f, "  [{}] {:<28} M = {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.program.m)?;
            if let Some(m) = c.expected_m {
                write!(f, " (expected {m})")?;
            }
            writeln!(f, "  {}", c.circuit)?;
            for eq in &c.equivalence {
                if let Some(mm) = eq.first_mismatch {
                    writeln!(
                        f,
                        "      mismatch at tick {}: transformed {} vs oracle {}",
                        mm.tick, mm.transformed, mm.oracle
                    )?;
                }
            }
        }
        write!(f, "{}", if self.pass { "all checks passed" } else { "FAILED" })
    }
}

/// Compile every figure circuit, compare with the expected wiring, and run
/// tick-wise equivalence on the universe and an asymmetric weighted set.
pub fn figure_suite(exec: Exec) -> Result<SuiteReport> {
    let sys = ReferenceSystem::new(4, FIGURE_SEED)?;
    let inputs = [
        Superposition::universe(4)?,
        Superposition::parse("1000;0110;2*1101;-1*0011", 4)?,
    ];
    let checks = figure_cascades()
        .into_iter()
        .map(|case| {
            let prog = compile_circuit(&case.circuit);
            let program_matches = prog == case.expected;
            let equivalence = inputs
                .iter()
                .map(|y| signal_equivalence_check(&sys, &case.circuit, y, DEFAULT_TICKS, exec))
                .collect::<Result<Vec<_>>>()?;
            let pass = program_matches && equivalence.iter().all(EquivalenceResult::pass);
            Ok(CheckOutcome {
                name: case.name.to_string(),
                circuit: case.circuit.to_string(),
                program: prog.to_json(),
                expected_m: Some(case.expected.len()),
                program_matches,
                equivalence,
                pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new("figures", FIGURE_SEED, DEFAULT_TICKS, checks))
}

/// Random explicit superposition of up to `max_terms` distinct strings with
/// coefficients in `-3..=3` (zeros dropped, so possibly fewer terms).
pub fn random_explicit<R: Rng + ?Sized>(rng: &mut R, n_bits: usize, max_terms: usize, unit: bool) -> Result<Explicit> {
    let cap = max_terms.min(1usize << n_bits.min(20)).max(1);
    let count = rng.random_range(1..=cap);
    let terms: Vec<(BitString, i64)> = (0..count)
        .map(|_| {
            let bits = rng.random_range(0..(1u64 << n_bits));
            let c = if unit { 1 } else { rng.random_range(-3..=3) };
            Ok((BitString::new(n_bits, bits)?, c))
        })
        .collect::<Result<_>>()?;
    Explicit::new(n_bits, terms)
}

/// `trials` random circuits (length <= 12, N <= 8), each checked against a
/// random explicit superposition of at most 32 strings.
pub fn random_suite(trials: usize, seed: u64, ticks: u64, exec: Exec) -> Result<SuiteReport> {
    let checks = exec
        .map(trials, |i| {
            let mut rng = trial_rng(seed, i as u64);
            let n = rng.random_range(1..=8);
            let len = rng.random_range(0..=12);
            let circuit = random_circuit(&mut rng, n, len, false)?;
            let y: Superposition = random_explicit(&mut rng, n, 32, false)?.into();
            let sys = ReferenceSystem::new(n, rng.random())?;
            // trials already run in parallel
            let eq = signal_equivalence_check(&sys, &circuit, &y, ticks, Exec::Sequential)?;
            Ok(CheckOutcome {
                name: format!("trial {i} (N = {n})"),
                circuit: circuit.to_string(),
                program: compile_circuit(&circuit).to_json(),
                expected_m: None,
                program_matches: true,
                pass: eq.pass(),
                equivalence: vec![eq],
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new("random", seed, ticks, checks))
}
