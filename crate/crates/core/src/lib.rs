//! Instantaneous noise-based logic (INBL) over the simplest random telegraph
//! wave reference system.
//!
//! Logic values live in a bank of `2N` clocked ±1 reference noises
//! `W(i, j)`, one per (bit, value) pair. A bit string is the product of one
//! wire per bit, a superposition is a sum of such products, and the universe
//! of all `2^N` strings factorizes into `N` two-term sums.
//!
//! Gates are not applied to the superposition directly. Instead NOT operators
//! (`W(u, 0) * W(u, 1)`) are multiplied into selected reference wires, and
//! every string drawn from the modified wires comes out already transformed.
//! [`compile`] turns any NOT/CNOT cascade into such an insertion program,
//! [`verify`] checks it tick by tick against a bit-level oracle.
//!
//! Bulk evaluation runs over 64-tick blocks; see [`exec::Exec`] for the
//! parallel/sequential switch.

pub mod circuit;
pub mod compile;
pub mod conjecture;
pub mod error;
pub mod exec;
pub mod gf2;
pub mod hyperspace;
pub mod reference;
pub mod rng;
pub mod stats;
pub mod verify;

pub use circuit::{parse_circuit, Gate, GateCircuit};
pub use compile::{compile_circuit, compile_to_insertions, hardware_count, Insertion, InsertionProgram};
pub use error::{Error, Result};
pub use exec::Exec;
pub use gf2::{AffineMapGF2, BitMatrix};
pub use hyperspace::{BitString, Explicit, Pattern, Superposition};
pub use reference::{ClockTick, ReferenceSystem, RtwSample, WireId};
pub use stats::{StatEntry, StatReport};
