//! Acceptance gate. Runs every criterion at its pinned tolerance and prints
//! one PASS/FAIL line each; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use inbl::conjecture::{chained_family, check_cascade, conjecture_scan};
use inbl::hyperspace::{membership_estimate, signal_trace, zero_fraction};
use inbl::verify::{figure_cascades, random_explicit, signal_equivalence_check, universe_invariance_check};
use inbl::{
    circuit::random_circuit, compile_circuit, hardware_count, parse_circuit, rng::trial_rng, BitString, Exec,
    Explicit, Gate, GateCircuit, Insertion, InsertionProgram, ReferenceSystem, Superposition,
};
use rand::Rng;

const STAT_TICKS: u64 = 1_000_000;
const STAT_SEEDS: [u64; 3] = [1, 2, 3];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prog(n: usize, items: &[(usize, u8, usize)]) -> InsertionProgram {
    InsertionProgram::from_insertions(n, items.iter().map(|&(b, v, t)| Insertion::new(b, v, t))).unwrap()
}

/// 1. Golden wiring, exact, under one second.
fn figures() -> Outcome {
    let start = Instant::now();
    let expected: [(&str, usize, InsertionProgram); 6] = [
        ("NOT 2", 2, prog(3, &[(2, 0, 2), (2, 1, 2)])),
        ("CNOT 1 2", 1, prog(3, &[(1, 1, 2)])),
        ("CNOT 1 2\nCNOT 0 1", 2, prog(3, &[(0, 1, 1), (1, 1, 2)])),
        ("CNOT 0 1\nCNOT 1 2", 3, prog(3, &[(0, 1, 1), (1, 1, 2), (0, 1, 2)])),
        ("CNOT 2 3\nCNOT 1 2\nCNOT 0 1", 3, prog(4, &[(0, 1, 1), (1, 1, 2), (2, 1, 3)])),
        (
            "CNOT 0 1\nCNOT 1 2\nCNOT 2 3",
            6,
            prog(4, &[(0, 1, 1), (0, 1, 2), (1, 1, 2), (0, 1, 3), (1, 1, 3), (2, 1, 3)]),
        ),
    ];
    for (text, m, want) in &expected {
        let got = compile_circuit(&parse_circuit(text, None).map_err(|e| e.to_string())?);
        ensure(&got == want && hardware_count(&got) == *m, || {
            format!("{text:?}: got {:?}", got.to_json())
        })?;
    }
    for case in figure_cascades() {
        ensure(compile_circuit(&case.circuit) == case.expected, || case.name.to_string())?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("6 cascades exact, M = 2,1,2,3,3,6 ({elapsed:.1?})"))
}

/// 2. 100 random circuits x 100 random superpositions, 3 seeds, T = 1024.
fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let cases: Vec<(GateCircuit, Superposition)> = (0..100u64)
        .map(|i| {
            let mut rng = trial_rng(0xACCE_0002, i);
            let n = rng.random_range(1..=8);
            let len = rng.random_range(0..=12);
            let c = random_circuit(&mut rng, n, len, false).unwrap();
            let y = random_explicit(&mut rng, n, 32, false).unwrap();
            (c, y.into())
        })
        .collect();
    let mut checks = 0;
    for seed in [11, 22, 33] {
        for (c, y) in &cases {
            let sys = ReferenceSystem::new(c.n_bits(), seed).unwrap();
            let r = signal_equivalence_check(&sys, c, y, 1024, Exec::default()).map_err(|e| e.to_string())?;
            ensure(r.pass(), || format!("seed {seed}, {c}: {:?}", r.first_mismatch))?;
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{checks} checks x 1024 ticks, 0 mismatches ({elapsed:.1?})"))
}

/// 3. N = 20 universe, compiled CNOT cascade, T = 4096, linear cost.
fn universe_scale() -> Outcome {
    let mut rng = trial_rng(0xACCE_0003, 0);
    let circuits = [
        GateCircuit::chained_ascending(19).unwrap(),
        random_circuit(&mut rng, 20, 40, true).unwrap(),
    ];
    let mut timings = Vec::new();
    for c in &circuits {
        let sys = ReferenceSystem::new(20, 3).unwrap();
        let start = Instant::now();
        let r = universe_invariance_check(&sys, c, 4096, Exec::default()).map_err(|e| e.to_string())?;
        timings.push(start.elapsed());
        ensure(r.pass(), || format!("{c}: {:?}", r.first_mismatch))?;
    }
    // The signal really spans 2^20 strings: nonzero ticks read +-2^20.
    let sys = ReferenceSystem::new(20, 3).unwrap();
    let trace = signal_trace(&sys, &InsertionProgram::empty(20), &Superposition::universe(20).unwrap(), 4096, Exec::default())
        .map_err(|e| e.to_string())?;
    ensure(trace.iter().all(|v| *v == 0 || v.abs() == 1 << 20), || "universe amplitude".into())?;

    // Cost per tick grows linearly with N: compare N = 10 and N = 20 at T = 2^16.
    let cost = |n: usize| {
        let c = GateCircuit::chained_ascending(n - 1).unwrap();
        let sys = ReferenceSystem::new(n, 5).unwrap();
        let start = Instant::now();
        let r = universe_invariance_check(&sys, &c, 1 << 16, Exec::Sequential).unwrap();
        assert!(r.pass());
        start.elapsed().as_secs_f64()
    };
    let ratio = cost(20) / cost(10);
    let total: Duration = timings.iter().sum();
    ensure(total < Duration::from_secs(10), || format!("took {total:?}"))?;
    // 2x the bits: linear cost gives ~2x, exponential would give ~1000x.
    ensure(ratio < 8.0, || format!("N=20/N=10 cost ratio {ratio:.2}"))?;
    Ok(format!("2 cascades exact over 4096 ticks ({total:.1?}); cost ratio N20/N10 = {ratio:.2}"))
}

/// 4. Zero mean, orthogonality, product-wave correlations at 5/sqrt(T).
fn statistics() -> Outcome {
    let mut entries = 0;
    for seed in STAT_SEEDS {
        let sys = ReferenceSystem::new(4, seed).unwrap();
        let r = sys.orthogonality_report(STAT_TICKS, Exec::default()).map_err(|e| e.to_string())?;
        ensure((r.entries[0].tolerance - 0.005).abs() < 1e-12, || "tolerance".into())?;
        for e in &r.entries {
            if e.name.starts_with("square") {
                ensure(e.estimate == 1.0, || format!("{} = {}", e.name, e.estimate))?;
            } else {
                ensure(e.expected == 0.0 && e.estimate.abs() <= 0.005, || {
                    format!("seed {seed}: {} = {}", e.name, e.estimate)
                })?;
            }
            entries += 1;
        }
    }
    Ok(format!("{entries} estimators within 0.005 (T = 1e6, seeds {STAT_SEEDS:?})"))
}

/// 5. Zero fraction of the N = 10 universe.
fn zero_problem() -> Outcome {
    let sys = ReferenceSystem::new(10, 5).unwrap();
    let r = zero_fraction(&sys, &Superposition::universe(10).unwrap(), STAT_TICKS, Exec::default())
        .map_err(|e| e.to_string())?;
    let e = &r.entries[0];
    let expected = 1.0 - 2f64.powi(-10);
    let band = 5.0 * (expected * (1.0 - expected) / STAT_TICKS as f64).sqrt();
    ensure(e.expected == expected && (e.estimate - expected).abs() <= band, || format!("{r}"))?;
    Ok(format!("zero fraction {:.6} vs {expected:.6} +- {band:.6}", e.estimate))
}

/// 6. Membership of 8 unit strings, members ~1, non-members ~0.
fn membership() -> Outcome {
    let n = 8;
    let sys = ReferenceSystem::new(n, 6).unwrap();
    let members = [3u64, 17, 60, 99, 128, 200, 241, 255];
    let y: Superposition = Explicit::new(n, members.iter().map(|&b| (BitString::new(n, b).unwrap(), 1)))
        .unwrap()
        .into();
    let tol = 5.0 * (8.0 / STAT_TICKS as f64).sqrt();
    let empty = InsertionProgram::empty(n);
    let mut worst = 0f64;
    for probe in members.iter().copied().chain([0, 1, 42, 77, 254]) {
        let s = BitString::new(n, probe).unwrap();
        let r = membership_estimate(&sys, &empty, &y, &s, STAT_TICKS, Exec::default()).map_err(|e| e.to_string())?;
        let e = &r.entries[0];
        let want = if members.contains(&probe) { 1.0 } else { 0.0 };
        ensure(e.expected == want && (e.estimate - want).abs() <= tol, || format!("{r}"))?;
        worst = worst.max((e.estimate - want).abs());
    }
    Ok(format!("13 probes, worst deviation {worst:.5} <= {tol:.5}"))
}

/// 7. Chained families attain both bounds; random violations are redundant.
fn conjecture() -> Outcome {
    for row in chained_family(10).map_err(|e| e.to_string())? {
        ensure(row.attains_bounds(), || format!("{row:?}"))?;
    }
    let mut flagged = 0;
    for (gates, bits, samples) in [(3, 4, 1_000), (5, 6, 10_000)] {
        let r = conjecture_scan(gates, bits, samples, 7, Exec::default()).map_err(|e| e.to_string())?;
        ensure(r.max_m <= r.upper_bound, || format!("max M {} > {}", r.max_m, r.upper_bound))?;
        for v in &r.violations {
            ensure(v.class.is_redundant(), || format!("irredundant violation {v:?}"))?;
            let witness = parse_circuit(&v.circuit.replace("; ", "\n"), Some(bits)).map_err(|e| e.to_string())?;
            ensure(check_cascade(&witness).map_err(|e| e.to_string())?.0 == v.m, || v.circuit.clone())?;
        }
        flagged += r.violations.len();
    }
    Ok(format!("L = 1..10 attain L and L(L+1)/2; {flagged} flagged violations, all redundant"))
}

/// 8. NOT^2 = CNOT^2 = id and linearity, exhaustive for N <= 6.
fn involution_linearity() -> Outcome {
    let ticks = 256;
    let mut checks = 0;
    for n in 1..=6usize {
        let sys = ReferenceSystem::new(n, 8).unwrap();
        let mut gates: Vec<Gate> = (0..n).map(Gate::not).collect();
        gates.extend((0..n).flat_map(|c| (0..n).filter(move |&t| t != c).map(move |t| Gate::cnot(c, t))));
        let universe = Superposition::universe(n).unwrap();
        let base = signal_trace(&sys, &InsertionProgram::empty(n), &universe, ticks, Exec::Sequential).unwrap();
        for g in &gates {
            let twice = GateCircuit::new(n, vec![*g, *g]).unwrap();
            let p = compile_circuit(&twice);
            ensure(p.is_empty(), || format!("{twice} compiles to {:?}", p.to_json()))?;
            let sig = signal_trace(&sys, &p, &universe, ticks, Exec::Sequential).unwrap();
            ensure(sig == base, || format!("{twice} changes the signal"))?;

            // Linearity: split the universe into even- and odd-valued strings
            // with different weights; signals must add tick by tick.
            let once = GateCircuit::new(n, vec![*g]).unwrap();
            let prog = compile_circuit(&once);
            let half = |parity: u64, w: i64| -> Superposition {
                Explicit::new(n, (0..1u64 << n).filter(|s| s % 2 == parity).map(|s| (BitString::new(n, s).unwrap(), w)))
                    .unwrap()
                    .into()
            };
            let (y1, y2) = (half(0, 2), half(1, -1));
            let (Superposition::Explicit(e1), Superposition::Explicit(e2)) = (&y1, &y2) else { unreachable!() };
            let both: Superposition = e1.merge(e2).unwrap().into();
            for y in [&y1, &y2, &both] {
                let r = signal_equivalence_check(&sys, &once, y, ticks, Exec::Sequential).unwrap();
                ensure(r.pass(), || format!("{once} on N = {n}: {:?}", r.first_mismatch))?;
            }
            let a1 = signal_trace(&sys, &prog, &y1, ticks, Exec::Sequential).unwrap();
            let a2 = signal_trace(&sys, &prog, &y2, ticks, Exec::Sequential).unwrap();
            let a12 = signal_trace(&sys, &prog, &both, ticks, Exec::Sequential).unwrap();
            ensure(a12.iter().zip(a1.iter().zip(&a2)).all(|(s, (a, b))| *s == a + b), || {
                format!("{once} not linear on N = {n}")
            })?;
            // Every single string, exhaustively.
            for s in 0..1u64 << n {
                let y: Superposition = Explicit::singleton(BitString::new(n, s).unwrap()).into();
                let r = signal_equivalence_check(&sys, &once, &y, ticks, Exec::Sequential).unwrap();
                ensure(r.pass(), || format!("{once} on string {s}"))?;
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} gates over N = 1..6, all strings, {ticks} ticks"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 golden wiring", figures),
        ("AC2 compilation soundness", oracle_equivalence),
        ("AC3 universe invariance at N = 20", universe_scale),
        ("AC4 orthogonality statistics", statistics),
        ("AC5 zero problem", zero_problem),
        ("AC6 membership measurement", membership),
        ("AC7 hardware-count bounds", conjecture),
        ("AC8 involution and linearity", involution_linearity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
