//! `inbl`: compile NOT/CNOT circuits to reference-wire programs, simulate
//! superposition signals, and run the verification and statistics suites.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage, parse or config error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use inbl::conjecture::{chained_family, conjecture_scan};
use inbl::hyperspace::{signal_trace, zero_fraction, MAX_SIGNAL_BITS};
use inbl::verify::{figure_suite, random_suite, DEFAULT_TICKS};
use inbl::{compile_circuit, parse_circuit, Exec, InsertionProgram, ReferenceSystem, Superposition};
use serde::Serialize;

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(name = "inbl", version, about = "Noise-based logic gate compiler and simulator")]
struct Cli {
    /// Run every inner loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Figures,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a circuit file to its insertion program (JSON).
    Compile {
        #[arg(long)]
        circuit: PathBuf,
        /// Width override (defaults to 1 + highest index).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the exact signal of a superposition, one row per tick.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Draw the seed from OS entropy instead (printed to stderr).
        #[arg(long, conflicts_with = "seed")]
        true_random: bool,
        #[arg(long)]
        ticks: u64,
        /// `universe`, a {0,1,*} pattern, or `101;2*110`.
        #[arg(long)]
        superposition: String,
        /// Circuit whose compiled program rewires the reference.
        #[arg(long)]
        circuit: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TraceFormat,
    },
    /// Tick-wise equivalence of compiled wiring against the bit-level oracle.
    Verify {
        #[arg(long, value_enum, default_value = "figures")]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TICKS)]
        ticks: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zero-mean, orthogonality and zero-fraction statistics.
    Stats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ticks: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan random CNOT cascades against the NOT-element bounds.
    Conjecture {
        #[arg(long)]
        gates: usize,
        #[arg(long)]
        bits: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also tabulate the chained cascades up to this length.
        #[arg(long, default_value_t = 10)]
        chain: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_circuit(path: &Path, n: Option<usize>) -> anyhow::Result<inbl::GateCircuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_circuit(&text, n).with_context(|| format!("{}", path.display()))
}

fn check_width(n: usize) -> anyhow::Result<()> {
    if n == 0 || n > MAX_SIGNAL_BITS {
        bail!(inbl::Error::Config(format!("--n must be in [1, {MAX_SIGNAL_BITS}], got {n}")));
    }
    Ok(())
}

fn check_ticks(ticks: u64) -> anyhow::Result<()> {
    if ticks == 0 {
        bail!(inbl::Error::Config("--ticks must be at least 1".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct TraceJson<'a> {
    n_bits: usize,
    seed: u64,
    ticks: u64,
    superposition: &'a str,
    program: Option<inbl::compile::ProgramJson>,
    signals: Vec<i64>,
}

#[derive(Serialize)]
struct StatsJson<'a> {
    orthogonality: &'a inbl::StatReport,
    zero_fraction: &'a inbl::StatReport,
    pass: bool,
}

#[derive(Serialize)]
struct ConjectureJson<'a> {
    scan: &'a inbl::conjecture::ScanReport,
    chained: &'a [inbl::conjecture::ChainRow],
}

/// `Ok(true)` when every check passed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match cli.command {
        Command::Compile { circuit, n, out } => {
            let circ = read_circuit(&circuit, n)?;
            let prog = compile_circuit(&circ);
            let json = serde_json::to_string_pretty(&prog.to_json())?;
            emit(out.as_deref(), &(json + "\n"))?;
            Ok(true)
        }
        Command::Simulate {
            n,
            seed,
            true_random,
            ticks,
            superposition,
            circuit,
            out,
            format,
        } => {
            check_width(n)?;
            check_ticks(ticks)?;
            let seed = if true_random {
                let s: u64 = rand::random();
                eprintln!("seed {s}");
                s
            } else {
                seed
            };
            let sys = ReferenceSystem::new(n, seed)?;
            let y = Superposition::parse(&superposition, n)?;
            let prog = match &circuit {
                Some(path) => compile_circuit(&read_circuit(path, Some(n))?),
                None => InsertionProgram::empty(n),
            };
            let signals = signal_trace(&sys, &prog, &y, ticks, exec)?;
            let text = match format {
                TraceFormat::Csv => {
                    let mut s = String::from("tick,signal\n");
                    for (t, v) in signals.iter().enumerate() {
                        s.push_str(&format!("{t},{v}\n"));
                    }
                    s
                }
                TraceFormat::Json => {
                    let doc = TraceJson {
                        n_bits: n,
                        seed,
                        ticks,
                        superposition: &superposition,
                        program: circuit.is_some().then(|| prog.to_json()),
                        signals,
                    };
                    serde_json::to_string(&doc)? + "\n"
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            ticks,
            format,
            out,
        } => {
            check_ticks(ticks)?;
            let report = match suite {
                Suite::Figures => figure_suite(exec)?,
                Suite::Random => random_suite(trials, seed, ticks, exec)?,
            };
            let text = match format {
                ReportFormat::Text => format!("{report}\n"),
                ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            emit(out.as_deref(), &text)?;
            Ok(report.pass)
        }
        Command::Stats {
            n,
            ticks,
            seed,
            format,
            out,
        } => {
            check_width(n)?;
            check_ticks(ticks)?;
            let sys = ReferenceSystem::new(n, seed)?;
            let orth = sys.orthogonality_report(ticks, exec)?;
            let zeros = zero_fraction(&sys, &Superposition::universe(n)?, ticks, exec)?;
            let pass = orth.all_pass() && zeros.all_pass();
            let text = match format {
                ReportFormat::Text => format!("{orth}{zeros}{}\n", if pass { "all pass" } else { "FAILED" }),
                ReportFormat::Json => {
                    serde_json::to_string_pretty(&StatsJson {
                        orthogonality: &orth,
                        zero_fraction: &zeros,
                        pass,
                    })? + "\n"
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(pass)
        }
        Command::Conjecture {
            gates,
            bits,
            samples,
            seed,
            chain,
            format,
            out,
        } => {
            let scan = conjecture_scan(gates, bits, samples, seed, exec)?;
            let chained = chained_family(chain)?;
            let text = match format {
                ReportFormat::Text => {
                    let mut s = scan.to_string();
                    s.push_str("chained cascades (L: non-interacting M, interacting M, bounds)\n");
                    for r in &chained {
                        s.push_str(&format!(
                            "  L = {:>2}: {:>2} {:>3}  [{}, {}]\n",
                            r.len, r.m_non_interacting, r.m_interacting, r.lower, r.upper
                        ));
                    }
                    s
                }
                ReportFormat::Json => serde_json::to_string_pretty(&ConjectureJson {
                    scan: &scan,
                    chained: &chained,
                })? + "\n",
            };
            emit(out.as_deref(), &text)?;
            // Violations are findings, reported as warnings.
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
