use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stabilizer_core::bench::{run_sweep, BenchConfig, PairKind};
use stabilizer_core::frames::{frame_inner_product, parse_frame, StabilizerFrame};
use stabilizer_core::geometry::{enumerate_states, nearest_neighbors, render_report, render_report_csv, report};
use stabilizer_core::oracle::matrix_to_state;
use stabilizer_core::{basis_norm_circuit, inner_product, parse_stab, Error, StabilizerMatrix};

#[derive(Parser)]
#[command(name = "stabtool", version, about = "Stabilizer-state canonical forms, circuits and inner products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical form of a .stab file.
    Canon { input: PathBuf },
    /// Print the basis-normalization circuit (.qc) and the basis state it reaches.
    Synth { input: PathBuf },
    /// Inner-product magnitude of two states.
    Ip { a: PathBuf, b: PathBuf },
    /// Count the nearest-neighbor states.
    Neighbors {
        input: PathBuf,
        /// Also print each neighbor's generators.
        #[arg(long)]
        list: bool,
    },
    /// List every stabilizer state on n qubits with its angle to |0…0⟩.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Print the dense amplitudes of a state.
    Amps { input: PathBuf },
    /// Inner product of two stabilizer frames.
    FrameIp { a: PathBuf, b: PathBuf },
    /// Time inner products on random states.
    Bench {
        /// Qubit counts, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0.6)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Write per-trial rows to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

enum Failure {
    Io(String),
    Lib(Error),
    InFile(PathBuf, Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Lib(e) | Failure::InFile(_, e) => match e {
                Error::Parse { .. } => 2,
                Error::DimensionMismatch { .. } => 3,
                Error::InvalidMatrix(_) | Error::InvalidFrame(_) => 4,
                _ => 1,
            },
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: Error) -> Failure {
    Failure::InFile(path.to_path_buf(), e)
}

fn load_stab(path: &Path) -> Result<StabilizerMatrix, Failure> {
    parse_stab(&read(path)?).map_err(|e| with_path(path, e))
}

fn load_frame(path: &Path) -> Result<StabilizerFrame, Failure> {
    parse_frame(&read(path)?).map_err(|e| with_path(path, e))
}

fn run(cmd: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match cmd {
        Command::Canon { input } => {
            let mut m = load_stab(&input)?;
            m.canonicalize_quiet();
            out = m.to_stab_string();
        }
        Command::Synth { input } => {
            let mut m = load_stab(&input)?;
            let norm = basis_norm_circuit(&mut m);
            out.push_str(&norm.circuit.to_qc_string());
            let bits: String = norm.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            let _ = writeln!(out, "# basis {bits}");
        }
        Command::Ip { a, b } => {
            let r = inner_product(&load_stab(&a)?, &load_stab(&b)?)?;
            let _ = writeln!(out, "{} ≈ {:.8}", r.exact(), r.magnitude);
            match r.s_exponent {
                Some(s) => {
                    let _ = writeln!(out, "s = {s}");
                }
                None => out.push_str("s = orthogonal\n"),
            }
        }
        Command::Neighbors { input, list } => {
            let set = nearest_neighbors(&load_stab(&input)?)?;
            let _ = writeln!(out, "{}", set.neighbors.len());
            if list {
                for m in &set.neighbors {
                    let _ = writeln!(out, "{}", m.generators_string());
                }
            }
        }
        Command::Enumerate { n, csv } => {
            let rows = report(&enumerate_states(n)?)?;
            out = if csv { render_report_csv(&rows) } else { render_report(&rows) };
        }
        Command::Amps { input } => {
            let m = load_stab(&input)?;
            let d = matrix_to_state(&m)?;
            let n = m.n();
            for (i, a) in d.amplitudes().iter().enumerate() {
                let _ = writeln!(out, "{i:0n$b} {:+.8} {:+.8}i", a.re, a.im);
            }
        }
        Command::FrameIp { a, b } => {
            let v = frame_inner_product(&load_frame(&a)?, &load_frame(&b)?)?;
            let _ = writeln!(out, "{v:.8}");
        }
        Command::Bench {
            n,
            beta,
            seed,
            trials,
            csv,
        } => {
            let cfg = BenchConfig {
                n_values: n,
                beta,
                trials,
                seed,
            };
            let rep = run_sweep(&cfg)?;
            out.push_str("pair      n  median_s      mean_s        stddev_s      gates\n");
            for kind in [PairKind::Random, PairKind::VersusZero, PairKind::VersusGhz] {
                let label = match kind {
                    PairKind::Random => "random",
                    PairKind::VersusZero => "zero",
                    PairKind::VersusGhz => "ghz",
                };
                for s in rep.summary(kind) {
                    let _ = writeln!(
                        out,
                        "{label:<8} {:>3}  {:.6e}  {:.6e}  {:.6e}  {:.1}",
                        s.n, s.median, s.mean, s.stddev, s.mean_gate_count
                    );
                }
            }
            if let Some(path) = csv {
                fs::write(&path, rep.to_csv()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::InFile(path, e) => eprintln!("error: {}: {e}", path.display()),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
