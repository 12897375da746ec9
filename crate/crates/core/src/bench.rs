//! Random stabilizer circuits and inner-product timing sweeps.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::metric::inner_product;
use crate::pauli::{PauliLiteral, PauliString};
use crate::synth::basis_norm_circuit;
use crate::tableau::StabilizerMatrix;

pub const CSV_HEADER: &str = "n,beta,trial,seconds,gate_count,s_exponent";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub n_values: Vec<usize>,
    pub beta: f64,
    pub trials: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidArgument(format!("beta must be positive, got {}", self.beta)));
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// `⌈β·n·log₂ n⌉`.
pub fn gate_budget(n: usize, beta: f64) -> usize {
    let nf = n as f64;
    (beta * nf * nf.log2()).ceil().max(0.0) as usize
}

/// Random unitary circuit: each gate is H, P or CNOT with probability 1/3,
/// on uniformly chosen qubits.
pub fn random_circuit<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> Circuit {
    assert!(n >= 2, "random circuits need at least two qubits");
    let mut c = Circuit::new(n);
    for _ in 0..gate_budget(n, beta) {
        let gate = match rng.random_range(0..3) {
            0 => Gate::H(rng.random_range(0..n)),
            1 => Gate::P(rng.random_range(0..n)),
            _ => {
                let ctrl = rng.random_range(0..n);
                let mut t = rng.random_range(0..n - 1);
                if t >= ctrl {
                    t += 1;
                }
                Gate::Cnot(ctrl, t)
            }
        };
        c.push_unchecked(gate);
    }
    c
}

/// A random circuit of the given density applied to `|0…0⟩`.
pub fn random_state<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> StabilizerMatrix {
    let mut m = StabilizerMatrix::zero_state(n).expect("n >= 2");
    for g in random_circuit(n, beta, rng).gates() {
        m.apply_gate_unchecked(g);
    }
    m
}

/// `(|0…0⟩ + |1…1⟩)/√2` as `{X…X, Z₀Z₁, Z₁Z₂, …}`.
pub fn ghz_state(n: usize) -> Result<StabilizerMatrix> {
    let mut rows = vec![PauliString::from_literals(&vec![PauliLiteral::X; n], 0)];
    for i in 0..n.saturating_sub(1) {
        let mut r = PauliString::identity(n);
        r.set_literal(i, PauliLiteral::Z);
        r.set_literal(i + 1, PauliLiteral::Z);
        rows.push(r);
    }
    StabilizerMatrix::from_rows(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Two random states.
    Random,
    /// Random state against `|0…0⟩`.
    VersusZero,
    /// Random state against GHZ.
    VersusGhz,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub kind: PairKind,
    pub n: usize,
    pub beta: f64,
    pub trial: usize,
    pub seconds: f64,
    pub gate_count: usize,
    pub s_exponent: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub kind: PairKind,
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub stddev: f64,
    pub mean_gate_count: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub config: BenchConfig,
    pub records: Vec<TrialRecord>,
    pub summaries: Vec<Summary>,
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.is_empty() {
        f64::NAN
    } else if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn timed_trial(
    kind: PairKind,
    a: &StabilizerMatrix,
    b: &StabilizerMatrix,
    beta: f64,
    trial: usize,
) -> TrialRecord {
    let start = Instant::now();
    let r = inner_product(a, b).expect("equal sizes");
    let seconds = start.elapsed().as_secs_f64();
    let gate_count = basis_norm_circuit(&mut a.clone()).circuit.len();
    TrialRecord {
        kind,
        n: a.n(),
        beta,
        trial,
        seconds,
        gate_count,
        s_exponent: r.s_exponent,
    }
}

/// Times `inner_product` on random pairs and on the two special cases.
pub fn run_sweep(cfg: &BenchConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut records = Vec::new();
    let mut summaries = Vec::new();
    for &n in &cfg.n_values {
        let zero = StabilizerMatrix::zero_state(n)?;
        let ghz = ghz_state(n)?;
        let mut batch = Vec::with_capacity(3 * cfg.trials);
        for trial in 0..cfg.trials {
            let a = random_state(n, cfg.beta, &mut rng);
            let b = random_state(n, cfg.beta, &mut rng);
            batch.push(timed_trial(PairKind::Random, &a, &b, cfg.beta, trial));
            batch.push(timed_trial(PairKind::VersusZero, &a, &zero, cfg.beta, trial));
            batch.push(timed_trial(PairKind::VersusGhz, &a, &ghz, cfg.beta, trial));
        }
        for kind in [PairKind::Random, PairKind::VersusZero, PairKind::VersusGhz] {
            let times: Vec<f64> = batch.iter().filter(|r| r.kind == kind).map(|r| r.seconds).collect();
            let gates: Vec<f64> = batch
                .iter()
                .filter(|r| r.kind == kind)
                .map(|r| r.gate_count as f64)
                .collect();
            let (mean, stddev) = mean_std(&times);
            summaries.push(Summary {
                kind,
                n,
                mean,
                median: median(&times),
                stddev,
                mean_gate_count: mean_std(&gates).0,
            });
        }
        records.extend(batch);
    }
    Ok(SweepReport {
        config: cfg.clone(),
        records,
        summaries,
    })
}

impl SweepReport {
    /// One CSV row per random-pair trial.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in self.records.iter().filter(|r| r.kind == PairKind::Random) {
            let s = r.s_exponent.map_or_else(|| "orthogonal".to_string(), |s| s.to_string());
            let _ = writeln!(out, "{},{},{},{:.9},{},{}", r.n, r.beta, r.trial, r.seconds, r.gate_count, s);
        }
        out
    }

    pub fn summary(&self, kind: PairKind) -> impl Iterator<Item = &Summary> {
        self.summaries.iter().filter(move |s| s.kind == kind)
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let (mx, my) = (mean_std(&lx).0, mean_std(&ly).0);
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

/// Fit `y ≈ c·n²` through the origin; returns `(c, R²)`.
pub fn quadratic_fit(ns: &[f64], ys: &[f64]) -> (f64, f64) {
    let sxx: f64 = ns.iter().map(|n| n.powi(4)).sum();
    let sxy: f64 = ns.iter().zip(ys).map(|(n, y)| n * n * y).sum();
    let c = sxy / sxx;
    let my = mean_std(ys).0;
    let ss_res: f64 = ns.iter().zip(ys).map(|(n, y)| (y - c * n * n).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    (c, 1.0 - ss_res / ss_tot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_budget_examples() {
        assert_eq!(gate_budget(20, 0.6), 52);
        assert_eq!(gate_budget(2, 1e-9), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_circuit(20, 0.6, &mut rng).len(), 52);
    }

    #[test]
    fn circuits_are_reproducible_and_well_formed() {
        let a = random_circuit(7, 1.2, &mut ChaCha8Rng::seed_from_u64(9));
        let b = random_circuit(7, 1.2, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
        for g in a.gates() {
            assert!(g.check_range(7).is_ok());
            assert!(matches!(g, Gate::H(_) | Gate::P(_) | Gate::Cnot(..)));
        }
    }

    #[test]
    fn ghz_against_zero() {
        for n in 2..8 {
            let r = inner_product(&ghz_state(n).unwrap(), &StabilizerMatrix::zero_state(n).unwrap()).unwrap();
            assert_eq!(r.s_exponent, Some(1));
        }
    }

    #[test]
    fn sweep_is_reproducible_apart_from_timing() {
        let cfg = BenchConfig {
            n_values: vec![4, 8],
            beta: 0.6,
            trials: 3,
            seed: 5,
        };
        let strip = |r: &SweepReport| {
            r.records
                .iter()
                .map(|t| (t.n, t.trial, t.gate_count, t.s_exponent))
                .collect::<Vec<_>>()
        };
        let (a, b) = (run_sweep(&cfg).unwrap(), run_sweep(&cfg).unwrap());
        assert_eq!(strip(&a), strip(&b));
        let csv = a.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 1 + 6);
    }

    #[test]
    fn config_validation() {
        let bad = BenchConfig {
            n_values: vec![1],
            beta: 0.6,
            trials: 1,
            seed: 0,
        };
        assert!(bad.validate().is_err());
        assert!(BenchConfig { beta: 0.0, n_values: vec![4], ..bad }.validate().is_err());
    }

    #[test]
    fn fit_helpers() {
        let ns = [10.0, 20.0, 40.0];
        let ys: Vec<f64> = ns.iter().map(|n: &f64| 3.0 * n * n).collect();
        assert!((log_log_slope(&ns, &ys) - 2.0).abs() < 1e-12);
        let (c, r2) = quadratic_fit(&ns, &ys);
        assert!((c - 3.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
    }
}
