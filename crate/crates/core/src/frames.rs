//! Stabilizer frames: an arbitrary state written as `Σ α_i |ψ_i⟩`, where
//! every `|ψ_i⟩` shares one unsigned generator matrix and differs only in its
//! sign pattern (phase vector).
//!
//! Each `|ψ_i⟩` is taken with the toolkit phase convention (smallest-index
//! amplitude real and positive). Gate application conjugates the matrix once,
//! moves the sign changes into every phase vector and corrects each `α_i`
//! for the global phase the tableau discards.
//!
//! Text format (`.frame`):
//!
//! ```text
//! 2
//! ZI
//! IZ
//! 2
//! ++ 0.7071067811865476 0
//! -- 0.7071067811865476 0
//! ```

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::amplitude::{BasisBits, BasisSupport};
use crate::circuit::Gate;
use crate::error::{check_dims, Error, Result};
use crate::metric::{pow2_neg_half, z_row_conflicts};
use crate::oracle::{matrix_to_state, DenseState};
use crate::pauli::{parse_pauli, PauliString};
use crate::synth::basis_norm_circuit;
use crate::tableau::{RowOp, StabilizerMatrix};

/// One sign per generator; `true` is `−`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseVector(pub Vec<bool>);

impl PhaseVector {
    pub fn plus(n: usize) -> Self {
        PhaseVector(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies a canonicalization log.
    pub fn replay(&mut self, log: &[RowOp]) {
        for op in log {
            match *op {
                RowOp::Swap(a, b) => self.0.swap(a, b),
                RowOp::Mult { target, source, flip } => self.0[target] ^= self.0[source] ^ flip,
            }
        }
    }
}

impl fmt::Display for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s { "-" } else { "+" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerFrame {
    matrix: StabilizerMatrix,
    phases: Vec<PhaseVector>,
    amplitudes: Vec<Complex64>,
}

/// `m` with every row's sign replaced by `sigma`.
fn install_signs(m: &StabilizerMatrix, sigma: &PhaseVector) -> StabilizerMatrix {
    let rows = m
        .rows()
        .iter()
        .zip(&sigma.0)
        .map(|(r, &s)| {
            let mut r = r.clone();
            r.set_phase(if s { 2 } else { 0 });
            r
        })
        .collect();
    StabilizerMatrix::from_rows_unchecked(rows)
}

/// Unsigned canonical form of `m` together with its log.
fn canonical_with_log(m: &StabilizerMatrix) -> (StabilizerMatrix, Vec<RowOp>) {
    let mut c = m.clone();
    let log = c.canonicalize();
    (c, log)
}

fn support_for(canonical: &StabilizerMatrix, log: &[RowOp], sigma: &PhaseVector) -> BasisSupport {
    let mut s = sigma.clone();
    s.replay(log);
    BasisSupport::from_canonical(&install_signs(canonical, &s))
}

impl StabilizerFrame {
    /// Builds a frame. The matrix's own signs are folded into every phase
    /// vector and then cleared.
    pub fn new(
        matrix: StabilizerMatrix,
        phases: Vec<PhaseVector>,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self> {
        let n = matrix.n();
        if phases.is_empty() {
            return Err(Error::InvalidFrame("a frame needs at least one term".into()));
        }
        if phases.len() != amplitudes.len() {
            return Err(Error::InvalidFrame(format!(
                "{} phase vectors but {} amplitudes",
                phases.len(),
                amplitudes.len()
            )));
        }
        if n < usize::BITS as usize && phases.len() > 1usize << n {
            return Err(Error::InvalidFrame(format!(
                "{} terms exceed 2^{n}",
                phases.len()
            )));
        }
        let own = matrix.signs();
        let mut folded = Vec::with_capacity(phases.len());
        let mut seen = HashSet::new();
        for p in phases {
            if p.len() != n {
                return Err(Error::InvalidFrame(format!(
                    "phase vector of length {} for {n} generators",
                    p.len()
                )));
            }
            let p = PhaseVector(p.0.iter().zip(&own).map(|(a, b)| a ^ b).collect());
            if !seen.insert(p.clone()) {
                return Err(Error::InvalidFrame(format!("repeated phase vector {p}")));
            }
            folded.push(p);
        }
        let matrix = install_signs(&matrix, &PhaseVector::plus(n));
        Ok(StabilizerFrame {
            matrix,
            phases: folded,
            amplitudes,
        })
    }

    /// Single-term frame holding `m` with amplitude 1.
    pub fn from_state(m: &StabilizerMatrix) -> Self {
        StabilizerFrame::new(m.clone(), vec![PhaseVector::plus(m.n())], vec![Complex64::new(1.0, 0.0)])
            .expect("one term is always valid")
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    /// Generators with all signs `+`.
    pub fn matrix(&self) -> &StabilizerMatrix {
        &self.matrix
    }

    pub fn phase_vectors(&self) -> &[PhaseVector] {
        &self.phases
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Stabilizer matrix of term `i`.
    pub fn term(&self, i: usize) -> StabilizerMatrix {
        install_signs(&self.matrix, &self.phases[i])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let s = self.norm_sqr().sqrt();
        if s > 0.0 {
            for a in &mut self.amplitudes {
                *a /= s;
            }
        }
    }

    /// Conjugates the matrix and moves any sign it picks up into the phase
    /// vectors. Amplitudes are left alone.
    fn rotate_basis(&mut self, gate: &Gate) {
        self.matrix.apply_gate_unchecked(gate);
        for r in 0..self.n() {
            if self.matrix.row(r).is_negative() {
                for p in &mut self.phases {
                    p.0[r] = !p.0[r];
                }
            }
        }
        self.matrix = install_signs(&self.matrix, &PhaseVector::plus(self.n()));
    }

    /// Applies a unitary gate, keeping every term's global phase.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        if !gate.is_unitary() {
            return Err(Error::Unsupported("measurement on a stabilizer frame".into()));
        }
        gate.check_range(self.n())?;

        let (old_canon, old_log) = canonical_with_log(&self.matrix);
        // (target basis state, amplitude of U|ψ_i⟩ there) per term.
        let picks: Vec<(BasisBits, Complex64)> = self
            .phases
            .iter()
            .map(|p| image_amplitude(&support_for(&old_canon, &old_log, p), gate))
            .collect();

        self.rotate_basis(gate);

        let (new_canon, new_log) = canonical_with_log(&self.matrix);
        for ((p, a), (y, uy)) in self.phases.iter().zip(&mut self.amplitudes).zip(picks) {
            let gamma = support_for(&new_canon, &new_log, p).amplitude(&y);
            *a *= uy / gamma;
        }
        Ok(())
    }

    pub fn apply_gates(&mut self, gates: &[Gate]) -> Result<()> {
        for g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Dense vector `Σ α_i |ψ_i⟩`. No phase normalization is applied to the
    /// sum.
    pub fn reconstruct(&self) -> Result<DenseState> {
        let n = self.n();
        let mut acc = vec![Complex64::new(0.0, 0.0); 1 << n.min(usize::BITS as usize - 1)];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let v = matrix_to_state(&self.term(i))?;
            for (x, y) in acc.iter_mut().zip(v.amplitudes()) {
                *x += a * y;
            }
        }
        DenseState::from_amplitudes(n, acc)
    }

    pub fn to_frame_string(&self) -> String {
        self.to_string()
    }
}

/// Picks a basis state `y` where `U|ψ⟩` is nonzero and returns it with the
/// amplitude there, evaluated from at most two amplitudes of `|ψ⟩`.
fn image_amplitude(sup: &BasisSupport, gate: &Gate) -> (BasisBits, Complex64) {
    let x0 = sup.origin().clone();
    let beta = sup.amplitude(&x0);
    match *gate {
        Gate::P(q) => {
            let a = if x0.get(q) { beta * Complex64::new(0.0, 1.0) } else { beta };
            (x0, a)
        }
        Gate::Cz(c, t) => {
            let a = if x0.get(c) && x0.get(t) { -beta } else { beta };
            (x0, a)
        }
        Gate::Cnot(c, t) => {
            let mut y = x0;
            if y.get(c) {
                y.flip(t);
            }
            (y, beta)
        }
        Gate::H(q) => {
            let mut other = x0.clone();
            other.flip(q);
            let gamma = sup.amplitude(&other);
            let (u0, a0, u1, a1) = if x0.get(q) {
                (other, gamma, x0, beta)
            } else {
                (x0, beta, other, gamma)
            };
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let h0 = (a0 + a1) * s;
            let h1 = (a0 - a1) * s;
            if h0.norm() >= h1.norm() {
                (u0, h0)
            } else {
                (u1, h1)
            }
        }
        Gate::Measure(_) => unreachable!("rejected by apply_gate"),
    }
}

/// `2^(-s/2) Σ_ij |α_i β_j| δ_ij`, where `δ_ij` is zero exactly when terms
/// `i` and `j` are orthogonal.
pub fn frame_inner_product(f: &StabilizerFrame, g: &StabilizerFrame) -> Result<f64> {
    check_dims(f.n(), g.n())?;
    let norm = basis_norm_circuit(&mut f.matrix.clone());
    let (mut f, mut g) = (f.clone(), g.clone());
    for gate in norm.circuit.gates() {
        f.rotate_basis(gate);
        g.rotate_basis(gate);
    }
    let (f_canon, f_log) = canonical_with_log(&f.matrix);
    let (g_canon, g_log) = canonical_with_log(&g.matrix);
    debug_assert!(f_canon.is_basis_form());
    let replayed = |phases: &[PhaseVector], log: &[RowOp]| -> Vec<PhaseVector> {
        phases
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.replay(log);
                p
            })
            .collect()
    };
    let f_phases = replayed(&f.phases, &f_log);
    let g_phases = replayed(&g.phases, &g_log);
    let s = g_canon.x_rows() as u32;

    let f_terms: Vec<StabilizerMatrix> = f_phases.iter().map(|p| install_signs(&f_canon, p)).collect();
    let g_terms: Vec<StabilizerMatrix> = g_phases.iter().map(|p| install_signs(&g_canon, p)).collect();
    let mut total = 0.0;
    for (fi, a) in f_terms.iter().zip(&f.amplitudes) {
        for (gj, b) in g_terms.iter().zip(&g.amplitudes) {
            let orthogonal = gj
                .rows()
                .iter()
                .any(|q| !q.has_x_or_y() && z_row_conflicts(fi, q));
            if !orthogonal {
                total += (a.conj() * b).norm();
            }
        }
    }
    Ok(pow2_neg_half(s) * total)
}

impl fmt::Display for StabilizerFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n())?;
        for r in self.matrix.rows() {
            let lits: String = r.literals().map(|l| l.to_char()).collect();
            writeln!(f, "{lits}")?;
        }
        writeln!(f, "{}", self.len())?;
        for (p, a) in self.phases.iter().zip(&self.amplitudes) {
            writeln!(f, "{p} {:?} {:?}", a.re, a.im)?;
        }
        Ok(())
    }
}

/// Parses the `.frame` format.
pub fn parse_frame(text: &str) -> Result<StabilizerFrame> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::parse(text.lines().count() + 1, 1, format!("missing {what}")))
    };
    let parse_count = |(line, s): (usize, &str), what: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(line, 1, format!("expected {what}, found {s:?}")))
    };

    let n = parse_count(next("qubit count")?, "qubit count")?;
    if n == 0 {
        return Err(Error::parse(1, 1, "qubit count must be at least 1"));
    }
    let mut rows: Vec<PauliString> = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, s) = next("generator")?;
        let r = parse_pauli(s, line)?;
        if r.n() != n {
            return Err(Error::parse(line, 1, format!("expected {n} literals, found {}", r.n())));
        }
        rows.push(r);
    }
    let header = next("term count")?;
    let k = parse_count(header, "term count")?;
    let mut phases = Vec::with_capacity(k);
    let mut amps = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, s) = next("term")?;
        let mut fields = s.split_whitespace();
        let signs = fields.next().unwrap_or_default();
        let mut sigma = Vec::with_capacity(n);
        for (col, c) in signs.chars().enumerate() {
            match c {
                '+' => sigma.push(false),
                '-' => sigma.push(true),
                other => {
                    return Err(Error::parse(line, col + 1, format!("expected '+' or '-', found {other:?}")))
                }
            }
        }
        if sigma.len() != n {
            return Err(Error::parse(line, 1, format!("expected {n} signs, found {}", sigma.len())));
        }
        let mut column = signs.len() + 2;
        let mut number = |name: &str| -> Result<f64> {
            let tok = fields
                .next()
                .ok_or_else(|| Error::parse(line, column, format!("missing {name} part")))?;
            let v = tok
                .parse::<f64>()
                .map_err(|_| Error::parse(line, column, format!("bad {name} part {tok:?}")))?;
            column += tok.len() + 1;
            Ok(v)
        };
        let re = number("real")?;
        let im = number("imaginary")?;
        phases.push(PhaseVector(sigma));
        amps.push(Complex64::new(re, im));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, 1, "unexpected trailing content"));
    }
    let matrix = StabilizerMatrix::from_rows(rows)?;
    StabilizerFrame::new(matrix, phases, amps)
}

impl FromStr for StabilizerFrame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_frame(s)
    }
}
