//! Dense state-vector reference engine.
//!
//! Amplitudes are indexed big-endian: qubit 0 is the most significant bit of
//! the basis index, so `|01⟩` is index 1 and carries `X` on qubit 1 for the
//! generator `IX`. Everything here is exponential in `n` and exists to check
//! the stabilizer-side algorithms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use crate::circuit::Gate;
use crate::error::{check_dims, Error, Result};
use crate::pauli::{PauliLiteral, PauliString};
use crate::tableau::StabilizerMatrix;

/// Largest register the oracle will expand.
pub const ORACLE_MAX_QUBITS: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

fn check_size(n: usize) -> Result<()> {
    if n > ORACLE_MAX_QUBITS {
        Err(Error::TooLarge {
            n,
            max: ORACLE_MAX_QUBITS,
        })
    } else {
        Ok(())
    }
}

/// `i^k`.
pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

impl DenseState {
    pub fn zero(n: usize) -> Result<Self> {
        check_size(n)?;
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(DenseState { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n)?;
        check_dims(1 << n, amps.len())?;
        Ok(DenseState { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Bit of qubit `q` in basis index `y`.
    #[inline]
    pub fn bit(&self, y: usize, q: usize) -> bool {
        (y >> (self.n - 1 - q)) & 1 == 1
    }

    pub fn normalize(&mut self) {
        let norm = self.norm();
        if norm > 0.0 {
            for a in &mut self.amps {
                *a /= norm;
            }
        }
    }

    /// Rotates the global phase so the first amplitude with modulus above
    /// `1e-12` is real and positive.
    pub fn fix_phase(&mut self) {
        if let Some(first) = self.amps.iter().find(|a| a.norm() > 1e-12) {
            let rot = first.conj() / first.norm();
            for a in &mut self.amps {
                *a *= rot;
            }
        }
    }

    /// Applies a Pauli string as an operator.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<DenseState> {
        check_dims(self.n, p.n())?;
        let n = self.n;
        let mut xmask = 0usize;
        let mut zmask = 0usize;
        for q in 0..n {
            let shift = n - 1 - q;
            if p.x_bit(q) {
                xmask |= 1 << shift;
            }
            if p.z_bit(q) {
                zmask |= 1 << shift;
            }
        }
        // Y = iXZ on each qubit, so the string is i^(k + #Y) X(x) Z(z).
        let base = i_pow(u32::from(p.phase()) + p.y_count());
        let mut out = vec![ZERO; self.amps.len()];
        for (y, &a) in self.amps.iter().enumerate() {
            let sign = if (zmask & y).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[y ^ xmask] += base * a * sign;
        }
        Ok(DenseState { n, amps: out })
    }

    /// Applies one gate. Measurements sample the Born distribution, collapse
    /// and renormalize, returning the outcome bit.
    pub fn apply<R: Rng + ?Sized>(&mut self, gate: &Gate, rng: &mut R) -> Result<Option<u8>> {
        gate.check_range(self.n)?;
        let n = self.n;
        let mask = |q: usize| 1usize << (n - 1 - q);
        match *gate {
            Gate::H(q) => {
                let m = mask(q);
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for y in 0..self.amps.len() {
                    if y & m == 0 {
                        let a0 = self.amps[y];
                        let a1 = self.amps[y | m];
                        self.amps[y] = (a0 + a1) * s;
                        self.amps[y | m] = (a0 - a1) * s;
                    }
                }
            }
            Gate::P(q) => {
                let m = mask(q);
                for (y, a) in self.amps.iter_mut().enumerate() {
                    if y & m != 0 {
                        *a *= I;
                    }
                }
            }
            Gate::Cnot(c, t) => {
                let (mc, mt) = (mask(c), mask(t));
                for y in 0..self.amps.len() {
                    if y & mc != 0 && y & mt == 0 {
                        self.amps.swap(y, y | mt);
                    }
                }
            }
            Gate::Cz(c, t) => {
                let both = mask(c) | mask(t);
                for (y, a) in self.amps.iter_mut().enumerate() {
                    if y & both == both {
                        *a = -*a;
                    }
                }
            }
            Gate::Measure(q) => {
                let m = mask(q);
                let p1: f64 = self
                    .amps
                    .iter()
                    .enumerate()
                    .filter(|(y, _)| y & m != 0)
                    .map(|(_, a)| a.norm_sqr())
                    .sum();
                let draw: f64 = rng.random();
                let bit = draw < p1;
                for (y, a) in self.amps.iter_mut().enumerate() {
                    if (y & m != 0) != bit {
                        *a = ZERO;
                    }
                }
                self.normalize();
                return Ok(Some(bit as u8));
            }
        }
        Ok(None)
    }
}

/// Dense vector of the stabilizer state, phase-fixed.
///
/// Runs the projector `∏ (I + g_i)/2` on basis vectors `|0⟩, |1⟩, …` until one
/// survives.
pub fn matrix_to_state(m: &StabilizerMatrix) -> Result<DenseState> {
    let n = m.n();
    check_size(n)?;
    for y in 0..1usize << n {
        let mut amps = vec![ZERO; 1 << n];
        amps[y] = ONE;
        let mut v = DenseState { n, amps };
        for g in m.rows() {
            let gv = v.apply_pauli(g)?;
            for (a, b) in v.amps.iter_mut().zip(&gv.amps) {
                *a = (*a + b) * 0.5;
            }
        }
        if v.norm() > 1e-6 {
            v.normalize();
            v.fix_phase();
            return Ok(v);
        }
    }
    Err(Error::InvalidMatrix("projector annihilates every basis vector".into()))
}

/// `⟨a|b⟩ = Σ conj(a_i) b_i`.
pub fn dense_inner_product(a: &DenseState, b: &DenseState) -> Result<Complex64> {
    check_dims(a.n, b.n)?;
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// `|⟨a|b⟩|`.
pub fn fidelity(a: &DenseState, b: &DenseState) -> Result<f64> {
    Ok(dense_inner_product(a, b)?.norm())
}

/// Dense operator matrix, row-major.
pub type DenseMatrix = Vec<Vec<Complex64>>;

fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![ZERO; ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn literal_matrix(l: PauliLiteral) -> DenseMatrix {
    match l {
        PauliLiteral::I => vec![vec![ONE, ZERO], vec![ZERO, ONE]],
        PauliLiteral::X => vec![vec![ZERO, ONE], vec![ONE, ZERO]],
        PauliLiteral::Y => vec![vec![ZERO, -I], vec![I, ZERO]],
        PauliLiteral::Z => vec![vec![ONE, ZERO], vec![ZERO, -ONE]],
    }
}

/// `i^k P_1 ⊗ … ⊗ P_n` by explicit Kronecker products.
pub fn pauli_matrix(p: &PauliString) -> DenseMatrix {
    let mut acc = vec![vec![i_pow(u32::from(p.phase()))]];
    for lit in p.literals() {
        acc = kron(&acc, &literal_matrix(lit));
    }
    acc
}

/// Full `2^n × 2^n` unitary of a gate, built column by column from
/// [`DenseState::apply`].
pub fn gate_matrix(gate: &Gate, n: usize) -> Result<DenseMatrix> {
    if !gate.is_unitary() {
        return Err(Error::Unsupported("measurement has no unitary matrix".into()));
    }
    check_size(n)?;
    let dim = 1 << n;
    let mut out = vec![vec![ZERO; dim]; dim];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for col in 0..dim {
        let mut amps = vec![ZERO; dim];
        amps[col] = ONE;
        let mut s = DenseState { n, amps };
        s.apply(gate, &mut rng)?;
        for row in 0..dim {
            out[row][col] = s.amps[row];
        }
    }
    Ok(out)
}

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let d = a.len();
    let mut out = vec![vec![ZERO; d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == ZERO {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &DenseMatrix) -> DenseMatrix {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| a[j][i].conj()).collect()).collect()
}
