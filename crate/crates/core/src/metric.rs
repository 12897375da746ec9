//! Inner-product magnitude between two stabilizer states.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use crate::error::{check_dims, Result};
use crate::pauli::{PauliLiteral, PauliString};
use crate::synth::basis_norm_circuit;
use crate::tableau::StabilizerMatrix;

/// `|⟨ψ|φ⟩|`, either zero or `2^(-s/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerProductResult {
    pub magnitude: f64,
    /// `None` when the states are orthogonal.
    pub s_exponent: Option<u32>,
}

/// `2^(-s/2)` rounded once: an exact power of two, times `1/√2` for odd `s`.
pub fn pow2_neg_half(s: u32) -> f64 {
    let whole = 2f64.powi(-((s / 2) as i32));
    if s % 2 == 1 {
        FRAC_1_SQRT_2 * whole
    } else {
        whole
    }
}

impl InnerProductResult {
    pub fn orthogonal() -> Self {
        InnerProductResult {
            magnitude: 0.0,
            s_exponent: None,
        }
    }

    pub fn from_exponent(s: u32) -> Self {
        InnerProductResult {
            magnitude: pow2_neg_half(s),
            s_exponent: Some(s),
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        self.s_exponent.is_none()
    }

    /// `arccos` of the magnitude; `π/2` when orthogonal.
    pub fn angle(&self) -> f64 {
        match self.s_exponent {
            None => FRAC_PI_2,
            Some(_) => self.magnitude.min(1.0).acos(),
        }
    }

    /// Exact form such as `2^-1/2`, `1` or `0`.
    pub fn exact(&self) -> String {
        match self.s_exponent {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(s) => format!("2^-{s}/2"),
        }
    }
}

/// True when a Z-only row `q` of the normalized second state has a sign
/// opposite to the product of the basis-form rows at its Z positions.
pub(crate) fn z_row_conflicts(basis: &StabilizerMatrix, q: &PauliString) -> bool {
    let n = basis.n();
    let mut r = PauliString::identity(n);
    for j in 0..n {
        if q.literal(j) == PauliLiteral::Z {
            r.left_mul_assign(basis.row(j));
        }
    }
    debug_assert!(r.same_literals(q));
    r.phase() != q.phase()
}

/// Inner-product magnitude of two stabilizer states. Works on copies.
pub fn inner_product(a: &StabilizerMatrix, b: &StabilizerMatrix) -> Result<InnerProductResult> {
    check_dims(a.n(), b.n())?;
    let mut psi = a.clone();
    let mut phi = b.clone();
    let norm = basis_norm_circuit(&mut psi);
    for g in norm.circuit.gates() {
        phi.apply_gate_unchecked(g);
    }
    phi.canonicalize_quiet();
    let mut k = 0;
    for q in phi.rows() {
        if q.has_x_or_y() {
            k += 1;
        } else if z_row_conflicts(&psi, q) {
            return Ok(InnerProductResult::orthogonal());
        }
    }
    Ok(InnerProductResult::from_exponent(k))
}

/// Angle in radians between two stabilizer states.
pub fn angle(a: &StabilizerMatrix, b: &StabilizerMatrix) -> Result<f64> {
    Ok(inner_product(a, b)?.angle())
}
