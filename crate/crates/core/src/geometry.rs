//! Unbiased superpositions, nearest neighbors and exhaustive enumeration.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::circuit::Gate;
use crate::error::{check_dims, Error, Result};
use crate::metric::{inner_product, InnerProductResult};
use crate::oracle::matrix_to_state;
use crate::pauli::{PauliLiteral, PauliString};
use crate::synth::{basis_norm_circuit, reverse, BasisNormalization};
use crate::tableau::StabilizerMatrix;

/// Largest register for neighbor enumeration (`4(2^n − 1)` states).
pub const NEIGHBOR_MAX_QUBITS: usize = 16;
/// Largest register for exhaustive enumeration.
pub const ENUMERATE_MAX_QUBITS: usize = 3;

#[derive(Debug, Clone)]
pub struct NeighborSet {
    pub base: StabilizerMatrix,
    pub neighbors: Vec<StabilizerMatrix>,
}

/// Normalization of `psi` plus the inverse circuit, shared by every
/// superposition built on the same base.
struct Frame {
    norm: BasisNormalization,
    inverse: Vec<Gate>,
}

impl Frame {
    fn new(psi: &StabilizerMatrix) -> Self {
        let norm = basis_norm_circuit(&mut psi.clone());
        let inverse = reverse(&norm.circuit).expect("unitary").gates().to_vec();
        Frame { norm, inverse }
    }

    /// Conjugate by `X(b)`: negate when the string has Z or Y on an odd
    /// number of positions where `b` is set.
    fn flip_by_bits(&self, p: &mut PauliString) {
        let odd = self
            .norm
            .bits
            .iter()
            .enumerate()
            .filter(|&(q, &b)| b && p.z_bit(q))
            .count()
            % 2
            == 1;
        if odd {
            p.negate();
        }
    }

    /// Maps `p` into the frame where the base is `|0…0⟩`.
    fn forward(&self, p: &PauliString) -> PauliString {
        let mut q = p.clone();
        for g in self.norm.circuit.gates() {
            q.conjugate_unchecked(g);
        }
        self.flip_by_bits(&mut q);
        q
    }

    /// Builds the state `(|0…0⟩ + i^t|v⟩)/√2` and maps it back to the
    /// original frame.
    fn superposition(&self, t: u8, v: &[bool]) -> StabilizerMatrix {
        let n = v.len();
        let support: Vec<usize> = (0..n).filter(|&q| v[q]).collect();
        let mut rows = Vec::with_capacity(n);

        let mut lead = PauliString::identity(n);
        for &q in &support {
            lead.set_literal(q, PauliLiteral::X);
        }
        if t % 2 == 1 {
            lead.set_literal(support[0], PauliLiteral::Y);
        }
        if (t / 2) % 2 == 1 {
            lead.negate();
        }
        rows.push(lead);
        for w in support.windows(2) {
            let mut r = PauliString::identity(n);
            r.set_literal(w[0], PauliLiteral::Z);
            r.set_literal(w[1], PauliLiteral::Z);
            rows.push(r);
        }
        for q in (0..n).filter(|&q| !v[q]) {
            rows.push(PauliString::single(n, q, PauliLiteral::Z));
        }

        for r in &mut rows {
            self.flip_by_bits(r);
            for g in &self.inverse {
                r.conjugate_unchecked(g);
            }
        }
        let m = StabilizerMatrix::from_rows_unchecked(rows);
        debug_assert!(m.validate().is_ok());
        m
    }

    /// Reduces `i^t X(v) Z(u)` acting on `|0…0⟩` to `(t, v)`.
    fn phase_and_support(q: &PauliString) -> (u8, Vec<bool>) {
        let t = ((u32::from(q.phase()) + q.y_count()) % 4) as u8;
        let v = (0..q.n()).map(|j| q.x_bit(j)).collect();
        (t, v)
    }
}

/// Stabilizer matrix of `(|ψ⟩ + P|ψ⟩)/√2`.
///
/// Requires `P|ψ⟩ ⊥ |ψ⟩`, which holds exactly when `p` anticommutes with
/// some generator.
pub fn superpose(psi: &StabilizerMatrix, p: &PauliString) -> Result<StabilizerMatrix> {
    check_dims(psi.n(), p.n())?;
    if psi.rows().iter().all(|r| !r.anticommutes_unchecked(p)) {
        return Err(Error::NotSuperposition);
    }
    let frame = Frame::new(psi);
    let (t, v) = Frame::phase_and_support(&frame.forward(p));
    debug_assert!(v.iter().any(|&b| b));
    Ok(frame.superposition(t, &v))
}

/// All `4(2^n − 1)` states at inner-product magnitude `2^(-1/2)` from `psi`.
pub fn nearest_neighbors(psi: &StabilizerMatrix) -> Result<NeighborSet> {
    let n = psi.n();
    if n > NEIGHBOR_MAX_QUBITS {
        return Err(Error::TooLarge {
            n,
            max: NEIGHBOR_MAX_QUBITS,
        });
    }
    let frame = Frame::new(psi);
    let mut seen = HashSet::new();
    let mut neighbors = Vec::with_capacity(4 * ((1 << n) - 1));
    for mask in 1usize..1 << n {
        let v: Vec<bool> = (0..n).map(|q| (mask >> q) & 1 == 1).collect();
        for t in 0..4 {
            let m = frame.superposition(t, &v);
            if seen.insert(m.canonical_key()) {
                neighbors.push(m);
            }
        }
    }
    debug_assert_eq!(neighbors.len(), 4 * ((1 << n) - 1), "distinct (v, t) pairs gave equal states");
    Ok(NeighborSet {
        base: psi.clone(),
        neighbors,
    })
}

/// Every `n`-qubit stabilizer state in canonical form, by breadth-first
/// closure of `|0…0⟩` under H, P and CNOT.
pub fn enumerate_states(n: usize) -> Result<Vec<StabilizerMatrix>> {
    if n == 0 || n > ENUMERATE_MAX_QUBITS {
        return Err(Error::TooLarge {
            n,
            max: ENUMERATE_MAX_QUBITS,
        });
    }
    let mut gates: Vec<Gate> = (0..n).flat_map(|q| [Gate::H(q), Gate::P(q)]).collect();
    for c in 0..n {
        for t in (0..n).filter(|&t| t != c) {
            gates.push(Gate::Cnot(c, t));
        }
    }
    let mut start = StabilizerMatrix::zero_state(n)?;
    start.canonicalize_quiet();
    let mut seen = HashSet::from([start.canonical_key()]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut out = vec![start];
    while let Some(m) = queue.pop_front() {
        for g in &gates {
            let mut next = m.clone();
            next.apply_gate_unchecked(g);
            next.canonicalize_quiet();
            if seen.insert(next.canonical_key()) {
                queue.push_back(next.clone());
                out.push(next);
            }
        }
    }
    Ok(out)
}

/// Angle label against `|0…0⟩` in the style of the two-qubit table.
pub fn angle_label(r: &InnerProductResult) -> String {
    match r.s_exponent {
        None => "⊥".to_string(),
        Some(0) => "0".to_string(),
        Some(1) => "π/4".to_string(),
        Some(2) => "π/3".to_string(),
        Some(_) => format!("{:.8}", r.angle()),
    }
}

fn shorthand_entry(a: Complex64) -> String {
    const EPS: f64 = 1e-9;
    if a.norm() < EPS {
        "0".into()
    } else if (a.re - 1.0).abs() < EPS {
        "1".into()
    } else if (a.re + 1.0).abs() < EPS {
        "-1".into()
    } else if (a.im - 1.0).abs() < EPS {
        "i".into()
    } else if (a.im + 1.0).abs() < EPS {
        "-i".into()
    } else {
        format!("{:.8}{:+.8}i", a.re, a.im)
    }
}

/// Amplitudes scaled so the first nonzero entry is `1`, e.g. `1,0,0,-i`.
pub fn shorthand_amplitudes(m: &StabilizerMatrix) -> Result<String> {
    let d = matrix_to_state(m)?;
    let amps = d.amplitudes();
    let lead = amps.iter().find(|a| a.norm() > 1e-12).map_or(1.0, |a| a.norm());
    Ok(amps
        .iter()
        .map(|a| shorthand_entry(a / lead))
        .collect::<Vec<_>>()
        .join(","))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateReport {
    pub amplitudes: String,
    pub generators: String,
    pub angle: String,
    pub product: InnerProductResult,
}

pub fn report(states: &[StabilizerMatrix]) -> Result<Vec<StateReport>> {
    let Some(first) = states.first() else {
        return Ok(Vec::new());
    };
    let zero = StabilizerMatrix::zero_state(first.n())?;
    states
        .iter()
        .map(|m| {
            let product = inner_product(&zero, m)?;
            Ok(StateReport {
                amplitudes: shorthand_amplitudes(m)?,
                generators: m.generators_string(),
                angle: angle_label(&product),
                product,
            })
        })
        .collect()
}

/// One state per line: `amplitudes | generators | angle`.
pub fn render_report(rows: &[StateReport]) -> String {
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(out, "{} | {} | {}", r.amplitudes, r.generators, r.angle);
    }
    out
}

pub fn render_report_csv(rows: &[StateReport]) -> String {
    let mut out = String::from("amplitudes,generators,angle\n");
    for r in rows {
        let _ = writeln!(out, "\"{}\",\"{}\",{}", r.amplitudes, r.generators, r.angle);
    }
    out
}
