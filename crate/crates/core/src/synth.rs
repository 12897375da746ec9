//! Basis-normalization circuit synthesis.
//!
//! [`basis_norm_circuit`] reduces a stabilizer matrix to basis form and
//! returns a circuit `C` with `C|ψ⟩ = |b⟩`. The emitted gates always follow
//! the five-block template H, CNOT, CZ, P, H.

use rand::Rng;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{check_dims, Error, Result};
use crate::frames::StabilizerFrame;
use crate::oracle::DenseState;
use crate::pauli::PauliLiteral;
use crate::tableau::StabilizerMatrix;

/// Block order of a basis-normalization circuit.
pub const CANONICAL_TEMPLATE: [GateKind; 5] =
    [GateKind::H, GateKind::Cnot, GateKind::Cz, GateKind::P, GateKind::H];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisNormalization {
    pub circuit: Circuit,
    /// `bits[j]` is set when row `j` of the reduced matrix is `-Z_j`.
    pub bits: Vec<bool>,
    /// Columns of the first Hadamard sweep that had neither an X/Y nor a Z
    /// row to pivot on.
    pub skipped_columns: usize,
}

/// Row operations that restore the layout the later sweeps rely on: the row
/// with an X/Y pivot in column `c` sits at index `c` with no X/Y to its left,
/// and every Z-only row sits at a column with no X pivot, carrying a Z there
/// and nothing to its right.
///
/// The first Hadamard sweep can break this when it swaps a row out of echelon
/// order and a later Hadamard turns Z literals below the diagonal into X.
/// When the layout already holds, only Z-only rows change.
fn settle_rows(m: &mut StabilizerMatrix) {
    let n = m.n();
    let mut slot: Vec<Option<usize>> = vec![None; n];
    let mut free_rows: Vec<usize> = (0..n).collect();

    for c in 0..n {
        let candidates: Vec<usize> = free_rows.iter().copied().filter(|&r| m.row(r).x_bit(c)).collect();
        let Some(&first) = candidates.first() else {
            continue;
        };
        let p = if candidates.contains(&c) { c } else { first };
        for &r in candidates.iter().filter(|&&r| r != p) {
            m.row_mult(r, p).expect("distinct rows");
        }
        free_rows.retain(|&r| r != p);
        slot[c] = Some(p);
    }

    let open: Vec<usize> = (0..n).filter(|&c| slot[c].is_none()).collect();
    let z_rows = free_rows;
    let mut unplaced = z_rows.clone();
    for &q in &open {
        let candidates: Vec<usize> = unplaced.iter().copied().filter(|&r| m.row(r).z_bit(q)).collect();
        let p = if candidates.contains(&q) { q } else { candidates[0] };
        for &r in &z_rows {
            if r != p && m.row(r).z_bit(q) {
                m.row_mult(r, p).expect("distinct rows");
            }
        }
        unplaced.retain(|&r| r != p);
        slot[q] = Some(p);
    }

    // Apply the permutation with swaps, tracking where each row went.
    let mut at: Vec<usize> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    for c in 0..n {
        let r = slot[c].expect("every column placed");
        let from = pos[r];
        if from != c {
            m.row_swap(c, from).expect("row in range");
            let displaced = at[c];
            at.swap(c, from);
            pos[displaced] = from;
            pos[r] = c;
        }
    }
}

/// Reduces `m` in place to basis form and returns the normalizing circuit.
pub fn basis_norm_circuit(m: &mut StabilizerMatrix) -> BasisNormalization {
    let out = synthesize(m, true);
    debug_assert!(m.is_basis_form(), "basis normalization left\n{m}");
    out
}

fn synthesize(m: &mut StabilizerMatrix, settle: bool) -> BasisNormalization {
    let n = m.n();
    let mut circuit = Circuit::new(n);
    let mut skipped_columns = 0;
    m.canonicalize_quiet();

    let emit = |m: &mut StabilizerMatrix, c: &mut Circuit, g: Gate| {
        m.apply_gate_unchecked(&g);
        c.push_unchecked(g);
    };

    // Hadamard sweep: diagonalize, turning entangled Z pivots into X.
    for j in 0..n {
        let i = j;
        if let Some(k) = (i..n).find(|&k| m.row(k).x_bit(j)) {
            m.row_swap(i, k).expect("row in range");
        } else if let Some(k2) = (i..n).rev().find(|&k| m.row(k).literal(j) == PauliLiteral::Z) {
            m.row_swap(i, k2).expect("row in range");
            let row = m.row(i);
            if (j + 1..n).any(|q| row.literal(q) != PauliLiteral::I) {
                emit(m, &mut circuit, Gate::H(j));
            }
        } else {
            skipped_columns += 1;
        }
    }

    if settle {
        settle_rows(m);
    }

    // CNOT sweep clears X/Y above the diagonal.
    for j in 0..n {
        for k in j + 1..n {
            if m.row(j).x_bit(k) {
                emit(m, &mut circuit, Gate::Cnot(j, k));
            }
        }
    }

    // CZ sweep clears the remaining Z above the diagonal.
    for j in 0..n {
        for k in j + 1..n {
            if m.row(j).literal(k) == PauliLiteral::Z {
                emit(m, &mut circuit, Gate::Cz(j, k));
            }
        }
    }

    for j in 0..n {
        if m.row(j).literal(j) == PauliLiteral::Y {
            emit(m, &mut circuit, Gate::P(j));
        }
    }

    for j in 0..n {
        if m.row(j).literal(j) == PauliLiteral::X {
            emit(m, &mut circuit, Gate::H(j));
        }
    }

    // Row multiplications only: strip Z literals below the diagonal.
    for j in 0..n {
        for k in j + 1..n {
            if m.row(k).literal(j) == PauliLiteral::Z {
                m.row_mult(k, j).expect("distinct rows");
            }
        }
    }

    let bits = m.signs();
    BasisNormalization {
        circuit,
        bits,
        skipped_columns,
    }
}

/// Inverse circuit: gates reversed, each P replaced by three P gates.
pub fn reverse(c: &Circuit) -> Result<Circuit> {
    if !c.is_unitary() {
        return Err(Error::Unsupported("reversing a circuit with measurements".into()));
    }
    let mut out = Circuit::new(c.n());
    for g in c.gates().iter().rev() {
        let copies = if matches!(g, Gate::P(_)) { 3 } else { 1 };
        for _ in 0..copies {
            out.push_unchecked(*g);
        }
    }
    Ok(out)
}

/// Sizes of the five template blocks, or `None` if the gate order does not
/// fit H, CNOT, CZ, P, H.
pub fn template_blocks(c: &Circuit) -> Option<[usize; 5]> {
    let mut sizes = [0usize; 5];
    let mut block = 0;
    for g in c.gates() {
        while block < 5 && CANONICAL_TEMPLATE[block] != g.kind() {
            block += 1;
        }
        if block == 5 {
            return None;
        }
        sizes[block] += 1;
    }
    Some(sizes)
}

pub fn conforms_to_template(c: &Circuit) -> bool {
    template_blocks(c).is_some()
}

/// Outcome of one measurement gate during [`apply_circuit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub qubit: usize,
    pub bit: u8,
    /// Known for stabilizer targets; `None` for dense targets.
    pub deterministic: Option<bool>,
}

/// Anything a circuit can be run on.
pub trait GateTarget {
    fn num_qubits(&self) -> usize;

    fn apply_one<R: Rng + ?Sized>(&mut self, gate: &Gate, rng: &mut R) -> Result<Option<MeasurementRecord>>;
}

impl GateTarget for StabilizerMatrix {
    fn num_qubits(&self) -> usize {
        self.n()
    }

    fn apply_one<R: Rng + ?Sized>(&mut self, gate: &Gate, rng: &mut R) -> Result<Option<MeasurementRecord>> {
        match *gate {
            Gate::Measure(q) => {
                let out = self.measure(q, rng)?;
                Ok(Some(MeasurementRecord {
                    qubit: q,
                    bit: out.bit,
                    deterministic: Some(out.deterministic),
                }))
            }
            _ => self.apply_gate(gate).map(|_| None),
        }
    }
}

impl GateTarget for DenseState {
    fn num_qubits(&self) -> usize {
        self.n()
    }

    fn apply_one<R: Rng + ?Sized>(&mut self, gate: &Gate, rng: &mut R) -> Result<Option<MeasurementRecord>> {
        let bit = self.apply(gate, rng)?;
        let qubit = gate.qubits()[0];
        Ok(bit.map(|bit| MeasurementRecord {
            qubit,
            bit,
            deterministic: None,
        }))
    }
}

impl GateTarget for StabilizerFrame {
    fn num_qubits(&self) -> usize {
        self.n()
    }

    fn apply_one<R: Rng + ?Sized>(&mut self, gate: &Gate, _rng: &mut R) -> Result<Option<MeasurementRecord>> {
        self.apply_gate(gate).map(|_| None)
    }
}

/// Runs `c` on `target` in order and returns the measurement record.
pub fn apply_circuit<T: GateTarget, R: Rng + ?Sized>(
    target: &mut T,
    c: &Circuit,
    rng: &mut R,
) -> Result<Vec<MeasurementRecord>> {
    check_dims(target.num_qubits(), c.n())?;
    let mut record = Vec::new();
    for g in c.gates() {
        if let Some(m) = target.apply_one(g, rng)? {
            record.push(m);
        }
    }
    Ok(record)
}
