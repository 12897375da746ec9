//! Stabilizer matrices: row operations, gate conjugation, canonical-form
//! reduction and computational-basis measurement.
//!
//! A matrix holds `n` commuting, independent generators. Each row is a
//! [`PauliString`] whose phase is restricted to `+1` or `-1`. Rows are owned
//! values inside a `Vec`, so a row swap only exchanges two headers.
//!
//! The `.stab` text format is the qubit count on the first line followed by
//! one generator per line, each a sign (`+` or `-`) and `n` literals.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::circuit::Gate;
use crate::error::{check_dims, Error, Result};
use crate::pauli::{parse_pauli, product_phase, PauliLiteral, PauliString};

/// One elementary row operation recorded by [`StabilizerMatrix::canonicalize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOp {
    Swap(usize, usize),
    /// `row[target] ← row[source] · row[target]`. `flip` is set when the
    /// product of the two literal strings (signs ignored) carries a `-1`.
    Mult { target: usize, source: usize, flip: bool },
}

/// Result of a single-qubit Z measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementOutcome {
    pub bit: u8,
    pub deterministic: bool,
}

#[derive(Debug, Clone)]
pub struct StabilizerMatrix {
    n: usize,
    rows: Vec<PauliString>,
    literal_writes: u64,
}

impl PartialEq for StabilizerMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for StabilizerMatrix {}

/// `rows[target] ← rows[source] · rows[target]`; returns the literal-only
/// phase increment of the product.
#[inline]
fn mult_rows(rows: &mut [PauliString], target: usize, source: usize) -> u8 {
    debug_assert_ne!(target, source);
    let (src, dst) = if source < target {
        let (lo, hi) = rows.split_at_mut(target);
        (&lo[source], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(source);
        (&hi[0], &mut lo[target])
    };
    let inc = product_phase(src.x_words(), src.z_words(), dst.x_words(), dst.z_words());
    dst.left_mul_assign(src);
    inc
}

/// Rank over GF(2) of a set of equal-length bit vectors.
pub(crate) fn gf2_rank(mut vecs: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = vecs.first().map_or(0, Vec::len) * 64;
    for bit in 0..width {
        let (w, b) = (bit / 64, bit % 64);
        let Some(p) = (rank..vecs.len()).find(|&r| (vecs[r][w] >> b) & 1 == 1) else {
            continue;
        };
        vecs.swap(rank, p);
        let pivot = vecs[rank].clone();
        for (r, v) in vecs.iter_mut().enumerate() {
            if r != rank && (v[w] >> b) & 1 == 1 {
                for (a, c) in v.iter_mut().zip(&pivot) {
                    *a ^= c;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl StabilizerMatrix {
    /// The state `|0…0⟩`, generated by `Z_1, …, Z_n`.
    pub fn zero_state(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("a stabilizer matrix needs at least one qubit".into()));
        }
        let rows = (0..n).map(|q| PauliString::single(n, q, PauliLiteral::Z)).collect();
        Ok(StabilizerMatrix::from_rows_unchecked(rows))
    }

    /// The computational basis state `|b⟩`, one `±Z_j` row per qubit.
    pub fn basis_state(bits: &[bool]) -> Result<Self> {
        let mut m = StabilizerMatrix::zero_state(bits.len())?;
        for (row, &b) in m.rows.iter_mut().zip(bits) {
            if b {
                row.negate();
            }
        }
        Ok(m)
    }

    /// Validated construction: `n ≥ 1` rows of length `n`, real signs,
    /// pairwise commuting and independent.
    pub fn from_rows(rows: Vec<PauliString>) -> Result<Self> {
        let m = StabilizerMatrix::from_rows_unchecked(rows);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<PauliString>) -> Self {
        StabilizerMatrix {
            n: rows.len(),
            rows,
            literal_writes: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::InvalidMatrix("a stabilizer matrix needs at least one qubit".into()));
        }
        for (i, r) in self.rows.iter().enumerate() {
            if r.n() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} literals, expected {n}",
                    r.n()
                )));
            }
            if r.phase() % 2 != 0 {
                return Err(Error::InvalidMatrix(format!("row {i} has an imaginary phase")));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.rows[i].anticommutes_unchecked(&self.rows[j]) {
                    return Err(Error::InvalidMatrix(format!("rows {i} and {j} anticommute")));
                }
            }
        }
        let vecs = self
            .rows
            .iter()
            .map(|r| r.x_words().iter().chain(r.z_words()).copied().collect())
            .collect();
        let rank = gf2_rank(vecs);
        if rank != n {
            return Err(Error::InvalidMatrix(format!(
                "generators are dependent (rank {rank} of {n})"
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &PauliString {
        &self.rows[i]
    }

    /// Sign bits, `true` where the row carries `-1`.
    pub fn signs(&self) -> Vec<bool> {
        self.rows.iter().map(PauliString::is_negative).collect()
    }

    /// Literal positions written by gate conjugation since construction or the
    /// last [`reset_literal_writes`](Self::reset_literal_writes).
    pub fn literal_writes(&self) -> u64 {
        self.literal_writes
    }

    pub fn reset_literal_writes(&mut self) {
        self.literal_writes = 0;
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::RowOutOfRange { row: i, n: self.n })
        }
    }

    pub fn row_swap(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_row(i)?;
        self.check_row(j)?;
        self.rows.swap(i, j);
        Ok(())
    }

    /// Replaces row `i` by the product of rows `i` and `j`.
    pub fn row_mult(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_row(i)?;
        self.check_row(j)?;
        if i == j {
            return Err(Error::SelfMultiply(i));
        }
        mult_rows(&mut self.rows, i, j);
        Ok(())
    }

    /// Conjugates every row by a unitary gate.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        if !gate.is_unitary() {
            return Err(Error::Unsupported(
                "measurement through apply_gate; use measure".into(),
            ));
        }
        gate.check_range(self.n)?;
        self.apply_gate_unchecked(gate);
        Ok(())
    }

    #[inline]
    pub(crate) fn apply_gate_unchecked(&mut self, gate: &Gate) {
        let mut writes = 0;
        for row in &mut self.rows {
            writes += row.conjugate_unchecked(gate);
        }
        self.literal_writes += writes as u64;
    }

    /// Conjugates a Pauli string by every gate of a unitary gate list.
    pub fn apply_gates(&mut self, gates: &[Gate]) -> Result<()> {
        for g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Reduces the matrix to row-reduced echelon form: a minimal X-block of
    /// rows with X/Y literals on top, Z-only rows below, leading literals
    /// strictly moving right within each block. Returns the row operations
    /// applied, in order.
    pub fn canonicalize(&mut self) -> Vec<RowOp> {
        let mut log = Vec::new();
        self.reduce(Some(&mut log));
        log
    }

    /// [`canonicalize`](Self::canonicalize) without recording the log.
    pub fn canonicalize_quiet(&mut self) {
        self.reduce(None);
    }

    fn reduce(&mut self, mut log: Option<&mut Vec<RowOp>>) {
        let n = self.n;
        let mut i = 0;
        // X block: pivot on X or Y.
        for j in 0..n {
            if i == n {
                break;
            }
            let Some(k) = (i..n).find(|&k| self.rows[k].x_bit(j)) else {
                continue;
            };
            self.swap_logged(i, k, &mut log);
            for m in 0..n {
                if m != i && self.rows[m].x_bit(j) {
                    self.mult_logged(m, i, &mut log);
                }
            }
            i += 1;
        }
        // Z block: pivot on Z; eliminate Z and Y.
        for j in 0..n {
            if i == n {
                break;
            }
            let Some(k) = (i..n).find(|&k| self.rows[k].literal(j) == PauliLiteral::Z) else {
                continue;
            };
            self.swap_logged(i, k, &mut log);
            for m in 0..n {
                if m != i && self.rows[m].z_bit(j) {
                    self.mult_logged(m, i, &mut log);
                }
            }
            i += 1;
        }
    }

    #[inline]
    fn swap_logged(&mut self, a: usize, b: usize, log: &mut Option<&mut Vec<RowOp>>) {
        if a != b {
            self.rows.swap(a, b);
            if let Some(l) = log {
                l.push(RowOp::Swap(a, b));
            }
        }
    }

    #[inline]
    fn mult_logged(&mut self, target: usize, source: usize, log: &mut Option<&mut Vec<RowOp>>) {
        let inc = mult_rows(&mut self.rows, target, source);
        if let Some(l) = log {
            l.push(RowOp::Mult {
                target,
                source,
                flip: inc == 2,
            });
        }
    }

    /// Row `j` is `±Z_j` for every `j`.
    pub fn is_basis_form(&self) -> bool {
        self.rows.iter().enumerate().all(|(j, r)| {
            !r.has_x_or_y() && r.weight() == 1 && r.literal(j) == PauliLiteral::Z
        })
    }

    /// Number of rows containing an X or Y literal.
    pub fn x_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.has_x_or_y()).count()
    }

    /// Measures qubit `q` in the computational basis.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<MeasurementOutcome> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
        }
        if let Some(p) = (0..self.n).find(|&r| self.rows[r].x_bit(q)) {
            let bit: bool = rng.random();
            for r in 0..self.n {
                if r != p && self.rows[r].x_bit(q) {
                    mult_rows(&mut self.rows, r, p);
                }
            }
            let mut z = PauliString::single(self.n, q, PauliLiteral::Z);
            if bit {
                z.negate();
            }
            self.rows[p] = z;
            return Ok(MeasurementOutcome {
                bit: bit as u8,
                deterministic: false,
            });
        }
        self.canonicalize_quiet();
        let row = self
            .rows
            .iter()
            .find(|r| r.weight() == 1 && r.literal(q) == PauliLiteral::Z)
            .ok_or_else(|| {
                Error::InvalidMatrix(format!("no ±Z row for qubit {q} after canonicalization"))
            })?;
        Ok(MeasurementOutcome {
            bit: row.is_negative() as u8,
            deterministic: true,
        })
    }

    /// Canonical text used as a set key; identical for matrices encoding the
    /// same state.
    pub fn canonical_key(&self) -> String {
        let mut c = self.clone();
        c.canonicalize_quiet();
        c.to_stab_string()
    }

    pub fn to_stab_string(&self) -> String {
        self.to_string()
    }

    /// Rows without the count header, e.g. `+XX, +ZZ`.
    pub fn generators_string(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                let s = r.to_string();
                s.strip_prefix('+').map(str::to_owned).unwrap_or(s)
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for StabilizerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for r in &self.rows {
            f.write_str(if r.is_negative() { "-" } else { "+" })?;
            for lit in r.literals() {
                write!(f, "{lit}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parses `.stab` text. Syntax problems yield [`Error::Parse`]; a
/// well-formed file describing an invalid generator set yields
/// [`Error::InvalidMatrix`].
pub fn parse_stab(text: &str) -> Result<StabilizerMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input, expected the qubit count"))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::parse(1, 1, format!("expected the qubit count, found {:?}", first.trim())))?;
    if n == 0 {
        return Err(Error::parse(1, 1, "qubit count must be at least 1"));
    }
    let mut rows = Vec::with_capacity(n);
    for (idx, line) in lines {
        let line_no = idx + 1;
        if rows.len() == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::parse(line_no, 1, format!("expected exactly {n} generator rows")));
        }
        if !(line.starts_with('+') || line.starts_with('-')) {
            return Err(Error::parse(line_no, 1, "expected a sign character '+' or '-'"));
        }
        let row = parse_pauli(line.trim_end(), line_no)?;
        if row.n() != n {
            return Err(Error::parse(
                line_no,
                row.n().min(n) + 2,
                format!("expected {n} literals, found {}", row.n()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(
            rows.len() + 2,
            1,
            format!("expected {n} generator rows, found {}", rows.len()),
        ));
    }
    StabilizerMatrix::from_rows(rows)
}

impl FromStr for StabilizerMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_stab(s)
    }
}

/// Builds a matrix from generator strings such as `["XX", "-YY"]`.
pub fn matrix_from_strs(rows: &[&str]) -> Result<StabilizerMatrix> {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, s)| parse_pauli(s.trim(), i + 1))
        .collect::<Result<Vec<_>>>()?;
    if let Some(first) = rows.first() {
        for r in &rows {
            check_dims(first.n(), r.n())?;
        }
    }
    StabilizerMatrix::from_rows(rows)
}
