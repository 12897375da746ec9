//! Pauli literals and Pauli strings.
//!
//! A literal is stored in two bits, `x` and `z`, with `00 = I`, `01 = Z`,
//! `10 = X` and `11 = Y`. Under this encoding the literal part of a product
//! is the XOR of the operands, so a string is kept as two packed bit-planes
//! and multiplying strings costs two word-wise XORs plus a phase sweep.
//!
//! The phase of a string is `i^k` with `k` stored mod 4. Literals denote the
//! Pauli matrices themselves (so `Y` is the matrix `Y`, not `iXZ`).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::circuit::Gate;
use crate::error::{check_dims, Error, Result};

/// One of the four single-qubit Pauli matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliLiteral {
    I,
    X,
    Y,
    Z,
}

impl PauliLiteral {
    pub const ALL: [PauliLiteral; 4] = [PauliLiteral::I, PauliLiteral::X, PauliLiteral::Y, PauliLiteral::Z];

    /// Two-bit code `x << 1 | z`.
    pub const fn encode(self) -> u8 {
        match self {
            PauliLiteral::I => 0b00,
            PauliLiteral::Z => 0b01,
            PauliLiteral::X => 0b10,
            PauliLiteral::Y => 0b11,
        }
    }

    pub const fn decode(bits: u8) -> PauliLiteral {
        match bits & 0b11 {
            0b00 => PauliLiteral::I,
            0b01 => PauliLiteral::Z,
            0b10 => PauliLiteral::X,
            _ => PauliLiteral::Y,
        }
    }

    pub const fn from_bits(x: bool, z: bool) -> PauliLiteral {
        PauliLiteral::decode(((x as u8) << 1) | z as u8)
    }

    pub const fn x_bit(self) -> bool {
        self.encode() & 0b10 != 0
    }

    pub const fn z_bit(self) -> bool {
        self.encode() & 0b01 != 0
    }

    /// Product `self · other` as `(i^k, literal)`.
    pub fn mul(self, other: PauliLiteral) -> (u8, PauliLiteral) {
        let a = self.encode();
        let b = other.encode();
        (PHASE_TABLE[(a * 4 + b) as usize], PauliLiteral::decode(a ^ b))
    }

    pub fn to_char(self) -> char {
        match self {
            PauliLiteral::I => 'I',
            PauliLiteral::X => 'X',
            PauliLiteral::Y => 'Y',
            PauliLiteral::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<PauliLiteral> {
        match c {
            'I' => Some(PauliLiteral::I),
            'X' => Some(PauliLiteral::X),
            'Y' => Some(PauliLiteral::Y),
            'Z' => Some(PauliLiteral::Z),
            _ => None,
        }
    }
}

impl fmt::Display for PauliLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Phase increment (power of `i`) of the literal product `a · b`, indexed by
/// `encode(a) * 4 + encode(b)`. Rows and columns are ordered I, Z, X, Y.
const PHASE_TABLE: [u8; 16] = [
    0, 0, 0, 0, // I·_
    0, 0, 1, 3, // Z·I = Z, Z·Z = I, Z·X = iY, Z·Y = -iX
    0, 3, 0, 1, // X·Z = -iY, X·Y = iZ
    0, 1, 3, 0, // Y·Z = iX, Y·X = -iZ
];

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Phase increment of the packed product `(ax, az) · (bx, bz)` over whole words.
#[inline]
pub(crate) fn product_phase(ax: &[u64], az: &[u64], bx: &[u64], bz: &[u64]) -> u8 {
    let mut plus = 0u32;
    let mut minus = 0u32;
    for w in 0..ax.len() {
        let (x1, z1, x2, z2) = (ax[w], az[w], bx[w], bz[w]);
        let a_x = x1 & !z1;
        let a_y = x1 & z1;
        let a_z = !x1 & z1;
        let b_x = x2 & !z2;
        let b_y = x2 & z2;
        let b_z = !x2 & z2;
        plus += ((a_x & b_y) | (a_y & b_z) | (a_z & b_x)).count_ones();
        minus += ((a_x & b_z) | (a_y & b_x) | (a_z & b_y)).count_ones();
    }
    ((plus + 3 * minus) % 4) as u8
}

/// Conjugation table for CZ: `(control, target)` literal codes to
/// `(control', target', phase increment)`, derived once from `H(t)·CNOT·H(t)`.
fn cz_table() -> &'static [(u8, u8, u8); 16] {
    static TABLE: OnceLock<[(u8, u8, u8); 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [(0, 0, 0); 16];
        for (idx, entry) in table.iter_mut().enumerate() {
            let c = PauliLiteral::decode((idx >> 2) as u8);
            let t = PauliLiteral::decode(idx as u8);
            let mut p = PauliString::from_literals(&[c, t], 0);
            p.conj_h(1);
            p.conj_cnot(0, 1);
            p.conj_h(1);
            *entry = (p.literal(0).encode(), p.literal(1).encode(), p.phase);
        }
        table
    })
}

/// An element `i^k P_1 ⊗ ... ⊗ P_n` of the n-qubit Pauli group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString {
            n,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    pub fn from_literals(literals: &[PauliLiteral], phase: u8) -> Self {
        let mut p = PauliString::identity(literals.len());
        for (q, &lit) in literals.iter().enumerate() {
            p.set_literal(q, lit);
        }
        p.phase = phase % 4;
        p
    }

    /// Single-qubit operator `lit` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, lit: PauliLiteral) -> Self {
        let mut p = PauliString::identity(n);
        p.set_literal(q, lit);
        p
    }

    /// `X(v)` or `Z(u)`-style strings from bit masks given per qubit.
    pub fn from_bits(x: &[bool], z: &[bool], phase: u8) -> Self {
        assert_eq!(x.len(), z.len());
        let mut p = PauliString::identity(x.len());
        for q in 0..x.len() {
            p.set_literal(q, PauliLiteral::from_bits(x[q], z[q]));
        }
        p.phase = phase % 4;
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent `k` of the phase `i^k`, in `0..4`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn set_phase(&mut self, k: u8) {
        self.phase = k % 4;
    }

    /// True for a real negative sign (`k = 2`).
    pub fn is_negative(&self) -> bool {
        self.phase == 2
    }

    pub fn negate(&mut self) {
        self.phase = (self.phase + 2) % 4;
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.negate();
        p
    }

    #[inline]
    pub fn literal(&self, q: usize) -> PauliLiteral {
        let (w, b) = (q / WORD_BITS, q % WORD_BITS);
        PauliLiteral::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set_literal(&mut self, q: usize, lit: PauliLiteral) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (w, b) = (q / WORD_BITS, q % WORD_BITS);
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | (u64::from(lit.x_bit()) << b);
        self.z[w] = (self.z[w] & !mask) | (u64::from(lit.z_bit()) << b);
    }

    pub fn literals(&self) -> impl Iterator<Item = PauliLiteral> + '_ {
        (0..self.n).map(move |q| self.literal(q))
    }

    #[inline]
    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / WORD_BITS] >> (q % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / WORD_BITS] >> (q % WORD_BITS)) & 1 == 1
    }

    pub(crate) fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub(crate) fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// True if some literal is X or Y.
    pub fn has_x_or_y(&self) -> bool {
        self.x.iter().any(|&w| w != 0)
    }

    pub fn is_identity_literals(&self) -> bool {
        !self.has_x_or_y() && self.z.iter().all(|&w| w == 0)
    }

    /// Number of non-identity literals.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// True if the literal parts agree, ignoring phase.
    pub fn same_literals(&self, other: &PauliString) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Number of Y literals; `i^(phase + ny)` is the phase in `X(v)Z(u)` form.
    pub fn y_count(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(x, z)| (x & z).count_ones()).sum()
    }

    /// `self ← left · self`, without a dimension check.
    #[inline]
    pub(crate) fn left_mul_assign(&mut self, left: &PauliString) {
        let inc = product_phase(&left.x, &left.z, &self.x, &self.z);
        self.phase = (self.phase + left.phase + inc) % 4;
        for (a, b) in self.x.iter_mut().zip(&left.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&left.z) {
            *a ^= b;
        }
    }

    /// `self ← self · right`, without a dimension check.
    #[inline]
    pub(crate) fn right_mul_assign(&mut self, right: &PauliString) {
        let inc = product_phase(&self.x, &self.z, &right.x, &right.z);
        self.phase = (self.phase + right.phase + inc) % 4;
        for (a, b) in self.x.iter_mut().zip(&right.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&right.z) {
            *a ^= b;
        }
    }

    /// Symplectic inner product parity: true iff the strings anticommute.
    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &PauliString) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones();
        }
        parity & 1 == 1
    }

    pub(crate) fn conj_h(&mut self, q: usize) {
        let (w, b) = (q / WORD_BITS, q % WORD_BITS);
        let xb = (self.x[w] >> b) & 1;
        let zb = (self.z[w] >> b) & 1;
        if xb & zb == 1 {
            self.phase = (self.phase + 2) % 4;
        }
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | (zb << b);
        self.z[w] = (self.z[w] & !mask) | (xb << b);
    }

    pub(crate) fn conj_p(&mut self, q: usize) {
        let (w, b) = (q / WORD_BITS, q % WORD_BITS);
        let xb = (self.x[w] >> b) & 1;
        let zb = (self.z[w] >> b) & 1;
        if xb & zb == 1 {
            self.phase = (self.phase + 2) % 4;
        }
        self.z[w] ^= xb << b;
    }

    pub(crate) fn conj_cnot(&mut self, c: usize, t: usize) {
        let xc = self.x_bit(c);
        let zc = self.z_bit(c);
        let xt = self.x_bit(t);
        let zt = self.z_bit(t);
        if xc && zt && !(xt ^ zc) {
            self.phase = (self.phase + 2) % 4;
        }
        self.set_literal(t, PauliLiteral::from_bits(xt ^ xc, zt));
        self.set_literal(c, PauliLiteral::from_bits(xc, zc ^ zt));
    }

    pub(crate) fn conj_cz(&mut self, c: usize, t: usize) {
        let idx = (self.literal(c).encode() << 2) | self.literal(t).encode();
        let (lc, lt, inc) = cz_table()[idx as usize];
        self.set_literal(c, PauliLiteral::decode(lc));
        self.set_literal(t, PauliLiteral::decode(lt));
        self.phase = (self.phase + inc) % 4;
    }

    /// Conjugates in place, `self ← U self U†`. Returns the number of literal
    /// positions written.
    pub fn conjugate_by(&mut self, gate: &Gate) -> Result<usize> {
        gate.check_range(self.n)?;
        Ok(self.conjugate_unchecked(gate))
    }

    #[inline]
    pub(crate) fn conjugate_unchecked(&mut self, gate: &Gate) -> usize {
        match *gate {
            Gate::H(q) => {
                self.conj_h(q);
                1
            }
            Gate::P(q) => {
                self.conj_p(q);
                1
            }
            Gate::Cnot(c, t) => {
                self.conj_cnot(c, t);
                2
            }
            Gate::Cz(c, t) => {
                self.conj_cz(c, t);
                2
            }
            Gate::Measure(_) => 0,
        }
    }
}

/// Group product `a · b`.
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    check_dims(a.n, b.n)?;
    let mut out = a.clone();
    out.right_mul_assign(b);
    Ok(out)
}

/// True iff `a` and `b` commute.
pub fn commutes(a: &PauliString, b: &PauliString) -> Result<bool> {
    check_dims(a.n, b.n)?;
    Ok(!a.anticommutes_unchecked(b))
}

/// `U p U†` for a unitary stabilizer gate `U`.
pub fn conjugate_gate(p: &PauliString, gate: &Gate) -> Result<PauliString> {
    if matches!(gate, Gate::Measure(_)) {
        return Err(Error::Unsupported("conjugation by a measurement".into()));
    }
    let mut out = p.clone();
    out.conjugate_by(gate)?;
    Ok(out)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.phase {
            0 => "+",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(sign)?;
        for lit in self.literals() {
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

/// Parses an optional sign (`+`, `-`, `i`, `+i`, `-i`) followed by literals.
/// Column numbers in errors are 1-based.
pub(crate) fn parse_pauli(s: &str, line: usize) -> Result<PauliString> {
    let (phase, rest, offset) = if let Some(r) = s.strip_prefix("-i") {
        (3, r, 2)
    } else if let Some(r) = s.strip_prefix("+i") {
        (1, r, 2)
    } else if let Some(r) = s.strip_prefix('i') {
        (1, r, 1)
    } else if let Some(r) = s.strip_prefix('-') {
        (2, r, 1)
    } else if let Some(r) = s.strip_prefix('+') {
        (0, r, 1)
    } else {
        (0, s, 0)
    };
    if rest.is_empty() {
        return Err(Error::parse(line, offset + 1, "expected Pauli literals"));
    }
    let mut lits = Vec::with_capacity(rest.len());
    for (i, c) in rest.chars().enumerate() {
        match PauliLiteral::from_char(c) {
            Some(l) => lits.push(l),
            None => {
                return Err(Error::parse(
                    line,
                    offset + i + 1,
                    format!("unexpected character {c:?}, expected one of I, X, Y, Z"),
                ))
            }
        }
    }
    Ok(PauliString::from_literals(&lits, phase))
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pauli(s.trim(), 1)
    }
}
