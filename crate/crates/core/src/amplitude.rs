//! Computational-basis amplitudes read directly off a canonical matrix.
//!
//! The Z-only rows of the canonical form are linear constraints `u·x = s`
//! whose solutions are the support of the state. The X-block supplies, for
//! any two support points, a stabilizer element mapping one to the other,
//! which fixes their relative phase. Amplitudes follow the toolkit phase
//! convention: the smallest-index basis state in the support has a real,
//! positive amplitude `2^(-m/2)`, `m` being the X-block size.

use num_complex::Complex64;

use crate::metric::pow2_neg_half;
use crate::oracle::i_pow;
use crate::pauli::{words_for, PauliString, WORD_BITS};
use crate::tableau::StabilizerMatrix;

/// A bit string over `n` qubits, packed like a Pauli bit-plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisBits {
    n: usize,
    words: Vec<u64>,
}

impl BasisBits {
    pub fn zeros(n: usize) -> Self {
        BasisBits {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut b = BasisBits::zeros(bits.len());
        for (q, &v) in bits.iter().enumerate() {
            b.set(q, v);
        }
        b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, q: usize) -> bool {
        (self.words[q / WORD_BITS] >> (q % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, q: usize, v: bool) {
        let mask = 1u64 << (q % WORD_BITS);
        if v {
            self.words[q / WORD_BITS] |= mask;
        } else {
            self.words[q / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, q: usize) {
        self.words[q / WORD_BITS] ^= 1u64 << (q % WORD_BITS);
    }

    /// Big-endian index into a dense vector (qubit 0 most significant).
    pub fn index(&self) -> usize {
        (0..self.n).fold(0, |acc, q| (acc << 1) | usize::from(self.get(q)))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.n).map(|q| self.get(q)).collect()
    }

    fn parity_with(&self, mask: &[u64]) -> bool {
        self.words
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

/// Amplitude oracle for one stabilizer state.
#[derive(Debug, Clone)]
pub struct BasisSupport {
    n: usize,
    x_rows: Vec<PauliString>,
    /// `(z mask, sign)` for every Z-only row.
    constraints: Vec<(Vec<u64>, bool)>,
    origin: BasisBits,
}

impl BasisSupport {
    /// Canonicalizes a copy of `m` and builds the oracle.
    pub fn from_matrix(m: &StabilizerMatrix) -> Self {
        let mut c = m.clone();
        c.canonicalize_quiet();
        BasisSupport::from_canonical(&c)
    }

    /// `m` must already be in canonical form (signs as stored).
    pub fn from_canonical(m: &StabilizerMatrix) -> Self {
        let n = m.n();
        let x_rows: Vec<PauliString> = m.rows().iter().filter(|r| r.has_x_or_y()).cloned().collect();
        let constraints: Vec<(Vec<u64>, bool)> = m
            .rows()
            .iter()
            .filter(|r| !r.has_x_or_y())
            .map(|r| (r.z_words().to_vec(), r.is_negative()))
            .collect();

        // Gauss-Jordan with pivots taken from the least significant end, so
        // that zeroing every free variable gives the smallest solution.
        let mut sys = constraints.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in (0..n).rev() {
            let (w, b) = (col / WORD_BITS, col % WORD_BITS);
            let Some(p) = (next..sys.len()).find(|&r| (sys[r].0[w] >> b) & 1 == 1) else {
                continue;
            };
            sys.swap(next, p);
            let (mask, sign) = sys[next].clone();
            for (r, row) in sys.iter_mut().enumerate() {
                if r != next && (row.0[w] >> b) & 1 == 1 {
                    for (a, c) in row.0.iter_mut().zip(&mask) {
                        *a ^= c;
                    }
                    row.1 ^= sign;
                }
            }
            pivots.push((col, next));
            next += 1;
        }
        let mut origin = BasisBits::zeros(n);
        for (col, r) in pivots {
            origin.set(col, sys[r].1);
        }

        BasisSupport {
            n,
            x_rows,
            constraints,
            origin,
        }
    }

    /// Smallest-index basis state with a nonzero amplitude.
    pub fn origin(&self) -> &BasisBits {
        &self.origin
    }

    /// Number of X-block rows; the support has `2^m` elements.
    pub fn support_rank(&self) -> usize {
        self.x_rows.len()
    }

    pub fn contains(&self, x: &BasisBits) -> bool {
        self.constraints.iter().all(|(mask, sign)| x.parity_with(mask) == *sign)
    }

    /// Amplitude `⟨x|ψ⟩` under the phase convention above.
    pub fn amplitude(&self, x: &BasisBits) -> Complex64 {
        debug_assert_eq!(x.n(), self.n);
        if !self.contains(x) {
            return Complex64::new(0.0, 0.0);
        }
        let mut residual = x.clone();
        for (a, b) in residual.words.iter_mut().zip(&self.origin.words) {
            *a ^= b;
        }
        let mut g = PauliString::identity(self.n);
        for row in &self.x_rows {
            let lead = (0..self.n).find(|&q| row.x_bit(q)).expect("X-block row");
            if residual.get(lead) {
                g.right_mul_assign(row);
                for (a, b) in residual.words.iter_mut().zip(row.x_words()) {
                    *a ^= b;
                }
            }
        }
        debug_assert!(residual.words.iter().all(|&w| w == 0));
        // g = i^(k + #Y) X(v) Z(u) and g|origin⟩ = phase · |x⟩.
        let mut phase = i_pow(u32::from(g.phase()) + g.y_count());
        if self.origin.parity_with(g.z_words()) {
            phase = -phase;
        }
        phase * pow2_neg_half(self.x_rows.len() as u32)
    }
}
