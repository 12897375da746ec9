//! Stabilizer-state toolkit: canonical forms, basis-normalization circuit
//! synthesis, inner products, nearest-neighbor geometry and stabilizer
//! frames, checked against a dense state-vector oracle.

pub mod amplitude;
pub mod bench;
pub mod circuit;
pub mod error;
pub mod frames;
pub mod geometry;
pub mod metric;
pub mod oracle;
pub mod pauli;
pub mod synth;
pub mod tableau;

pub use circuit::{parse_qc, Circuit, Gate, GateKind};
pub use error::{Error, Result};
pub use frames::{PhaseVector, StabilizerFrame};
pub use metric::{inner_product, InnerProductResult};
pub use oracle::DenseState;
pub use pauli::{PauliLiteral, PauliString};
pub use synth::{basis_norm_circuit, reverse, BasisNormalization};
pub use tableau::{parse_stab, MeasurementOutcome, RowOp, StabilizerMatrix};
