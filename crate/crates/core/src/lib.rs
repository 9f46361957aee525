//! Lie subalgebras of su(2^N) built from qubit and fermionic generator pools.
//!
//! The crate is organised bottom-up:
//!
//! - [`pauli`]: exact Pauli-product arithmetic in binary-symplectic form,
//!   plus the text format used for operator files.
//! - [`fermion`]: second-quantized operators, the Jordan-Wigner map,
//!   excitation generators and spin/number symmetry operators.
//! - [`lie`]: commutator closure, structure constants, centers,
//!   symmetry adaptation and anticommuting-set subalgebras.
//! - [`sim`]: statevector simulation of exponent-product ansaetze,
//!   gradients, direct interaction sets, optimisation and order scans.
//! - [`model`]: the two-electron, four-spin-orbital model system and the
//!   end-to-end pipeline that reduces and verifies its algebra.

pub mod error;
pub mod fermion;
pub mod lie;
pub(crate) mod linalg;
pub mod model;
pub mod pauli;
pub mod sim;

pub use error::{Error, Result};
pub use fermion::{FermionOperator, Ladder, SpinOrbitalLayout, SymmetryKind};
pub use lie::{Provenance, SoIndexMap, StructureConstants, Subalgebra};
pub use pauli::{PauliSum, PauliTerm};
pub use sim::{AnsatzFactor, Objective, SeedSchedule, StateVector};

/// Coefficients with magnitude below this are dropped on canonicalization.
pub const EPS_COEFF: f64 = 1e-12;

/// Residual-norm threshold for linear independence and closure checks.
pub const EPS_SPAN: f64 = 1e-9;

/// Gradient magnitudes at or below this count as zero; also the class width
/// used when grouping direct-interaction-set members.
pub const EPS_GRAD: f64 = 1e-8;
