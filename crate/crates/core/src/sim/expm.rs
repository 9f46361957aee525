//! Exponentials of anti-Hermitian Pauli sums acting on statevectors.
//!
//! Every generator is compiled once into the cheapest exact route:
//! a product of Pauli rotations when all terms commute, a Hermitian
//! eigendecomposition for small registers, and a scaled Taylor series of the
//! action on the vector otherwise.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{Error, Result};
use crate::pauli::{PauliSum, PauliTerm};

/// Register size limit for exponentials of multi-term sums.
pub const MAX_EXP_QUBITS: usize = 14;

/// Largest register that gets a dense eigendecomposition.
const DENSE_QUBITS: usize = 8;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `cos(angle) v + i sin(angle) P v` for a unit-coefficient `P` given by masks.
fn rotate(amps: &[Complex64], angle: f64, x: u64, z: u64) -> Vec<Complex64> {
    let (s, c) = angle.sin_cos();
    let mut out: Vec<Complex64> = amps.iter().map(|a| a * c).collect();
    let base = (x & z).count_ones();
    for (b, &a) in amps.iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let k = base + 2 * (z & b as u64).count_ones();
        let phase = match k % 4 {
            0 => I,
            1 => Complex64::new(-1.0, 0.0),
            2 => -I,
            _ => Complex64::new(1.0, 0.0),
        };
        out[(b as u64 ^ x) as usize] += phase * s * a;
    }
    out
}

/// Compiled `tau -> exp(tau A)` for a fixed anti-Hermitian `A`.
#[derive(Clone, Debug)]
pub(crate) enum Exponential {
    Identity,
    /// Commuting terms `i theta_k P_k`, stored as `(x, z, theta_k)`.
    Rotations(Vec<(u64, u64, f64)>),
    /// `A = i V diag(lambda) V^dagger`.
    Dense {
        vecs: DMatrix<Complex64>,
        vals: DVector<f64>,
    },
    Series {
        a: PauliSum,
        bound: f64,
    },
}

impl Exponential {
    pub(crate) fn new(a: &PauliSum) -> Self {
        if a.is_empty() {
            return Exponential::Identity;
        }
        if a.terms_commute() {
            return Exponential::Rotations(
                a.terms()
                    .map(|t| (t.x_mask(), t.z_mask(), t.coeff().im))
                    .collect(),
            );
        }
        if a.n_qubits() <= DENSE_QUBITS {
            let h = a.scale(-I).to_dense();
            let h = (&h + &h.adjoint()) * Complex64::new(0.5, 0.0);
            let eig = h.symmetric_eigen();
            return Exponential::Dense {
                vecs: eig.eigenvectors,
                vals: eig.eigenvalues,
            };
        }
        Exponential::Series {
            a: a.clone(),
            bound: a.one_norm(),
        }
    }

    pub(crate) fn apply(&self, tau: f64, amps: &[Complex64]) -> Vec<Complex64> {
        match self {
            Exponential::Identity => amps.to_vec(),
            Exponential::Rotations(rots) => {
                let mut v = amps.to_vec();
                for &(x, z, theta) in rots {
                    v = rotate(&v, tau * theta, x, z);
                }
                v
            }
            Exponential::Dense { vecs, vals } => {
                let v = DVector::from_column_slice(amps);
                let mut w = vecs.adjoint() * v;
                for (wk, &l) in w.iter_mut().zip(vals.iter()) {
                    *wk *= Complex64::from_polar(1.0, tau * l);
                }
                (vecs * w).iter().copied().collect()
            }
            Exponential::Series { a, bound } => series(a, *bound, tau, amps),
        }
    }
}

/// Scaled Taylor series: `exp(tau A) v = (exp(tau A / s))^s v` with
/// `|tau| ||A||_1 / s <= 1`, each step summed until the terms vanish.
fn series(a: &PauliSum, bound: f64, tau: f64, amps: &[Complex64]) -> Vec<Complex64> {
    let steps = (tau.abs() * bound).ceil().max(1.0) as usize;
    let h = tau / steps as f64;
    let mut v = amps.to_vec();
    for _ in 0..steps {
        let mut term = v.clone();
        let mut sum = v.clone();
        for k in 1..=60 {
            term = a
                .apply(&term)
                .into_iter()
                .map(|t| t * (h / k as f64))
                .collect();
            let tn: f64 = term.iter().map(|t| t.norm_sqr()).sum();
            for (s, t) in sum.iter_mut().zip(&term) {
                *s += t;
            }
            if tn < 1e-34 {
                break;
            }
        }
        v = sum;
    }
    v
}

fn check_state(n: usize, state: &StateVector) -> Result<()> {
    if n != state.n_qubits() {
        return Err(Error::QubitMismatch {
            left: n,
            right: state.n_qubits(),
        });
    }
    Ok(())
}

/// `exp(i tau P) |state>` for a unit-coefficient Pauli term.
pub fn apply_exp_pauli(tau: f64, p: &PauliTerm, state: &StateVector) -> Result<StateVector> {
    if !p.has_unit_coeff() {
        return Err(Error::NonUnitCoefficient(p.coeff()));
    }
    check_state(p.n_qubits(), state)?;
    let amps = rotate(state.amplitudes(), tau, p.x_mask(), p.z_mask());
    Ok(StateVector::from_raw(state.n_qubits(), amps))
}

/// `exp(A) |state>` for an anti-Hermitian sum `A`.
pub fn apply_exp_sum(a: &PauliSum, state: &StateVector) -> Result<StateVector> {
    if a.n_qubits() > MAX_EXP_QUBITS {
        return Err(Error::TooMany {
            what: "qubits",
            got: a.n_qubits(),
            max: MAX_EXP_QUBITS,
        });
    }
    if !a.is_antihermitian() {
        return Err(Error::NotAntiHermitian);
    }
    check_state(a.n_qubits(), state)?;
    let amps = Exponential::new(a).apply(1.0, state.amplitudes());
    Ok(StateVector::from_raw(state.n_qubits(), amps))
}
