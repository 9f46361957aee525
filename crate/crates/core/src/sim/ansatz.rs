use num_complex::Complex64;

use super::expm::Exponential;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::pauli::{PauliSum, PauliTerm};

/// One factor `exp(tau A)` of a product ansatz.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzFactor {
    generator: PauliSum,
    pub amplitude: f64,
}

impl AnsatzFactor {
    pub fn new(generator: PauliSum, amplitude: f64) -> Result<Self> {
        if !generator.is_antihermitian() {
            return Err(Error::NotAntiHermitian);
        }
        Ok(Self {
            generator,
            amplitude,
        })
    }

    /// `exp(i tau P)` for a Hermitian Pauli product.
    pub fn pauli(p: &PauliTerm, amplitude: f64) -> Result<Self> {
        if !p.has_unit_coeff() {
            return Err(Error::NonUnitCoefficient(p.coeff()));
        }
        Self::new(
            PauliSum::from_term(p.with_coeff(Complex64::new(0.0, 1.0))),
            amplitude,
        )
    }

    pub fn generator(&self) -> &PauliSum {
        &self.generator
    }

    pub fn n_qubits(&self) -> usize {
        self.generator.n_qubits()
    }

    pub fn with_amplitude(&self, amplitude: f64) -> Self {
        Self {
            generator: self.generator.clone(),
            amplitude,
        }
    }

    pub fn is_multi_term(&self) -> bool {
        self.generator.len() > 1
    }
}

/// Factors compiled once for repeated evaluation at varying amplitudes.
#[derive(Clone, Debug)]
pub(crate) struct CompiledAnsatz {
    n_qubits: usize,
    exps: Vec<Exponential>,
}

impl CompiledAnsatz {
    pub(crate) fn new(factors: &[AnsatzFactor], n_qubits: usize) -> Result<Self> {
        for f in factors {
            if f.n_qubits() != n_qubits {
                return Err(Error::QubitMismatch {
                    left: f.n_qubits(),
                    right: n_qubits,
                });
            }
        }
        Ok(Self {
            n_qubits,
            exps: factors
                .iter()
                .map(|f| Exponential::new(&f.generator))
                .collect(),
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.exps.len()
    }

    /// Rightmost factor acts first.
    pub(crate) fn apply(&self, amplitudes: &[f64], reference: &StateVector) -> StateVector {
        debug_assert_eq!(amplitudes.len(), self.exps.len());
        let mut v = reference.amplitudes().to_vec();
        for (e, &t) in self.exps.iter().zip(amplitudes).rev() {
            v = e.apply(t, &v);
        }
        StateVector::from_raw(self.n_qubits, v)
    }
}

/// `prod_k exp(tau_k A_k) |ref>`, the last factor applied first.
pub fn build_ansatz(factors: &[AnsatzFactor], reference: &StateVector) -> Result<StateVector> {
    let compiled = CompiledAnsatz::new(factors, reference.n_qubits())?;
    let taus: Vec<f64> = factors.iter().map(|f| f.amplitude).collect();
    Ok(compiled.apply(&taus, reference))
}
