#![allow(dead_code)]

use liepool::fermion::{symmetry_operator, SpinOrbitalLayout, SymmetryKind};
use liepool::{PauliSum, PauliTerm, StateVector};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn term(label: &str) -> PauliTerm {
    PauliTerm::from_label(label).unwrap()
}

/// `i P` for a label.
pub fn ip(label: &str) -> PauliSum {
    PauliSum::from_term(term(label).with_coeff(c(0.0, 1.0)))
}

pub fn random_pauli(rng: &mut TestRng, n: usize) -> PauliTerm {
    loop {
        let x = rng.random_range(0..1u64 << n);
        let z = rng.random_range(0..1u64 << n);
        if x != 0 || z != 0 {
            return PauliTerm::from_masks(n, x, z).unwrap();
        }
    }
}

/// Hermitian sum of `terms` random products with coefficients in (-1, 1).
pub fn random_hamiltonian(rng: &mut TestRng, n: usize, terms: usize) -> PauliSum {
    let mut h = PauliSum::zero(n);
    for _ in 0..terms {
        let p = random_pauli(rng, n);
        let coeff = rng.random_range(-1.0..1.0);
        h = &h + &PauliSum::from_term(p.with_coeff(c(coeff, 0.0)));
    }
    h
}

/// Anti-Hermitian sum with random real weights.
pub fn random_antihermitian(rng: &mut TestRng, n: usize, terms: usize) -> PauliSum {
    random_hamiltonian(rng, n, terms).scale(c(0.0, 1.0))
}

pub fn random_state(rng: &mut TestRng, n: usize) -> StateVector {
    let amps = (0..1usize << n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(n, amps).unwrap()
}

pub fn dense_apply(m: &DMatrix<Complex64>, s: &StateVector) -> Vec<Complex64> {
    (m * DVector::from_column_slice(s.amplitudes()))
        .iter()
        .copied()
        .collect()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_entry_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn symmetries(n_qubits: usize) -> Vec<PauliSum> {
    let layout = SpinOrbitalLayout::for_qubits(n_qubits).unwrap();
    [SymmetryKind::Ne, SymmetryKind::Sz, SymmetryKind::S2]
        .into_iter()
        .map(|k| symmetry_operator(k, layout))
        .collect()
}
