use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{Error, Result};
use crate::pauli::{PauliSum, PauliTerm};

const IMAG_TOL: f64 = 1e-10;

fn check(n: usize, state: &StateVector) -> Result<()> {
    if n != state.n_qubits() {
        return Err(Error::QubitMismatch {
            left: n,
            right: state.n_qubits(),
        });
    }
    Ok(())
}

/// `<psi|H|psi>` for Hermitian `H`.
pub fn expectation(h: &PauliSum, state: &StateVector) -> Result<f64> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    check(h.n_qubits(), state)?;
    let hv = h.apply(state.amplitudes());
    let e: Complex64 = state
        .amplitudes()
        .iter()
        .zip(&hv)
        .map(|(a, b)| a.conj() * b)
        .sum();
    if e.im.abs() > IMAG_TOL * h.one_norm().max(1.0) {
        return Err(Error::NotHermitian);
    }
    Ok(e.re)
}

/// Energy gradient `i <ref|[H, P]|ref>` of `exp(i tau P)` at `tau = 0`.
///
/// Equal to `-2 Im <ref|H P|ref>`.
pub fn gradient(h: &PauliSum, p: &PauliTerm, reference: &StateVector) -> Result<f64> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if !p.has_unit_coeff() {
        return Err(Error::NonUnitCoefficient(p.coeff()));
    }
    check(h.n_qubits(), reference)?;
    check(p.n_qubits(), reference)?;
    let pv = PauliSum::from_term(*p).apply(reference.amplitudes());
    let hpv = h.apply(&pv);
    let z: Complex64 = reference
        .amplitudes()
        .iter()
        .zip(&hpv)
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(-2.0 * z.im)
}

/// Fast path of [`gradient`] for a basis-state reference `|b>`.
pub(crate) fn basis_gradient(h: &PauliSum, x: u64, z: u64, b: usize) -> f64 {
    // P|b> = phase |b ^ x>; only terms of H with the same x-mask map it back.
    let term = PauliTerm::from_masks(h.n_qubits(), x, z).expect("masks in range");
    let (bp, pc) = term.apply_basis(b);
    let mut z_acc = Complex64::new(0.0, 0.0);
    for t in h.terms().filter(|t| t.x_mask() == x) {
        let (row, c) = t.apply_basis(bp);
        debug_assert_eq!(row, b);
        z_acc += c * pc;
    }
    -2.0 * z_acc.im
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::expm::apply_exp_pauli;

    fn herm(terms: &[(f64, &str)]) -> PauliSum {
        PauliSum::from_labels(terms.iter().map(|&(c, l)| (Complex64::new(c, 0.0), l))).unwrap()
    }

    fn fd(h: &PauliSum, p: &PauliTerm, r: &StateVector) -> f64 {
        let step = 1e-5;
        let e = |t: f64| expectation(h, &apply_exp_pauli(t, p, r).unwrap()).unwrap();
        (e(step) - e(-step)) / (2.0 * step)
    }

    #[test]
    fn expectation_examples() {
        let zero = StateVector::basis(1, 0).unwrap();
        assert_eq!(expectation(&herm(&[(1.0, "Z")]), &zero).unwrap(), 1.0);
        assert_eq!(expectation(&herm(&[(1.0, "X")]), &zero).unwrap(), 0.0);
        assert_eq!(expectation(&herm(&[(-2.5, "I")]), &zero).unwrap(), -2.5);
        let anti = PauliSum::from_labels([(Complex64::new(0.0, 1.0), "X")]).unwrap();
        assert!(matches!(
            expectation(&anti, &zero),
            Err(Error::NotHermitian)
        ));
    }

    #[test]
    fn single_qubit_gradients() {
        let zero = StateVector::basis(1, 0).unwrap();
        let y = PauliTerm::from_label("Y").unwrap();
        // <Z> along exp(i t Y)|0> is cos 2t: flat at t = 0.
        let hz = herm(&[(1.0, "Z")]);
        assert!(gradient(&hz, &y, &zero).unwrap().abs() < 1e-15);
        assert!(fd(&hz, &y, &zero).abs() < 1e-9);
        // <X> is -sin 2t.
        let hx = herm(&[(1.0, "X")]);
        assert!((gradient(&hx, &y, &zero).unwrap() + 2.0).abs() < 1e-15);
        assert!((fd(&hx, &y, &zero) + 2.0).abs() < 1e-9);
        let z = PauliTerm::from_label("Z").unwrap();
        assert_eq!(gradient(&hz, &z, &zero).unwrap(), 0.0);
    }

    #[test]
    fn basis_fast_path_agrees() {
        let h = herm(&[
            (0.5, "XXZ"),
            (-0.25, "YYI"),
            (1.5, "ZIZ"),
            (0.75, "XYX"),
            (0.3, "YXZ"),
        ]);
        for b in 0..8 {
            let r = StateVector::basis(3, b).unwrap();
            for x in 0..8u64 {
                for z in 0..8u64 {
                    let p = PauliTerm::from_masks(3, x, z).unwrap();
                    let slow = gradient(&h, &p, &r).unwrap();
                    assert!((slow - basis_gradient(&h, x, z, b)).abs() < 1e-13);
                }
            }
        }
    }
}
