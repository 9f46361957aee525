use super::ansatz::{AnsatzFactor, CompiledAnsatz};
use super::expm::apply_exp_sum;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// `[prod_s exp(t_s k_s / K) prod_d exp(t_d k_d / K)]^K |ref>`.
///
/// Within a step the doubles act first, then the singles, each list applied
/// right-to-left as in [`super::build_ansatz`]. `steps = 1` is the
/// disentangled product `singles ++ doubles`.
pub fn trotter_uccsd(
    singles: &[AnsatzFactor],
    doubles: &[AnsatzFactor],
    steps: usize,
    reference: &StateVector,
) -> Result<StateVector> {
    if steps == 0 {
        return Err(Error::Config(
            "Trotter step count must be at least 1".into(),
        ));
    }
    let factors: Vec<AnsatzFactor> = singles.iter().chain(doubles).cloned().collect();
    let compiled = CompiledAnsatz::new(&factors, reference.n_qubits())?;
    let taus: Vec<f64> = factors.iter().map(|f| f.amplitude / steps as f64).collect();
    let mut psi = reference.clone();
    for _ in 0..steps {
        psi = compiled.apply(&taus, &psi);
    }
    Ok(psi)
}

/// `exp(sum_k t_k k_k) |ref>`, the infinite-step limit.
pub fn exact_uccsd(
    singles: &[AnsatzFactor],
    doubles: &[AnsatzFactor],
    reference: &StateVector,
) -> Result<StateVector> {
    let n = reference.n_qubits();
    let mut total = PauliSum::zero(n);
    for f in singles.iter().chain(doubles) {
        if f.n_qubits() != n {
            return Err(Error::QubitMismatch {
                left: f.n_qubits(),
                right: n,
            });
        }
        total = &total + &f.generator().scale_real(f.amplitude);
    }
    apply_exp_sum(&total, reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::{jordan_wigner, make_kappa};
    use crate::sim::ansatz::build_ansatz;

    fn kappa(occ: &[usize], virt: &[usize], t: f64) -> AnsatzFactor {
        AnsatzFactor::new(jordan_wigner(&make_kappa(4, occ, virt).unwrap()), t).unwrap()
    }

    #[test]
    fn one_step_is_the_disentangled_product() {
        let r = StateVector::from_bitstring("1100").unwrap();
        let singles = [kappa(&[0], &[2], 0.3), kappa(&[1], &[3], -0.2)];
        let doubles = [kappa(&[0, 1], &[2, 3], 0.5)];
        let t1 = trotter_uccsd(&singles, &doubles, 1, &r).unwrap();
        let all: Vec<AnsatzFactor> = singles.iter().chain(&doubles).cloned().collect();
        assert!(t1.distance(&build_ansatz(&all, &r).unwrap()).unwrap() < 1e-14);
        assert!(trotter_uccsd(&singles, &doubles, 0, &r).is_err());
    }

    #[test]
    fn zero_amplitudes_leave_reference() {
        let r = StateVector::from_bitstring("1100").unwrap();
        let singles = [kappa(&[0], &[2], 0.0)];
        let doubles = [kappa(&[0, 1], &[2, 3], 0.0)];
        for k in [1, 3, 8] {
            assert!(
                trotter_uccsd(&singles, &doubles, k, &r)
                    .unwrap()
                    .distance(&r)
                    .unwrap()
                    < 1e-15
            );
        }
        assert!(
            exact_uccsd(&singles, &doubles, &r)
                .unwrap()
                .distance(&r)
                .unwrap()
                < 1e-15
        );
    }
}
