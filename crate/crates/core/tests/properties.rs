mod common;

use common::*;
use liepool::fermion::{jordan_wigner, make_kappa, FermionOperator, Ladder};
use liepool::lie::close;
use liepool::pauli::pauli_mul;
use liepool::sim::{
    apply_exp_pauli, apply_exp_sum, build_ansatz, classes_are_disjoint, dis_classes, expectation,
    gradient, AnsatzFactor, StateVector,
};
use liepool::{PauliSum, PauliTerm, EPS_GRAD};
use proptest::prelude::*;

fn pauli(n: usize) -> impl Strategy<Value = PauliTerm> {
    (0..1u64 << n, 0..1u64 << n).prop_map(move |(x, z)| PauliTerm::from_masks(n, x, z).unwrap())
}

fn three_paulis() -> impl Strategy<Value = (PauliTerm, PauliTerm, PauliTerm)> {
    (1usize..=6).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))
}

fn fermion_string(rng: &mut TestRng, n: usize) -> FermionOperator {
    use rand::Rng;
    let len = rng.random_range(1..=3);
    let ops: Vec<Ladder> = (0..len)
        .map(|_| {
            let mode = rng.random_range(0..n);
            if rng.random_bool(0.5) {
                Ladder::create(mode)
            } else {
                Ladder::annihilate(mode)
            }
        })
        .collect();
    let coeff = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    FermionOperator::from_string(n, coeff, &ops).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pauli_products_form_a_group((a, b, c3) in three_paulis()) {
        let ab_c = pauli_mul(&pauli_mul(&a, &b).unwrap(), &c3).unwrap();
        let a_bc = pauli_mul(&a, &pauli_mul(&b, &c3).unwrap()).unwrap();
        prop_assert_eq!(ab_c.masks(), a_bc.masks());
        prop_assert!((ab_c.coeff() - a_bc.coeff()).norm() < 1e-15);
        let sq = pauli_mul(&a, &a).unwrap();
        prop_assert!(sq.is_identity());
        prop_assert!((sq.coeff() - c(1.0, 0.0)).norm() < 1e-15);
        let ba = pauli_mul(&b, &a).unwrap();
        let ab = pauli_mul(&a, &b).unwrap();
        let sign = if a.commutes(&b).unwrap() { 1.0 } else { -1.0 };
        prop_assert!((ab.coeff() - ba.coeff() * sign).norm() < 1e-15);
    }

    #[test]
    fn jacobi_identity(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let x = random_antihermitian(&mut r, n, 5);
        let y = random_antihermitian(&mut r, n, 5);
        let z = random_antihermitian(&mut r, n, 5);
        let cyc = |a: &PauliSum, b: &PauliSum, c3: &PauliSum| {
            a.commutator(&b.commutator(c3).unwrap()).unwrap()
        };
        let total = &(&cyc(&x, &y, &z) + &cyc(&y, &z, &x)) + &cyc(&z, &x, &y);
        prop_assert!(total.norm() < 1e-12);
    }

    #[test]
    fn jordan_wigner_is_a_homomorphism(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        let a = fermion_string(&mut r, n);
        let b = fermion_string(&mut r, n);
        let lhs = jordan_wigner(&a.mul(&b).unwrap());
        let rhs = jordan_wigner(&a).try_mul(&jordan_wigner(&b)).unwrap();
        prop_assert!((&lhs - &rhs).norm() < 1e-12);
        let sum = jordan_wigner(&a.add(&b).unwrap());
        prop_assert!((&sum - &(&jordan_wigner(&a) + &jordan_wigner(&b))).norm() < 1e-12);
        prop_assert!((&jordan_wigner(&a.adjoint()) - &jordan_wigner(&a).adjoint()).norm() < 1e-12);
    }

    #[test]
    fn closure_is_idempotent_and_order_free(seed in any::<u64>(), k in 1usize..=4) {
        let mut r = rng(seed);
        let gens: Vec<PauliSum> = (0..k).map(|_| random_antihermitian(&mut r, 3, 2)).collect();
        let alg = close(&gens, 63).unwrap();
        let again = close(alg.basis(), 63).unwrap();
        prop_assert!(alg.same_span(&again));
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert!(alg.same_span(&close(&rev, 63).unwrap()));
        for g in &gens {
            prop_assert!(alg.contains(g));
        }
        for a in alg.basis() {
            for b in alg.basis() {
                prop_assert!(alg.contains(&a.commutator(b).unwrap()));
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let h = random_hamiltonian(&mut r, n, 6);
        let p = random_pauli(&mut r, n);
        let s = random_state(&mut r, n);
        let e = |t: f64| expectation(&h, &apply_exp_pauli(t, &p, &s).unwrap()).unwrap();
        let step = 1e-4;
        let fd = (e(step) - e(-step)) / (2.0 * step);
        prop_assert!((gradient(&h, &p, &s).unwrap() - fd).abs() < 1e-6);
    }

    #[test]
    fn exponentials_preserve_the_norm(seed in any::<u64>(), n in 1usize..=6, terms in 1usize..=6) {
        let mut r = rng(seed);
        let a = random_antihermitian(&mut r, n, terms);
        let s = random_state(&mut r, n);
        let out = apply_exp_sum(&a, &s).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
        let back = apply_exp_sum(&a.scale_real(-1.0), &out).unwrap();
        prop_assert!(back.distance(&s).unwrap() < 1e-10);
    }

    #[test]
    fn excitations_conserve_symmetries(t in prop::array::uniform3(-3.0f64..3.0)) {
        let n = 4;
        let kappa = |o: &[usize], v: &[usize], amp: f64| {
            AnsatzFactor::new(jordan_wigner(&make_kappa(n, o, v).unwrap()), amp).unwrap()
        };
        let factors = [kappa(&[0, 1], &[2, 3], t[0]), kappa(&[1], &[3], t[1]), kappa(&[0], &[2], t[2])];
        let reference = StateVector::from_bitstring("1100").unwrap();
        let psi = build_ansatz(&factors, &reference).unwrap();
        let sym = symmetries(n);
        for (s, want) in sym.iter().take(2).zip([2.0, 0.0]) {
            prop_assert!((expectation(s, &psi).unwrap() - want).abs() < 1e-12);
            // eigenstate, not just the right mean
            let shifted = &PauliSum::identity(n, c(-want, 0.0)) + s;
            prop_assert!(shifted.apply(psi.amplitudes()).iter().all(|a| a.norm() < 1e-12));
        }
    }

    #[test]
    fn dis_classes_partition_the_gradients(seed in any::<u64>(), b in 0usize..16) {
        let mut r = rng(seed);
        let n = 4;
        let h = random_hamiltonian(&mut r, n, 8);
        let reference = StateVector::basis(n, b).unwrap();
        let classes = dis_classes(&h, &reference).unwrap();
        prop_assert!(classes_are_disjoint(&classes));
        let mut count = 0;
        for class in &classes {
            for m in &class.members {
                let g = gradient(&h, m, &reference).unwrap().abs();
                prop_assert!(g > EPS_GRAD);
                prop_assert!((g - class.magnitude).abs() <= EPS_GRAD);
                count += 1;
            }
        }
        let nonzero = (0..1u64 << n)
            .flat_map(|x| (0..1u64 << n).map(move |z| (x, z)))
            .filter(|&(x, z)| x != 0 || z != 0)
            .filter(|&(x, z)| {
                gradient(&h, &PauliTerm::from_masks(n, x, z).unwrap(), &reference).unwrap().abs() > EPS_GRAD
            })
            .count();
        prop_assert_eq!(count, nonzero);
    }
}
