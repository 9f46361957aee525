//! Two electrons in four spin-orbitals: occupied `i, ibar`, virtual `a, abar`.
//!
//! Modes follow the interleaved layout, so `i = 0`, `ibar = 1`, `a = 2`,
//! `abar = 3`, and the reference `|i ibar>` is basis state `1100` (index 3).
//! [`run_model`] reduces the closure of the three fermionic generators to
//! its symmetry-adapted su(2) part and checks that every ordering of those
//! exponentials reaches the open-shell singlet.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::Result;
use crate::fermion::{
    jordan_wigner, make_kappa, symmetry_operator, FermionOperator, SpinOrbitalLayout, SymmetryKind,
};
use crate::lie::{self, structure_constants_of, Subalgebra};
use crate::pauli::PauliSum;
use crate::sim::{
    apply_exp_sum, optimize, orderscan, AnsatzFactor, Objective, OrderScan, SeedSchedule,
    StateVector,
};
use crate::EPS_SPAN;

pub const MODE_I: usize = 0;
pub const MODE_IBAR: usize = 1;
pub const MODE_A: usize = 2;
pub const MODE_ABAR: usize = 3;
pub const N_MODES: usize = 4;

/// Basis indices with exactly two of the four modes occupied.
pub const TWO_ELECTRON_STATES: [usize; 6] = [3, 5, 6, 9, 10, 12];

/// Fidelity tolerance for reachability.
pub const FIDELITY_TOL: f64 = 1e-8;

/// Largest fidelity an unreachable ordering may attain.
pub const UNREACHABLE_MARGIN: f64 = 1e-3;

/// Bound on `|C psi|` for center elements on the two-electron sector.
pub const SECTOR_TOL: f64 = 1e-10;

/// Fixture operators, fermionic and Jordan-Wigner mapped.
#[derive(Clone, Debug)]
pub struct ModelSystem {
    pub layout: SpinOrbitalLayout,
    /// `kappa_i^a`
    pub single_alpha: FermionOperator,
    /// `kappa_ibar^abar`
    pub single_beta: FermionOperator,
    /// `kappa_{i ibar}^{a abar}`
    pub double: FermionOperator,
    /// `kappa_{i abar}^{a ibar}`
    pub exchange: FermionOperator,
    /// `n_a - n_i`
    pub d_alpha: FermionOperator,
    /// `n_abar - n_ibar`
    pub d_beta: FermionOperator,
    pub reference: StateVector,
    pub target: StateVector,
}

fn n_op(p: usize) -> FermionOperator {
    FermionOperator::number(N_MODES, p).expect("mode in range")
}

fn mul(a: &FermionOperator, b: &FermionOperator) -> FermionOperator {
    a.mul(b).expect("same mode count")
}

fn add(a: &FermionOperator, b: &FermionOperator) -> FermionOperator {
    a.add(b).expect("same mode count")
}

fn sub(a: &FermionOperator, b: &FermionOperator) -> FermionOperator {
    a.sub(b).expect("same mode count")
}

impl Default for ModelSystem {
    fn default() -> Self {
        Self::new()
    }
}

impl ModelSystem {
    pub fn new() -> Self {
        let kappa =
            |occ: &[usize], virt: &[usize]| make_kappa(N_MODES, occ, virt).expect("valid fixture");
        let single_alpha = kappa(&[MODE_I], &[MODE_A]);
        let single_beta = kappa(&[MODE_IBAR], &[MODE_ABAR]);
        let double = kappa(&[MODE_I, MODE_IBAR], &[MODE_A, MODE_ABAR]);
        let exchange = kappa(&[MODE_I, MODE_ABAR], &[MODE_A, MODE_IBAR]);
        let d_alpha = sub(&n_op(MODE_A), &n_op(MODE_I));
        let d_beta = sub(&n_op(MODE_ABAR), &n_op(MODE_IBAR));
        let reference =
            StateVector::basis(N_MODES, (1 << MODE_I) | (1 << MODE_IBAR)).expect("4 qubits");
        let pair = jordan_wigner(&add(&single_alpha, &single_beta));
        let target = StateVector::normalized(N_MODES, pair.apply(reference.amplitudes()))
            .expect("singles act nontrivially on the reference");
        Self {
            layout: SpinOrbitalLayout::new(2).expect("two spatial orbitals"),
            single_alpha,
            single_beta,
            double,
            exchange,
            d_alpha,
            d_beta,
            reference,
            target,
        }
    }

    /// The three generators in the order double, beta single, alpha single.
    pub fn generators(&self) -> Vec<PauliSum> {
        [&self.double, &self.single_beta, &self.single_alpha]
            .into_iter()
            .map(jordan_wigner)
            .collect()
    }

    fn sq(&self, d: &FermionOperator) -> FermionOperator {
        mul(d, d)
    }

    fn one_minus_sq(&self, d: &FermionOperator) -> FermionOperator {
        sub(&FermionOperator::identity(N_MODES), &self.sq(d))
    }

    /// The eight elements spanning the closure.
    pub fn closure_elements(&self) -> Vec<PauliSum> {
        [
            self.double.clone(),
            self.single_beta.clone(),
            self.single_alpha.clone(),
            self.exchange.clone(),
            mul(&self.d_alpha, &self.single_beta),
            mul(&self.d_beta, &self.single_alpha),
            mul(&self.sq(&self.d_alpha), &self.single_beta),
            mul(&self.sq(&self.d_beta), &self.single_alpha),
        ]
        .iter()
        .map(jordan_wigner)
        .collect()
    }

    /// `[1 - (n_a - n_i)^2] kappa_ibar^abar` and its spin partner.
    pub fn center_elements(&self) -> Vec<PauliSum> {
        [
            mul(&self.one_minus_sq(&self.d_alpha), &self.single_beta),
            mul(&self.one_minus_sq(&self.d_beta), &self.single_alpha),
        ]
        .iter()
        .map(jordan_wigner)
        .collect()
    }

    /// First su(2) block.
    pub fn block_one(&self) -> Vec<PauliSum> {
        [
            mul(&self.d_beta, &self.single_alpha),
            add(&self.double, &self.exchange),
            mul(&self.sq(&self.d_alpha), &self.single_beta),
        ]
        .iter()
        .map(jordan_wigner)
        .collect()
    }

    /// Second su(2) block.
    pub fn block_two(&self) -> Vec<PauliSum> {
        [
            mul(&self.d_alpha, &self.single_beta),
            sub(&self.double, &self.exchange),
            mul(&self.sq(&self.d_beta), &self.single_alpha),
        ]
        .iter()
        .map(jordan_wigner)
        .collect()
    }

    /// `A_1 .. A_4`, index 0 holding `A_1`.
    pub fn adapted_elements(&self) -> Vec<PauliSum> {
        let a3 = add(
            &mul(&self.d_alpha, &self.single_beta),
            &mul(&self.d_beta, &self.single_alpha),
        );
        let a4 = add(
            &mul(&self.sq(&self.d_alpha), &self.single_beta),
            &mul(&self.sq(&self.d_beta), &self.single_alpha),
        );
        [
            add(&self.single_alpha, &self.single_beta),
            self.double.clone(),
            a3,
            a4,
        ]
        .iter()
        .map(jordan_wigner)
        .collect()
    }

    /// `A_C = A_1 - A_4`.
    pub fn adapted_center(&self) -> PauliSum {
        let c = self.center_elements();
        &c[0] + &c[1]
    }

    /// `{A_2, A_3 / 2, A_4 / 2}`.
    pub fn su2_elements(&self) -> Vec<PauliSum> {
        let a = self.adapted_elements();
        vec![a[1].clone(), a[2].scale_real(0.5), a[3].scale_real(0.5)]
    }

    /// `Ne`, `Sz`, `S^2`.
    pub fn symmetries(&self) -> Vec<PauliSum> {
        self.symmetry_set(&[SymmetryKind::Ne, SymmetryKind::Sz, SymmetryKind::S2])
    }

    /// `Ne` plus the full spin algebra, selecting singlet operators.
    pub fn singlet_symmetries(&self) -> Vec<PauliSum> {
        self.symmetry_set(&[
            SymmetryKind::Ne,
            SymmetryKind::Sz,
            SymmetryKind::S2,
            SymmetryKind::Splus,
            SymmetryKind::Sminus,
        ])
    }

    fn symmetry_set(&self, kinds: &[SymmetryKind]) -> Vec<PauliSum> {
        kinds
            .iter()
            .map(|&k| symmetry_operator(k, self.layout))
            .collect()
    }

    /// The fermionic factors `exp(t3 kappa_D) exp(t2 kappa_beta) exp(t1 kappa_alpha)`.
    pub fn fermionic_factors(&self) -> Vec<AnsatzFactor> {
        self.generators()
            .into_iter()
            .map(|g| AnsatzFactor::new(g, 0.0).expect("kappa is anti-Hermitian"))
            .collect()
    }

    /// Factors `exp(tau_j A_j)` for `j = 2, 3, 4`.
    pub fn adapted_factors(&self) -> Vec<AnsatzFactor> {
        self.adapted_elements()[1..]
            .iter()
            .map(|g| AnsatzFactor::new(g.clone(), 0.0).expect("anti-Hermitian"))
            .collect()
    }

    /// Factors from both su(2) blocks.
    pub fn block_factors(&self) -> Vec<AnsatzFactor> {
        self.block_one()
            .into_iter()
            .chain(self.block_two())
            .map(|g| AnsatzFactor::new(g, 0.0).expect("anti-Hermitian"))
            .collect()
    }

    pub fn two_electron_states(&self) -> Vec<StateVector> {
        TWO_ELECTRON_STATES
            .iter()
            .map(|&b| StateVector::basis(N_MODES, b).expect("4 qubits"))
            .collect()
    }

    /// Largest `|op psi|` over the two-electron basis states.
    pub fn sector_action(&self, op: &PauliSum) -> f64 {
        self.two_electron_states()
            .iter()
            .map(|s| {
                op.apply(s.amplitudes())
                    .iter()
                    .map(|a| a.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// Which pipeline to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelOptions {
    /// Adapt to `Ne`, `Sz`, `S^2`; without it the scan uses both su(2) blocks.
    pub symmetry: bool,
    /// Also scan the fermionic generators, whose 2-1-1 ordering is expected
    /// to miss the target.
    pub fermionic_211: bool,
    pub schedule: SeedSchedule,
}

impl Default for ModelOptions {
    fn default() -> Self {
        Self {
            symmetry: true,
            fermionic_211: false,
            schedule: SeedSchedule::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    pub name: &'static str,
    pub passed: bool,
    /// Set when the stage documents a known limitation rather than a check.
    pub expected_failure: Option<String>,
    pub values: BTreeMap<&'static str, f64>,
    pub message: String,
}

impl Stage {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: true,
            expected_failure: None,
            values: BTreeMap::new(),
            message: String::new(),
        }
    }

    fn value(&mut self, key: &'static str, v: f64) -> &mut Self {
        self.values.insert(key, v);
        self
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            if !self.message.is_empty() {
                self.message.push_str("; ");
            }
            self.message.push_str(&what.into());
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModelReport {
    pub options: ModelOptions,
    pub stages: Vec<Stage>,
    /// Named order scans, e.g. `adapted`.
    pub scans: Vec<(&'static str, OrderScan)>,
    pub closure: Subalgebra,
    pub center: Subalgebra,
    pub adapted: Option<Subalgebra>,
}

impl ModelReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.passed)
    }

    pub fn first_failure(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.passed)
    }
}

fn span_residual(alg: &Subalgebra, op: &PauliSum) -> f64 {
    alg.residual_norm(op)
}

/// Orthonormal complement of `inner` within `outer`.
fn linalg_extra(outer: &Subalgebra, inner: &Subalgebra) -> Vec<PauliSum> {
    let mut acc = inner.clone();
    let mut out = Vec::new();
    for b in outer.basis() {
        let ext = acc.rank_extend(b);
        if ext.independent {
            out.push(ext.residual.clone());
            acc = Subalgebra::span_of(&[acc.basis(), &[ext.residual]].concat())
                .expect("anti-Hermitian basis");
        }
    }
    out
}

/// Largest deviation of `c_ij^k` from `sign * epsilon_ijk`, minimised over
/// the overall sign; returns `(deviation, sign)`.
pub fn su2_deviation(elems: &[PauliSum]) -> Result<(f64, f64)> {
    let sc = structure_constants_of(elems)?;
    let eps = |i: usize, j: usize, k: usize| -> f64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    };
    let mut best = (f64::INFINITY, 0.0);
    for sign in [1.0, -1.0] {
        let mut dev: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    dev = dev.max((sc.get(i, j, k) - sign * eps(i, j, k)).abs());
                }
            }
        }
        if dev < best.0 {
            best = (dev, sign);
        }
    }
    Ok(best)
}

/// Phase-insensitive check that `exp(tau C)` fixes every two-electron state.
fn center_inert(sys: &ModelSystem, c: &PauliSum) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for tau in [0.3, -1.7, 2.9] {
        for s in sys.two_electron_states() {
            let out = apply_exp_sum(&c.scale_real(tau), &s)?;
            let overlap = s.inner(&out)?.norm();
            worst = worst.max(1.0 - overlap);
        }
    }
    Ok(worst)
}

pub fn run_model(options: ModelOptions) -> Result<ModelReport> {
    let sys = ModelSystem::new();
    let mut stages = Vec::new();
    let mut scans = Vec::new();

    let mut st = Stage::new("closure");
    let closure = lie::close(&sys.generators(), lie::default_max_dim(N_MODES))?;
    st.value("dimension", closure.dim() as f64);
    st.require(
        closure.dim() == 8,
        format!("dimension {} != 8", closure.dim()),
    );
    let worst = sys
        .closure_elements()
        .iter()
        .map(|e| span_residual(&closure, e))
        .fold(0.0, f64::max);
    st.value("max_element_residual", worst);
    st.require(
        worst <= EPS_SPAN,
        "listed elements are not all in the closure",
    );
    stages.push(st);

    let mut st = Stage::new("center");
    let center = closure.center();
    st.value("dimension", center.dim() as f64);
    st.require(
        center.dim() == 2,
        format!("dimension {} != 2", center.dim()),
    );
    let listed = Subalgebra::span_of(&sys.center_elements())?;
    st.require(
        listed.same_span(&center),
        "center differs from the listed elements",
    );
    let action = center
        .basis()
        .iter()
        .map(|c| sys.sector_action(c))
        .fold(0.0, f64::max);
    st.value("max_two_electron_action", action);
    st.require(
        action <= SECTOR_TOL,
        "center acts on the two-electron sector",
    );
    let inert = center
        .basis()
        .iter()
        .map(|c| center_inert(&sys, c))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    st.value("max_exponential_defect", inert);
    st.require(inert <= SECTOR_TOL, "exp(tau C) moves a two-electron state");
    stages.push(st);

    let mut adapted = None;
    if options.symmetry {
        let mut st = Stage::new("symmetry_adaptation");
        // Commuting with S^2 alone also admits C_1 - C_2, which acts only on
        // the doublet (one- and three-electron) sectors where S^2 is constant.
        // The singlet condition adds S+ and S-.
        let plain = closure.symmetry_adapt(&sys.symmetries())?;
        let alg = closure.symmetry_adapt(&sys.singlet_symmetries())?;
        st.value("dimension_ne_sz_s2", plain.dim() as f64);
        st.value("dimension", alg.dim() as f64);
        st.require(
            alg.dim() == 4,
            format!("singlet dimension {} != 4", alg.dim()),
        );
        let names = ["A1_residual", "A2_residual", "A3_residual", "A4_residual"];
        for (name, a) in names.into_iter().zip(sys.adapted_elements()) {
            let r = span_residual(&alg, &a);
            st.value(name, r);
            st.require(r <= EPS_SPAN, format!("{name} = {r:e}"));
        }
        let extra = linalg_extra(&plain, &alg);
        let extra_action = extra
            .iter()
            .map(|e| sys.sector_action(e))
            .fold(0.0, f64::max);
        st.value("extra_two_electron_action", extra_action);
        st.require(
            alg.basis().iter().all(|b| plain.contains(b)),
            "singlet algebra is not inside the S^2 commutant",
        );
        st.require(
            extra_action <= SECTOR_TOL,
            "S^2-only elements act on the two-electron sector",
        );
        stages.push(st);

        let mut st = Stage::new("adapted_center");
        let c = alg.center();
        st.value("dimension", c.dim() as f64);
        st.require(c.dim() == 1, format!("dimension {} != 1", c.dim()));
        let ac = sys.adapted_center();
        let r = span_residual(&c, &ac);
        st.value("A_C_residual", r);
        st.require(r <= EPS_SPAN, "A_C does not span the center");
        let action = sys.sector_action(&ac);
        st.value("A_C_two_electron_action", action);
        st.require(action <= SECTOR_TOL, "A_C acts on the two-electron sector");
        stages.push(st);

        let mut st = Stage::new("su2");
        let (dev, sign) = su2_deviation(&sys.su2_elements())?;
        st.value("max_deviation", dev);
        st.value("sign", sign);
        st.require(
            dev <= EPS_SPAN,
            format!("structure constants deviate by {dev:e}"),
        );
        stages.push(st);

        let mut st = Stage::new("order_scan");
        let scan = orderscan(
            &sys.adapted_factors(),
            &sys.reference,
            &Objective::MaxFidelity(sys.target.clone()),
            options.schedule,
        )?;
        fill_reach(&mut st, &scan);
        scans.push(("adapted", scan));
        stages.push(st);
        adapted = Some(alg);
    } else {
        let mut st = Stage::new("block_decomposition");
        let b1 = Subalgebra::span_of(&sys.block_one())?;
        let b2 = Subalgebra::span_of(&sys.block_two())?;
        let mut all = center.basis().to_vec();
        all.extend(b1.basis().iter().cloned());
        all.extend(b2.basis().iter().cloned());
        let joint = Subalgebra::span_of(&all)?;
        st.value("dimension", joint.dim() as f64);
        st.require(
            joint.same_span(&closure),
            "center + blocks do not span the closure",
        );
        let mixed = b1
            .basis()
            .iter()
            .flat_map(|x| {
                b2.basis()
                    .iter()
                    .map(move |y| x.commutator(y).map(|c| c.norm()))
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        st.value("max_cross_commutator", mixed);
        st.require(mixed <= EPS_SPAN, "blocks do not commute");
        for (name, block) in [("block_one_closure", &b1), ("block_two_closure", &b2)] {
            let ok = block.structure_constants().is_ok();
            st.value(name, if ok { 1.0 } else { 0.0 });
            st.require(ok, format!("{name} failed"));
        }
        stages.push(st);

        let mut st = Stage::new("order_scan");
        let scan = orderscan(
            &sys.block_factors(),
            &sys.reference,
            &Objective::MaxFidelity(sys.target.clone()),
            options.schedule,
        )?;
        fill_reach(&mut st, &scan);
        scans.push(("blocks", scan));
        stages.push(st);
    }

    if options.fermionic_211 {
        let mut st = Stage::new("fermionic_order");
        let scan = orderscan(
            &sys.fermionic_factors(),
            &sys.reference,
            &Objective::MaxFidelity(sys.target.clone()),
            options.schedule,
        )?;
        // Order [0, 1, 2] is the 2-1-1 product.
        let f211 = scan.permutations[0].result.value;
        let others = scan.permutations[1..]
            .iter()
            .map(|p| p.result.value)
            .fold(0.0, f64::max);
        st.value("fidelity_211", f211);
        st.value("best_other_fidelity", others);
        st.value("spread", scan.spread);
        st.require(
            f211 < 1.0 - UNREACHABLE_MARGIN,
            "2-1-1 ordering unexpectedly reaches the target",
        );
        st.require(
            others >= 1.0 - FIDELITY_TOL,
            "no other ordering reaches the target",
        );
        st.expected_failure =
            Some("expected failure (2-1-1 ordering cannot reach target)".to_string());
        scans.push(("fermionic", scan));
        stages.push(st);
    }

    Ok(ModelReport {
        options,
        stages,
        scans,
        closure,
        center,
        adapted,
    })
}

fn fill_reach(st: &mut Stage, scan: &OrderScan) {
    st.value("orderings", scan.permutations.len() as f64);
    st.value("min_fidelity", scan.worst());
    st.value("max_fidelity", scan.best());
    st.value("spread", scan.spread);
    st.require(
        scan.worst() >= 1.0 - FIDELITY_TOL,
        format!("worst ordering reaches only {:.12}", scan.worst()),
    );
}

/// Best fidelity of the single 2-1-1 ordering.
pub fn fidelity_211(schedule: SeedSchedule) -> Result<f64> {
    let sys = ModelSystem::new();
    Ok(optimize(
        &sys.fermionic_factors(),
        &sys.reference,
        &Objective::MaxFidelity(sys.target.clone()),
        schedule,
    )?
    .value)
}

/// `target` written out as `(amplitude, basis index)` pairs.
pub fn target_support(sys: &ModelSystem) -> Vec<(usize, Complex64)> {
    sys.target
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-12)
        .map(|(k, &a)| (k, a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::is_singlet_tensor;

    #[test]
    fn target_is_the_open_shell_singlet() {
        let sys = ModelSystem::new();
        let support = target_support(&sys);
        let idx: Vec<usize> = support.iter().map(|s| s.0).collect();
        assert_eq!(idx, vec![6, 9]);
        for (_, a) in &support {
            assert!((a.norm() - 0.5f64.sqrt()).abs() < 1e-15);
        }
        assert_eq!(sys.reference.basis_index(), Some(3));
    }

    #[test]
    fn adapted_elements_are_singlets() {
        let sys = ModelSystem::new();
        for a in sys.adapted_elements() {
            assert!(a.is_antihermitian());
            assert!(is_singlet_tensor(&a, sys.layout).unwrap());
        }
        for g in sys.generators() {
            for s in sys.symmetries().iter().take(2) {
                assert!(s.commutator(&g).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn adapted_center_is_a1_minus_a4() {
        let sys = ModelSystem::new();
        let a = sys.adapted_elements();
        let diff = &(&a[0] - &a[3]) - &sys.adapted_center();
        assert!(diff.norm() < 1e-12);
    }

    #[test]
    fn default_pipeline_passes() {
        let report = run_model(ModelOptions::default()).unwrap();
        for s in &report.stages {
            assert!(s.passed, "{}: {}", s.name, s.message);
        }
    }
}
