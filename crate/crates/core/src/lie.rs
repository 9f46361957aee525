//! Commutator closure and structure of real Lie subalgebras of su(2^N).
//!
//! A [`Subalgebra`] stores an orthonormal basis of anti-Hermitian Pauli sums
//! (orthonormal for the real coordinate inner product of [`crate::linalg`]).
//! Closure is breadth-first: every round commutes all pairs that involve an
//! element added in the previous round, then extends the basis sequentially
//! in pair order, so the resulting basis is deterministic.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, orthogonal_residual, span_tol, SpanSolver};
use crate::pauli::{PauliSum, PauliTerm};
use crate::EPS_SPAN;

/// Where a basis element came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The residual of input generator `k`.
    Generator(usize),
    /// The residual of `[basis_i, basis_j]`.
    Commutator(usize, usize),
    /// A linear combination produced by a null-space computation.
    Combination,
}

/// Real span of anti-Hermitian Pauli sums closed under commutation.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    n_qubits: usize,
    basis: Vec<PauliSum>,
    provenance: Vec<Provenance>,
}

/// Outcome of projecting a candidate onto a span.
#[derive(Clone, Debug)]
pub struct RankExtension {
    pub independent: bool,
    pub residual: PauliSum,
}

fn check_generators(generators: &[PauliSum]) -> Result<usize> {
    let n = generators
        .first()
        .map(|g| g.n_qubits())
        .ok_or_else(|| Error::InvalidIndices("no generators".into()))?;
    for g in generators {
        if g.n_qubits() != n {
            return Err(Error::QubitMismatch {
                left: n,
                right: g.n_qubits(),
            });
        }
        if !g.is_antihermitian() {
            return Err(Error::NotAntiHermitian);
        }
    }
    Ok(n)
}

/// Default closure cap, `4^N - 1`.
pub fn default_max_dim(n_qubits: usize) -> usize {
    if 2 * n_qubits >= usize::BITS as usize {
        usize::MAX
    } else {
        (1usize << (2 * n_qubits)) - 1
    }
}

impl Subalgebra {
    /// Span of `elements` without any closure; dependent elements are dropped.
    pub fn span_of(elements: &[PauliSum]) -> Result<Self> {
        let n = check_generators(elements)?;
        let (basis, kept) = linalg::orthonormalize(elements);
        Ok(Self {
            n_qubits: n,
            basis,
            provenance: kept.into_iter().map(Provenance::Generator).collect(),
        })
    }

    fn from_combinations(n_qubits: usize, elems: Vec<PauliSum>) -> Self {
        let (basis, _) = linalg::orthonormalize(&elems);
        let provenance = vec![Provenance::Combination; basis.len()];
        Self {
            n_qubits,
            basis,
            provenance,
        }
    }

    pub fn empty(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            basis: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[PauliSum] {
        &self.basis
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    /// Projects `candidate` off the span.
    pub fn rank_extend(&self, candidate: &PauliSum) -> RankExtension {
        let residual = orthogonal_residual(&self.basis, candidate);
        let independent = residual.norm() > span_tol(candidate.norm());
        RankExtension {
            independent,
            residual: if independent {
                residual
            } else {
                PauliSum::zero(candidate.n_qubits())
            },
        }
    }

    /// Norm of the part of `op` outside the span.
    pub fn residual_norm(&self, op: &PauliSum) -> f64 {
        orthogonal_residual(&self.basis, op).norm()
    }

    pub fn contains(&self, op: &PauliSum) -> bool {
        op.n_qubits() == self.n_qubits && !self.rank_extend(op).independent
    }

    /// True iff both spans coincide.
    pub fn same_span(&self, other: &Subalgebra) -> bool {
        self.dim() == other.dim()
            && other.basis.iter().all(|b| self.contains(b))
            && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn structure_constants(&self) -> Result<StructureConstants> {
        structure_constants_of(&self.basis)
    }

    pub fn center(&self) -> Subalgebra {
        let elems = linalg::commutant(&self.basis, &self.basis);
        Self::from_combinations(self.n_qubits, elems)
    }

    /// The maximal subalgebra commuting with every operator in `symmetries`.
    pub fn symmetry_adapt(&self, symmetries: &[PauliSum]) -> Result<Subalgebra> {
        for s in symmetries {
            if s.n_qubits() != self.n_qubits {
                return Err(Error::QubitMismatch {
                    left: self.n_qubits,
                    right: s.n_qubits(),
                });
            }
        }
        if symmetries.is_empty() {
            return Ok(self.clone());
        }
        let elems = linalg::commutant(&self.basis, symmetries);
        let adapted = Self::from_combinations(self.n_qubits, elems);
        // Closure follows from the Jacobi identity; check it numerically.
        adapted.structure_constants()?;
        Ok(adapted)
    }
}

/// Breadth-first commutator closure of `generators`.
///
/// Fails with [`Error::DimensionCap`] as soon as the basis would grow past
/// `max_dim`.
pub fn close(generators: &[PauliSum], max_dim: usize) -> Result<Subalgebra> {
    let n = check_generators(generators)?;
    let mut alg = Subalgebra::empty(n);
    let push = |alg: &mut Subalgebra, cand: &PauliSum, prov: Provenance| -> Result<bool> {
        let ext = alg.rank_extend(cand);
        if !ext.independent {
            return Ok(false);
        }
        if alg.dim() + 1 > max_dim {
            return Err(Error::DimensionCap { cap: max_dim });
        }
        let norm = ext.residual.norm();
        alg.basis.push(ext.residual.scale_real(1.0 / norm));
        alg.provenance.push(prov);
        Ok(true)
    };
    for (k, g) in generators.iter().enumerate() {
        push(&mut alg, g, Provenance::Generator(k))?;
    }
    let mut frontier = 0;
    loop {
        let size = alg.dim();
        let pairs: Vec<(usize, usize)> = (0..size)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|&(_, j)| j >= frontier)
            .collect();
        if pairs.is_empty() {
            break;
        }
        let comms: Vec<PauliSum> = pairs
            .par_iter()
            .map(|&(i, j)| {
                alg.basis[i]
                    .commutator(&alg.basis[j])
                    .expect("basis shares qubit count")
            })
            .collect();
        for (&(i, j), c) in pairs.iter().zip(&comms) {
            if !c.is_empty() {
                push(&mut alg, c, Provenance::Commutator(i, j))?;
            }
        }
        if alg.dim() == size {
            break;
        }
        frontier = size;
    }
    Ok(alg)
}

/// Projection of `candidate` onto the real span of an arbitrary (not
/// necessarily orthonormal) list.
pub fn rank_extend(basis: &[PauliSum], candidate: &PauliSum) -> RankExtension {
    let solver = SpanSolver::new(basis);
    let (coeffs, resid) = solver.solve(candidate);
    let independent = resid > span_tol(candidate.norm());
    let residual = if independent {
        let approx = linalg::combine(candidate.n_qubits(), &coeffs, basis);
        candidate - &approx
    } else {
        PauliSum::zero(candidate.n_qubits())
    };
    RankExtension {
        independent,
        residual,
    }
}

/// Real coefficients of `target` in the span of `elems`, if it lies there.
pub fn span_coefficients(elems: &[PauliSum], target: &PauliSum) -> Option<Vec<f64>> {
    let (coeffs, resid) = SpanSolver::new(elems).solve(target);
    (resid <= span_tol(target.norm())).then_some(coeffs)
}

/// Sparse tensor `c_ij^k` with `[b_i, b_j] = sum_k c_ij^k b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), f64>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entries.get(&(i, j, k)).copied().unwrap_or(0.0)
    }

    /// Nonzero entries `(i, j, k, value)` for both orderings of `(i, j)`.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        self.entries.iter().map(|(&(i, j, k), &v)| (i, j, k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// True iff `b_i` brackets to zero with every basis element.
    pub fn row_is_zero(&self, i: usize) -> bool {
        !self.entries.keys().any(|&(a, _, _)| a == i)
    }
}

/// Structure constants of the span of `elems`, which must be closed.
pub fn structure_constants_of(elems: &[PauliSum]) -> Result<StructureConstants> {
    let solver = SpanSolver::new(elems);
    let pairs: Vec<(usize, usize)> = (0..elems.len())
        .flat_map(|i| (i + 1..elems.len()).map(move |j| (i, j)))
        .collect();
    let solved: Vec<Result<Vec<f64>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let comm = elems[i].commutator(&elems[j])?;
            if comm.is_empty() {
                return Ok(vec![0.0; elems.len()]);
            }
            let (coeffs, resid) = solver.solve(&comm);
            if resid > span_tol(comm.norm()) {
                return Err(Error::NotClosed { residual: resid });
            }
            Ok(coeffs)
        })
        .collect();
    let mut entries = BTreeMap::new();
    for (&(i, j), coeffs) in pairs.iter().zip(solved) {
        for (k, v) in coeffs?.into_iter().enumerate() {
            if v.abs() > 1e-12 {
                entries.insert((i, j, k), v);
                entries.insert((j, i, k), -v);
            }
        }
    }
    Ok(StructureConstants {
        dim: elems.len(),
        entries,
    })
}

pub fn structure_constants(s: &Subalgebra) -> Result<StructureConstants> {
    s.structure_constants()
}

pub fn center(s: &Subalgebra) -> Subalgebra {
    s.center()
}

pub fn symmetry_adapt(s: &Subalgebra, symmetries: &[PauliSum]) -> Result<Subalgebra> {
    s.symmetry_adapt(symmetries)
}

/// Locates the so(K+1) generators `S_pq` (0 <= p < q <= K) in a basis:
/// `S_pq = scale * basis[index]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SoIndexMap {
    k: usize,
    entries: BTreeMap<(usize, usize), (usize, f64)>,
}

impl SoIndexMap {
    pub fn new(k: usize, entries: BTreeMap<(usize, usize), (usize, f64)>) -> Result<Self> {
        let expected = k * (k + 1) / 2;
        let valid = entries.len() == expected
            && (0..=k).all(|p| (p + 1..=k).all(|q| entries.contains_key(&(p, q))));
        if !valid {
            return Err(Error::InvalidIndices(format!(
                "so({}) map needs one entry per pair p < q",
                k + 1
            )));
        }
        Ok(Self { k, entries })
    }

    /// Number of anticommuting terms; the algebra is so(K+1).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, p: usize, q: usize) -> Option<(usize, f64)> {
        self.entries.get(&(p, q)).copied()
    }
}

/// Closed algebra spanned by pairwise-anticommuting unit Pauli terms and
/// their pairwise products: `{i P_k} U {P_j P_k : j < k}`.
///
/// With `S_0j = -i P_j / 2` and `S_jk = P_j P_k / 2` this is so(K+1). Sets
/// whose triple or quadruple products are proportional to the identity
/// (such as X, Y, Z on one qubit) yield dependent products and are
/// rejected.
pub fn anticommuting_subalgebra(paulis: &[PauliTerm]) -> Result<(Subalgebra, SoIndexMap)> {
    let first = paulis
        .first()
        .ok_or_else(|| Error::InvalidIndices("no Pauli terms".into()))?;
    let n = first.n_qubits();
    for p in paulis {
        if p.n_qubits() != n {
            return Err(Error::QubitMismatch {
                left: n,
                right: p.n_qubits(),
            });
        }
        if !p.has_unit_coeff() || p.is_identity() {
            return Err(Error::NonUnitCoefficient(p.coeff()));
        }
    }
    for (a, pa) in paulis.iter().enumerate() {
        for (b, pb) in paulis.iter().enumerate().skip(a + 1) {
            if pa.commutes_unchecked(pb) {
                return Err(Error::TermsCommute(a, b));
            }
        }
    }
    let k = paulis.len();
    let i = Complex64::new(0.0, 1.0);
    let mut basis = Vec::with_capacity(k * (k + 1) / 2);
    let mut provenance = Vec::new();
    let mut entries = BTreeMap::new();
    for (j, p) in paulis.iter().enumerate() {
        entries.insert((0, j + 1), (basis.len(), -0.5));
        basis.push(PauliSum::from_term(p.with_coeff(i)));
        provenance.push(Provenance::Generator(j));
    }
    for a in 0..k {
        for b in a + 1..k {
            let prod = paulis[a].mul(&paulis[b])?;
            entries.insert((a + 1, b + 1), (basis.len(), 0.5));
            basis.push(PauliSum::from_term(prod));
            provenance.push(Provenance::Commutator(a, b));
        }
    }
    let mut keys: Vec<(u64, u64)> = basis
        .iter()
        .flat_map(|b| b.terms().map(|t| t.masks()))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    if keys.len() != basis.len() {
        return Err(Error::LinearlyDependent);
    }
    let alg = Subalgebra {
        n_qubits: n,
        basis,
        provenance,
    };
    Ok((alg, SoIndexMap::new(k, entries)?))
}

/// Checks `[S_ij, S_kl] = d_jk S_il + d_il S_jk - d_ik S_jl - d_jl S_ik`
/// over all index quadruples.
pub fn verify_so_relations(s: &Subalgebra, map: &SoIndexMap) -> bool {
    let k = map.k();
    let n = s.n_qubits();
    let zero = PauliSum::zero(n);
    let size = k + 1;
    let mut gens = vec![zero.clone(); size * size];
    for p in 0..size {
        for q in p + 1..size {
            let Some((idx, scale)) = map.get(p, q) else {
                return false;
            };
            let Some(b) = s.basis().get(idx) else {
                return false;
            };
            gens[p * size + q] = b.scale_real(scale);
            gens[q * size + p] = b.scale_real(-scale);
        }
    }
    let g = |p: usize, q: usize| &gens[p * size + q];
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let quads: Vec<(usize, usize, usize, usize)> = (0..size)
        .flat_map(|i| {
            (0..size).flat_map(move |j| {
                (0..size).flat_map(move |k| (0..size).map(move |l| (i, j, k, l)))
            })
        })
        .collect();
    quads.par_iter().all(|&(i, j, kk, l)| {
        let lhs = g(i, j).commutator(g(kk, l)).expect("same qubits");
        let rhs = &(&(&g(i, l).scale_real(delta(j, kk)) + &g(j, kk).scale_real(delta(i, l)))
            - &g(j, l).scale_real(delta(i, kk)))
            - &g(i, kk).scale_real(delta(j, l));
        (&lhs - &rhs).norm() <= EPS_SPAN
    })
}
