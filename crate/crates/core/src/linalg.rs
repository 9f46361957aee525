//! Real-linear algebra over Pauli coordinates.
//!
//! An operator is viewed as a real vector of (re, im) pairs of its Pauli
//! coefficients. The inner product is `Re sum conj(a_P) b_P`, which on
//! anti-Hermitian sums reduces to the dot product of imaginary parts.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

use crate::pauli::PauliSum;
use crate::EPS_SPAN;

pub(crate) fn inner(a: &PauliSum, b: &PauliSum) -> f64 {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .raw_terms()
        .iter()
        .map(|(&(x, z), ca)| {
            let cb = large.coeff(x, z);
            ca.re * cb.re + ca.im * cb.im
        })
        .sum()
}

/// `a + s * b` with real `s`.
pub(crate) fn axpy(a: &PauliSum, s: f64, b: &PauliSum) -> PauliSum {
    a + &b.scale_real(s)
}

/// Real combination `sum_l c_l e_l`.
pub(crate) fn combine(n_qubits: usize, coeffs: &[f64], elems: &[PauliSum]) -> PauliSum {
    coeffs
        .iter()
        .zip(elems)
        .fold(PauliSum::zero(n_qubits), |acc, (&c, e)| axpy(&acc, c, e))
}

/// Threshold for accepting a residual as zero relative to the candidate.
pub(crate) fn span_tol(norm: f64) -> f64 {
    EPS_SPAN * norm.max(1.0)
}

/// Projects `cand` off an orthonormal list (two passes of classical
/// Gram-Schmidt) and returns the residual.
pub(crate) fn orthogonal_residual(basis: &[PauliSum], cand: &PauliSum) -> PauliSum {
    let mut r = cand.clone();
    for _ in 0..2 {
        for b in basis {
            let p = inner(b, &r);
            if p != 0.0 {
                r = axpy(&r, -p, b);
            }
        }
    }
    r
}

/// Orthonormalizes `elems` in order, dropping elements that lie in the
/// span of earlier ones. Returns the kept indices alongside.
pub(crate) fn orthonormalize(elems: &[PauliSum]) -> (Vec<PauliSum>, Vec<usize>) {
    let mut out: Vec<PauliSum> = Vec::new();
    let mut kept = Vec::new();
    for (idx, e) in elems.iter().enumerate() {
        let r = orthogonal_residual(&out, e);
        let n = r.norm();
        if n > span_tol(e.norm()) {
            out.push(r.scale_real(1.0 / n));
            kept.push(idx);
        }
    }
    (out, kept)
}

/// Dense real coordinates of a family of operators over the union of
/// their Pauli keys.
pub(crate) struct Coordinates {
    index: HashMap<(u64, u64), usize>,
}

impl Coordinates {
    pub(crate) fn new<'a, I>(ops: I) -> Self
    where
        I: IntoIterator<Item = &'a PauliSum>,
    {
        let mut index = HashMap::new();
        for op in ops {
            for &key in op.raw_terms().keys() {
                let next = index.len();
                index.entry(key).or_insert(next);
            }
        }
        Self { index }
    }

    pub(crate) fn rows(&self) -> usize {
        2 * self.index.len()
    }

    /// Coordinates of `op`, plus the squared norm of its part outside the key set.
    pub(crate) fn vector(&self, op: &PauliSum) -> (DVector<f64>, f64) {
        let mut v = DVector::zeros(self.rows());
        let mut outside = 0.0;
        for (key, c) in op.raw_terms() {
            match self.index.get(key) {
                Some(&k) => {
                    v[2 * k] = c.re;
                    v[2 * k + 1] = c.im;
                }
                None => outside += c.norm_sqr(),
            }
        }
        (v, outside)
    }

    pub(crate) fn matrix(&self, ops: &[PauliSum]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows(), ops.len());
        for (col, op) in ops.iter().enumerate() {
            let (v, _) = self.vector(op);
            m.set_column(col, &v);
        }
        m
    }
}

/// Least-squares real coefficients of targets in the span of a fixed family.
pub(crate) struct SpanSolver {
    coords: Coordinates,
    matrix: DMatrix<f64>,
    svd: Option<nalgebra::SVD<f64, nalgebra::Dyn, nalgebra::Dyn>>,
}

impl SpanSolver {
    pub(crate) fn new(elems: &[PauliSum]) -> Self {
        let coords = Coordinates::new(elems);
        let matrix = pad_rows(coords.matrix(elems), elems.len());
        let svd = (!elems.is_empty()).then(|| matrix.clone().svd(true, true));
        Self {
            coords,
            matrix,
            svd,
        }
    }

    /// Coefficients of the best approximation and the residual norm.
    pub(crate) fn solve(&self, target: &PauliSum) -> (Vec<f64>, f64) {
        let Some(svd) = &self.svd else {
            return (Vec::new(), target.norm());
        };
        let (v, outside) = self.coords.vector(target);
        let v = pad_vec(v, self.matrix.nrows());
        let smax = svd.singular_values.max();
        let x = svd
            .solve(&v, 1e-12 * smax.max(1.0))
            .expect("u and v_t computed");
        let in_span = (&self.matrix * &x - &v).norm_squared();
        (x.iter().copied().collect(), (in_span + outside).sqrt())
    }
}

fn pad_rows(m: DMatrix<f64>, min_rows: usize) -> DMatrix<f64> {
    if m.nrows() >= min_rows.max(1) {
        m
    } else {
        let rows = min_rows.max(1);
        let cols = m.ncols();
        m.resize(rows, cols, 0.0)
    }
}

fn pad_vec(v: DVector<f64>, rows: usize) -> DVector<f64> {
    if v.nrows() >= rows {
        v
    } else {
        v.resize_vertically(rows, 0.0)
    }
}

/// Basis of the real null space of `m` (columns are the unknowns), in
/// reduced row-echelon form so the result does not depend on the SVD's
/// choice of rotation inside degenerate subspaces.
pub(crate) fn null_space(m: DMatrix<f64>) -> Vec<DVector<f64>> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    let m = pad_rows(m, cols);
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("v_t computed");
    let smax = svd.singular_values.max();
    let tol = EPS_SPAN * smax.max(1.0);
    let null_rows: Vec<DVector<f64>> = (0..vt.nrows())
        .filter(|&k| svd.singular_values[k] <= tol)
        .map(|k| vt.row(k).transpose())
        .collect();
    rref(null_rows, cols)
}

fn rref(rows: Vec<DVector<f64>>, cols: usize) -> Vec<DVector<f64>> {
    let r = rows.len();
    if r == 0 {
        return rows;
    }
    let mut a = DMatrix::from_fn(r, cols, |i, j| rows[i][j]);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == r {
            break;
        }
        let (best, val) =
            (pivot_row..r)
                .map(|i| (i, a[(i, col)].abs()))
                .fold(
                    (pivot_row, -1.0),
                    |acc, x| if x.1 > acc.1 { x } else { acc },
                );
        if val < 1e-10 {
            continue;
        }
        a.swap_rows(pivot_row, best);
        let p = a[(pivot_row, col)];
        for j in 0..cols {
            a[(pivot_row, j)] /= p;
        }
        for i in 0..r {
            if i != pivot_row {
                let f = a[(i, col)];
                if f != 0.0 {
                    for j in 0..cols {
                        a[(i, j)] -= f * a[(pivot_row, j)];
                    }
                }
            }
        }
        pivot_row += 1;
    }
    (0..r)
        .map(|i| {
            let mut v = a.row(i).transpose();
            v.iter_mut().for_each(|x| {
                if x.abs() < 1e-13 {
                    *x = 0.0
                }
            });
            v
        })
        .collect()
}

/// Real combinations of `elems` that `op` maps to zero under `X -> [op, X]`,
/// for every `op` in `ops`.
pub(crate) fn commutant(elems: &[PauliSum], ops: &[PauliSum]) -> Vec<PauliSum> {
    let n = match elems.first() {
        Some(e) => e.n_qubits(),
        None => return Vec::new(),
    };
    let images: Vec<Vec<PauliSum>> = elems
        .iter()
        .map(|e| {
            ops.iter()
                .map(|s| s.commutator(e).expect("qubit counts checked by caller"))
                .collect()
        })
        .collect();
    let per_op: Vec<Coordinates> = (0..ops.len())
        .map(|k| Coordinates::new(images.iter().map(|im| &im[k])))
        .collect();
    let rows: usize = per_op.iter().map(|c| c.rows()).sum();
    let mut m = DMatrix::zeros(rows, elems.len());
    let mut offset = 0;
    for (k, coords) in per_op.iter().enumerate() {
        for (col, im) in images.iter().enumerate() {
            let (v, _) = coords.vector(&im[k]);
            m.view_mut((offset, col), (coords.rows(), 1)).copy_from(&v);
        }
        offset += coords.rows();
    }
    null_space(m)
        .into_iter()
        .map(|v| combine(n, v.as_slice(), elems))
        .collect()
}
