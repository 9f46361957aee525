//! Direct interaction sets: every Pauli product with a nonzero energy
//! gradient at a basis-state reference, grouped by gradient magnitude.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::gradient::basis_gradient;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::pauli::{PauliSum, PauliTerm};
use crate::EPS_GRAD;

/// Exhaustive enumeration limit.
pub const MAX_DIS_QUBITS: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct GradientClass {
    pub representative: PauliTerm,
    pub magnitude: f64,
    pub members: Vec<PauliTerm>,
}

/// Groups all `4^N - 1` non-identity products by `|gradient|`.
///
/// Classes come out in descending magnitude; members within a class are
/// ordered by `(x_mask, z_mask)` and the first one is the representative.
pub fn dis_classes(h: &PauliSum, reference: &StateVector) -> Result<Vec<GradientClass>> {
    let n = h.n_qubits();
    if n > MAX_DIS_QUBITS {
        return Err(Error::TooMany {
            what: "qubits",
            got: n,
            max: MAX_DIS_QUBITS,
        });
    }
    if reference.n_qubits() != n {
        return Err(Error::QubitMismatch {
            left: n,
            right: reference.n_qubits(),
        });
    }
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let b = reference.basis_index().ok_or(Error::NotBasisState)?;
    let dim = 1u64 << n;
    let mut nonzero: Vec<(f64, u64, u64)> = (0..dim)
        .into_par_iter()
        .flat_map_iter(|x| {
            (0..dim).filter_map(move |z| {
                if x == 0 && z == 0 {
                    return None;
                }
                let g = basis_gradient(h, x, z, b).abs();
                (g > EPS_GRAD).then_some((g, x, z))
            })
        })
        .collect();
    nonzero.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));

    let mut classes = Vec::new();
    let mut start = 0;
    while start < nonzero.len() {
        let top = nonzero[start].0;
        let end = nonzero[start..]
            .iter()
            .position(|e| top - e.0 > EPS_GRAD)
            .map_or(nonzero.len(), |p| start + p);
        let mut keys: Vec<(u64, u64)> = nonzero[start..end].iter().map(|e| (e.1, e.2)).collect();
        keys.sort_unstable();
        let members: Vec<PauliTerm> = keys
            .into_iter()
            .map(|(x, z)| PauliTerm::from_masks(n, x, z).expect("masks in range"))
            .collect();
        classes.push(GradientClass {
            representative: members[0],
            magnitude: top,
            members,
        });
        start = end;
    }
    Ok(classes)
}

/// True iff no product appears in two classes.
pub fn classes_are_disjoint(classes: &[GradientClass]) -> bool {
    let mut seen = BTreeSet::new();
    classes
        .iter()
        .flat_map(|c| &c.members)
        .all(|m| seen.insert(m.masks()))
}
