use itertools::Itertools;
use rayon::prelude::*;

use super::ansatz::AnsatzFactor;
use super::optimize::{optimize, Objective, OptimizeResult, SeedSchedule};
use super::state::StateVector;
use crate::error::{Error, Result};

pub const MAX_SCAN_FACTORS: usize = 8;

/// Optimised objectives agreeing to within this are order-invariant.
pub const ORDER_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct PermutationResult {
    /// Factor indices in product order (leftmost acts last).
    pub order: Vec<usize>,
    pub result: OptimizeResult,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderScan {
    pub objective: &'static str,
    /// Lexicographic in `order`.
    pub permutations: Vec<PermutationResult>,
    pub spread: f64,
    pub invariant: bool,
}

impl OrderScan {
    pub fn best(&self) -> f64 {
        self.values()
            .fold(f64::NAN, |a, b| if a.is_nan() || b > a { b } else { a })
    }

    pub fn worst(&self) -> f64 {
        self.values()
            .fold(f64::NAN, |a, b| if a.is_nan() || b < a { b } else { a })
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.permutations.iter().map(|p| p.result.value)
    }
}

/// Optimises every ordering of `factors`.
pub fn orderscan(
    factors: &[AnsatzFactor],
    reference: &StateVector,
    objective: &Objective,
    schedule: SeedSchedule,
) -> Result<OrderScan> {
    if factors.len() > MAX_SCAN_FACTORS {
        return Err(Error::TooMany {
            what: "factors",
            got: factors.len(),
            max: MAX_SCAN_FACTORS,
        });
    }
    let orders: Vec<Vec<usize>> = (0..factors.len()).permutations(factors.len()).collect();
    let permutations = orders
        .into_par_iter()
        .map(|order| {
            let permuted: Vec<AnsatzFactor> = order.iter().map(|&k| factors[k].clone()).collect();
            let result = optimize(&permuted, reference, objective, schedule)?;
            Ok(PermutationResult { order, result })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut scan = OrderScan {
        objective: objective.name(),
        permutations,
        spread: 0.0,
        invariant: true,
    };
    scan.spread = scan.best() - scan.worst();
    scan.invariant = scan.spread <= ORDER_TOL;
    Ok(scan)
}
