//! Deterministic multi-start amplitude optimisation.
//!
//! Each start is refined by BFGS with central finite-difference gradients.
//! Start `0` is the factors' own amplitudes; start `k >= 1` is drawn
//! uniformly from the amplitude box by a ChaCha8 generator seeded with
//! `base + k - 1`. Starts run in fixed chunks of eight; the best value wins
//! and ties go to the lowest start index, so results do not depend on the
//! thread count.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ansatz::{AnsatzFactor, CompiledAnsatz};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::pauli::PauliSum;

pub const MAX_AMPLITUDES: usize = 12;

/// Minimum number of random starts.
pub const MIN_STARTS: usize = 32;

/// Fidelity at which remaining chunks are skipped.
const FIDELITY_STOP: f64 = 1.0 - 1e-12;

const CHUNK: usize = 8;
const FD_STEP: f64 = 1e-6;
const MAX_ITER: usize = 500;

#[derive(Clone, Debug, PartialEq)]
pub enum Objective {
    /// Maximise `|<target|psi>|`.
    MaxFidelity(StateVector),
    /// Minimise `<psi|H|psi>`.
    MinEnergy(PauliSum),
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::MaxFidelity(_) => "fidelity",
            Objective::MinEnergy(_) => "energy",
        }
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            Objective::MaxFidelity(t) => t.n_qubits(),
            Objective::MinEnergy(h) => h.n_qubits(),
        }
    }

    fn validate(&self) -> Result<()> {
        if let Objective::MinEnergy(h) = self {
            if !h.is_hermitian() {
                return Err(Error::NotHermitian);
            }
        }
        Ok(())
    }

    /// Value reported to callers for `psi`.
    pub fn value(&self, psi: &StateVector) -> f64 {
        match self {
            Objective::MaxFidelity(t) => overlap(t, psi).norm().min(1.0),
            Objective::MinEnergy(h) => energy(h, psi),
        }
    }

    /// Quantity minimised internally.
    fn loss(&self, psi: &StateVector) -> f64 {
        match self {
            Objective::MaxFidelity(t) => 1.0 - overlap(t, psi).norm_sqr(),
            Objective::MinEnergy(h) => energy(h, psi),
        }
    }

    /// True if `value` is at least as good as `other`.
    pub fn better_or_equal(&self, value: f64, other: f64) -> bool {
        match self {
            Objective::MaxFidelity(_) => value >= other,
            Objective::MinEnergy(_) => value <= other,
        }
    }
}

fn overlap(a: &StateVector, b: &StateVector) -> Complex64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x.conj() * y)
        .sum()
}

fn energy(h: &PauliSum, psi: &StateVector) -> f64 {
    let hv = h.apply(psi.amplitudes());
    psi.amplitudes()
        .iter()
        .zip(&hv)
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

/// Random starts: `starts` draws seeded `base, base + 1, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedSchedule {
    pub base: u64,
    pub starts: usize,
}

impl SeedSchedule {
    pub fn new(base: u64, starts: usize) -> Result<Self> {
        if starts < MIN_STARTS {
            return Err(Error::Config(format!(
                "seed schedule needs at least {MIN_STARTS} starts, got {starts}"
            )));
        }
        Ok(Self { base, starts })
    }
}

impl Default for SeedSchedule {
    fn default() -> Self {
        Self {
            base: 20_191,
            starts: MIN_STARTS,
        }
    }
}

impl FromStr for SeedSchedule {
    type Err = Error;

    /// `base:starts`, or just `base` for the default start count.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid seed schedule '{s}', expected base:starts"));
        let (base, starts) = match s.split_once(':') {
            Some((b, n)) => (b, Some(n)),
            None => (s, None),
        };
        let base = base.trim().parse().map_err(|_| bad())?;
        let starts = match starts {
            Some(n) => n.trim().parse().map_err(|_| bad())?,
            None => MIN_STARTS,
        };
        Self::new(base, starts)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizeResult {
    pub amplitudes: Vec<f64>,
    /// Fidelity or energy, depending on the objective.
    pub value: f64,
    /// Index of the winning start (0 = initial amplitudes).
    pub start: usize,
    /// Number of starts actually refined.
    pub starts_run: usize,
}

/// Half-width of the sampling box.
pub fn amplitude_box(factors: &[AnsatzFactor]) -> f64 {
    if factors.iter().any(AnsatzFactor::is_multi_term) {
        2.0 * PI
    } else {
        PI
    }
}

fn random_start(seed: u64, dim: usize, half: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim).map(|_| rng.random_range(-half..half)).collect()
}

pub fn optimize(
    factors: &[AnsatzFactor],
    reference: &StateVector,
    objective: &Objective,
    schedule: SeedSchedule,
) -> Result<OptimizeResult> {
    if factors.len() > MAX_AMPLITUDES {
        return Err(Error::TooMany {
            what: "amplitudes",
            got: factors.len(),
            max: MAX_AMPLITUDES,
        });
    }
    if objective.n_qubits() != reference.n_qubits() {
        return Err(Error::QubitMismatch {
            left: objective.n_qubits(),
            right: reference.n_qubits(),
        });
    }
    objective.validate()?;
    let compiled = CompiledAnsatz::new(factors, reference.n_qubits())?;
    let dim = compiled.len();
    let loss = |x: &[f64]| objective.loss(&compiled.apply(x, reference));
    if dim == 0 {
        return Ok(OptimizeResult {
            amplitudes: Vec::new(),
            value: objective.value(reference),
            start: 0,
            starts_run: 1,
        });
    }

    let half = amplitude_box(factors);
    let total = schedule.starts + 1;
    let start_point = |k: usize| -> Vec<f64> {
        if k == 0 {
            factors.iter().map(|f| f.amplitude).collect()
        } else {
            random_start(schedule.base.wrapping_add(k as u64 - 1), dim, half)
        }
    };

    let mut best: Option<(f64, usize, Vec<f64>)> = None;
    let mut run = 0;
    for chunk_start in (0..total).step_by(CHUNK) {
        let chunk_end = (chunk_start + CHUNK).min(total);
        let results: Vec<(f64, usize, Vec<f64>)> = (chunk_start..chunk_end)
            .into_par_iter()
            .map(|k| {
                let (x, fx) = bfgs(&loss, start_point(k));
                (fx, k, x)
            })
            .collect();
        run = chunk_end;
        for r in results {
            let replace = match &best {
                None => true,
                Some(b) => r.0 < b.0 || (r.0 == b.0 && r.1 < b.1),
            };
            if replace {
                best = Some(r);
            }
        }
        if let (Objective::MaxFidelity(_), Some(b)) = (objective, &best) {
            if (1.0 - b.0).max(0.0).sqrt() >= FIDELITY_STOP {
                break;
            }
        }
    }
    let (_, start, amplitudes) = best.expect("at least one start");
    let value = objective.value(&compiled.apply(&amplitudes, reference));
    Ok(OptimizeResult {
        amplitudes,
        value,
        start,
        starts_run: run,
    })
}

fn fd_gradient(f: &impl Fn(&[f64]) -> f64, x: &[f64]) -> Vec<f64> {
    let mut xp = x.to_vec();
    (0..x.len())
        .map(|k| {
            xp[k] = x[k] + FD_STEP;
            let fp = f(&xp);
            xp[k] = x[k] - FD_STEP;
            let fm = f(&xp);
            xp[k] = x[k];
            (fp - fm) / (2.0 * FD_STEP)
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Quasi-Newton descent from `x`; returns the final point and value.
fn bfgs(f: &impl Fn(&[f64]) -> f64, mut x: Vec<f64>) -> (Vec<f64>, f64) {
    let n = x.len();
    let identity = |m: &mut Vec<f64>| {
        m.iter_mut().for_each(|v| *v = 0.0);
        (0..n).for_each(|i| m[i * n + i] = 1.0);
    };
    let mut hinv = vec![0.0; n * n];
    identity(&mut hinv);
    let mut fx = f(&x);
    let mut g = fd_gradient(f, &x);
    for _ in 0..MAX_ITER {
        if dot(&g, &g).sqrt() < 1e-10 {
            break;
        }
        let mut p: Vec<f64> = (0..n)
            .map(|i| -(0..n).map(|j| hinv[i * n + j] * g[j]).sum::<f64>())
            .collect();
        let mut slope = dot(&g, &p);
        if slope >= 0.0 {
            identity(&mut hinv);
            p = g.iter().map(|v| -v).collect();
            slope = dot(&g, &p);
        }
        let mut alpha = 1.0;
        let mut accepted = None;
        while alpha > 1e-14 {
            let xn: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a + alpha * b).collect();
            let fnew = f(&xn);
            if fnew <= fx + 1e-4 * alpha * slope {
                accepted = Some((xn, fnew));
                break;
            }
            alpha *= 0.5;
        }
        let Some((xn, fnew)) = accepted else { break };
        let gn = fd_gradient(f, &xn);
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-16 {
            let rho = 1.0 / sy;
            let hy: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|j| hinv[i * n + j] * y[j]).sum())
                .collect();
            let yhy = dot(&y, &hy);
            for i in 0..n {
                for j in 0..n {
                    hinv[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j])
                        + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }
        let gain = fx - fnew;
        x = xn;
        fx = fnew;
        g = gn;
        if gain <= 1e-16 * fx.abs().max(1e-6) {
            break;
        }
    }
    (x, fx)
}
