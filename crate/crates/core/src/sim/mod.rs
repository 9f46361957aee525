//! Statevector simulation of exponent-product ansaetze.

mod ansatz;
mod dis;
mod expm;
mod gradient;
mod optimize;
mod orderscan;
mod state;
mod trotter;

pub use ansatz::{build_ansatz, AnsatzFactor};
pub use dis::{classes_are_disjoint, dis_classes, GradientClass, MAX_DIS_QUBITS};
pub use expm::{apply_exp_pauli, apply_exp_sum, MAX_EXP_QUBITS};
pub use gradient::{expectation, gradient};
pub use optimize::{
    amplitude_box, optimize, Objective, OptimizeResult, SeedSchedule, MAX_AMPLITUDES, MIN_STARTS,
};
pub use orderscan::{orderscan, OrderScan, PermutationResult, MAX_SCAN_FACTORS, ORDER_TOL};
pub use state::{bitstring, fidelity, parse_bitstring, StateVector, MAX_STATE_QUBITS};
pub use trotter::{exact_uccsd, trotter_uccsd};
