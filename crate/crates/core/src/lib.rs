//! Resource estimates for simulating first-quantized nuclear dynamics of
//! lattice pionless effective field theory on a fault-tolerant quantum
//! computer.
//!
//! The crate evaluates closed-form T-gate and qubit counts for
//! product-formula (orders 1, 2 and 4) and QSP time evolution, together with
//! the subroutine costs and norm bounds they are built from.
//!
//! ```
//! use pionless_core::{cost_trotter, crossing_time, Accounting, SystemSpec, TrotterOrder};
//!
//! let spec = SystemSpec::with_defaults(3, 3, 16).unwrap();
//! let t = crossing_time(&spec, 10.0).unwrap();
//! let report = cost_trotter(&spec, TrotterOrder::Second, 0.1, t, &Accounting::default()).unwrap();
//! assert_eq!(report.total_qubits, 207);
//! ```

// Negated comparisons such as `!(x > 0.0)` deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cost;
pub mod error;
pub mod gates;
pub mod lcu;
pub mod norms;
pub mod params;
pub mod trotter;

pub use cost::{Accounting, CostReport, CostTally, LogBase};
pub use error::{EstimateError, Result};
pub use gates::{
    kickback_sizing, t_mcrz, t_mcx, t_qft, t_rot, t_squ, KickbackConstant, KickbackSizing,
};
pub use lcu::{lcu_h, lcu_t, lcu_v, qsp_evolution, BlockEncodingReport, QspReport};
pub use norms::{
    commutator_bounds, m_s, max_couples, max_triples, potential_norm_bounds, CommutatorBounds,
    PotentialBounds,
};
pub use params::{
    crossing_time, kinetic_coefficient, lambda_t, response_time, HamiltonianParams, LatticeConfig,
    SystemSpec, TimeSpec, HBAR_C_MEV_FM,
};
pub use trotter::{
    cost_exp_t, cost_exp_v_compact, cost_exp_v_separate, cost_trotter, plan_trotter, TrotterOrder,
    TrotterPlan,
};
