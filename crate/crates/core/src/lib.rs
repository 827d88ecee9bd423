//! Desk-scale simulator for an adiabatic sweep of the two-spin
//! transverse-field Ising model through its quantum critical points.
//!
//! The crate is `no_std` (with `alloc`). It covers:
//!
//! - [`linalg`]: dense complex algebra on dimension ≤ 4, Jacobi eigensolver,
//!   matrix exponential, Kraus channels.
//! - [`model`]: the Hamiltonian, closed-form triplet eigensystem, phase labels.
//! - [`pulse`]: compilation of one effective step into a symmetrized
//!   rf/free-precession cycle and its Trotter error.
//! - [`sweep`]: adiabaticity sensitivity, constant-adiabaticity and sinh
//!   schedules, step-count study.
//! - [`decoherence`]: per-step noise channels and the stepwise open-system scan.
//! - [`observables`]: pseudo-pure states, concurrence, fidelity, correlator.
#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod decoherence;
pub mod error;
pub mod linalg;
pub mod model;
pub mod observables;
pub mod optimize;
pub mod pulse;
pub mod sweep;

pub use decoherence::DecoherenceParams;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityOperator, Ket, C64};
pub use model::ModelParams;
pub use pulse::HardwareParams;
pub use sweep::SweepSchedule;

/// Default `J_I / J₁₂`: precession occupies 1.2·τ of each cycle.
pub const DEFAULT_J_I_OVER_J12: f64 = 0.3;
