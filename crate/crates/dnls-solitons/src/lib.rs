//! Reflectionless (pure soliton) solutions.
//!
//! The N-soliton is obtained from a 2N×2N linear system for the residues of a
//! Blaschke-renormalized meromorphic row vector. Which poles are renormalized is
//! a free choice (it does not change the solution); [`partition`] picks it from
//! a space-time cone, [`balanced_partition`] from the size of the residues at a
//! single point.

mod error;
mod one;
mod system;
mod window;

pub use error::{Result, SolitonError};
pub use one::{one_soliton, OneSoliton};
pub use system::{
    balanced_partition, blaschke, nsol_matrix, partition, q_nsoliton, q_nsoliton_on, q_nsoliton_with, solve_partitioned, solve_system,
    Direction, Partition, SolitonCoefficients,
};
pub use window::{half_line, phase_shifts, reduce_window, wrap_phase, PhaseShifts};
