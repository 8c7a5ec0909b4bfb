//! Inverse scattering: (ρ, {λ_k, C_k}) ↦ q.
//!
//! For each x a linear system (singular integral equations on the λ-grid coupled
//! to pole values) is solved by a pluggable [`LinearSolver`]. Points x ≥ 0 use the
//! problem normalized at +∞, points x < 0 the one normalized at −∞, whose data
//! are obtained from the trace formulas ([`left_data`]).

mod bc;
mod error;
mod invert;
mod left;
mod solver;

pub use bc::{row_problem, solve_row, BealsCoifmanSolution, Normalization, RowProblem};
pub use error::{InverseError, Result};
pub use invert::{Inverse, Inversion};
pub use left::left_data;
pub use solver::{solver_registry, AffineProblem, Auto, FixedPoint, Gmres, LinearSolver, Solved, SolverRegistry};

use dnls_numerics::{Grid1D, C64};
use dnls_spectral::{Potential, ScatteringData};

pub fn bc_solve_right(s: &ScatteringData, x: f64) -> Result<BealsCoifmanSolution> {
    Inverse::default().solve_right(s, x)
}

pub fn bc_solve_left(s: &ScatteringData, x: f64) -> Result<BealsCoifmanSolution> {
    Inverse::default().solve_left(&left_data(s)?, x)
}

pub fn reconstruct_right(s: &ScatteringData, x: f64) -> Result<C64> {
    Inverse::default().reconstruct_right(s, x)
}

pub fn reconstruct_left(s: &ScatteringData, x: f64) -> Result<C64> {
    Inverse::default().reconstruct_left(s, x)
}

pub fn invert(s: &ScatteringData, t: f64, x_grid: Grid1D) -> Result<Potential> {
    Ok(Inverse::default().invert(s, t, x_grid)?.potential)
}
