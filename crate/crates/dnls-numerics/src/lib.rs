//! Shared numerical kernels for the DNLS scattering lab.
//!
//! Everything here is a pure function of its inputs. The pieces are:
//! uniform complex grids with cubic resampling, the complex Gamma function,
//! parabolic cylinder functions `D_ν(z)`, Cauchy projectors and Cauchy
//! integrals on the real line, and an argument-principle zero finder.

pub mod cauchy;
pub mod error;
pub mod gamma;
pub mod grid;
pub mod pcf;
pub mod quad;
pub mod registry;
pub mod roots;

pub use cauchy::{cauchy_integral, cauchy_integral_deriv, cauchy_projector, CauchyPlan, Side};
pub use error::{NumericsError, Result};
pub use gamma::{gamma_complex, ln_gamma, rgamma};
pub use grid::{ComplexGrid1D, Grid1D};
pub use quad::tanh_sinh;
pub use pcf::{parabolic_cylinder_d, parabolic_cylinder_d_diag, PcfEval};
pub use registry::Registry;
pub use roots::{find_zeros, SearchRegion};

pub use num_complex::Complex64 as C64;

/// `i`, because it is needed everywhere.
pub const I: C64 = C64::new(0.0, 1.0);

/// Shorthand constructor.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
