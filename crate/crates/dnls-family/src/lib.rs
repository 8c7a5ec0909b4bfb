//! The sech-type family q = ν sech(x)^{1−2iμ} e^{i(S₀ − εν² tanh x − 2δx)}, whose
//! scattering coefficients are ratios of Γ-functions.

mod family;

pub use family::*;
