//! Special functions and the rate kernels of the secrecy analysis.
//!
//! All routines are pure and reentrant.

mod elementary;
mod kernels;
pub mod quadrature;

pub use elementary::{
    bessel_k1, bessel_k1_scaled, exp_integral_e1, exp_integral_e1_scaled, exp_integral_ei,
};
pub use kernels::{mean_ln1p_y, phi1, phi2, phi3, phi4, phi5, phi5_integral};
pub(crate) use kernels::phi3_total;
pub use quadrature::{Estimate, QuadratureSettings};

pub use crate::scalar::EULER_GAMMA;

/// `ψ'(1) = π²/6`.
pub const TRIGAMMA_ONE: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
