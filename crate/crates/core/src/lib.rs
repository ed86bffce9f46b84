//! Secrecy-rate analysis of NOMA-assisted coordinated direct and relay
//! transmission with physical-layer network coding and an untrusted relay.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod analytic;
pub mod channel;
pub mod error;
pub mod montecarlo;
pub mod params;
pub mod scalar;
pub mod sinr;
pub mod specfun;
pub mod stats;

pub use analytic::{essr_asymptotic, essr_lb, esr_asymptotic, AnalyticBreakdown, AsymptoticForm, Flag};
pub use channel::{ChannelDraw, RngStream};
pub use error::{Error, Result, Violation};
pub use montecarlo::{estimate_exact, estimate_lowerbound, EsrReport, McConfig, Method, Quantity};
pub use params::{DerivedCoeffs, ParamField, SystemParams};
pub use scalar::Real;
pub use sinr::{Scheme, Signal, SinrModel, SinrProfile};

pub type Params = SystemParams<f64>;
pub type Coeffs = DerivedCoeffs<f64>;
pub type Draw = ChannelDraw<f64>;
pub type Profile = SinrProfile<f64>;
pub type Breakdown = AnalyticBreakdown<f64>;
