//! Closed-form distribution functions of the per-draw SINRs.
//!
//! All functions return 0 for `x <= 0`.

use crate::montecarlo::Quantity;
use crate::params::{DerivedCoeffs, SystemParams};
use crate::scalar::Real;
use crate::sinr::Signal;
use crate::specfun::{phi1, phi3_total};

/// CDF of `a ρ g / (ā ρ g + ρ_U g_j + 1)` with `E[g] = λ` and jamming gain
/// `g_j`; `w` is the jamming-to-signal mean ratio. Shared by the relay's
/// `x1` and `x3` observations.
fn interference_limited<T: Real>(x: T, a: T, s: T, w: T) -> T {
    let one = T::one();
    let ab = one - a;
    if x <= T::zero() {
        return T::zero();
    }
    if x >= a / ab {
        return one;
    }
    let head = a - ab * x;
    one - head / ((w - ab) * x + a) * (-x / (s * head)).exp()
}

/// Relay SINR of `x1`. Saturates at `a_S / ā_S`.
pub fn eve_x1<T: Real>(x: T, p: &SystemParams<T>, c: &DerivedCoeffs<T>) -> T {
    interference_limited(x, p.a_s, p.rho_s() * p.lambda_sr, c.omega1)
}

/// Far-user SINR of `x2`. Saturates at `ā_S / a_S`.
pub fn legit_x2<T: Real>(x: T, p: &SystemParams<T>, c: &DerivedCoeffs<T>) -> T {
    let one = T::one();
    let (a, ab) = (p.a_s, p.a_s_bar());
    if x <= T::zero() {
        return T::zero();
    }
    if x >= ab / a {
        return one;
    }
    let head = ab - a * x;
    one - phi3_total(x / (c.beta_s * head)) * (-T::lit(2.0) * x / (p.rho_s() * p.lambda_sr * head)).exp()
}

/// Relay SINR of `x3`. Saturates at `a1 / ā1`.
pub fn eve_x3<T: Real>(x: T, p: &SystemParams<T>, c: &DerivedCoeffs<T>) -> T {
    interference_limited(x, p.a1_t2, p.rho_u * p.lambda_run, c.omega2)
}

/// Base-station SINR of `x4`.
pub fn legit_x4<T: Real>(x: T, p: &SystemParams<T>, c: &DerivedCoeffs<T>) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    T::one() - (-T::lit(2.0) * x / (p.rho_u * p.lambda_ruf)).exp() * phi3_total(x / c.beta_u)
}

/// Relay SINR of `x4`.
pub fn eve_x4<T: Real>(x: T, p: &SystemParams<T>, _c: &DerivedCoeffs<T>) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    T::one()
        - p.lambda_ruf / (p.lambda_run * x + p.lambda_ruf) * (-x / (p.rho_u * p.lambda_ruf)).exp()
}

/// Base-station SINR of `x5`.
pub fn legit_x5<T: Real>(x: T, p: &SystemParams<T>, c: &DerivedCoeffs<T>) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    let k = c.a1_t3_bar() * p.lambda_sun / (c.g_sq * p.lambda_sr * p.lambda_ruf * x);
    let arg = T::lit(2.0) / (p.rho_u * p.lambda_ruf) + k;
    let tail = k * (-x / (c.a1_t3_bar() * p.rho_u * p.lambda_sun)).exp() * phi1(arg.recip()).unwrap_or(T::zero());
    T::one() - tail
}

/// Approximate CDF of `Y = G^2 g_sr (ρ_U g_ruf + 2)`, `1 - φ3(y / β_U)`.
pub fn y<T: Real>(x: T, _p: &SystemParams<T>, c: &DerivedCoeffs<T>) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    T::one() - phi3_total(x / c.beta_u)
}

/// The closed form for `q` under the proposed scheme, if one exists.
pub fn closed_form<T: Real>(q: Quantity) -> Option<fn(T, &SystemParams<T>, &DerivedCoeffs<T>) -> T> {
    Some(match q {
        Quantity::Eve(Signal::X1) => eve_x1,
        Quantity::Legit(Signal::X2) => legit_x2,
        Quantity::Eve(Signal::X3) => eve_x3,
        Quantity::Legit(Signal::X4) => legit_x4,
        Quantity::Eve(Signal::X4) => eve_x4,
        Quantity::Legit(Signal::X5) => legit_x5,
        Quantity::Y => y,
        _ => return None,
    })
}
