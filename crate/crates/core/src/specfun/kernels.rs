//! Rate kernels built on the exponential integral and `K1`.

use super::elementary::{bessel_k1, e1_scaled_unchecked};
use super::quadrature::{integrate_semi_infinite, QuadratureSettings};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn require_positive<T: Real>(function: &'static str, x: T) -> Result<()> {
    if x > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            arg: x.as_f64(),
        })
    }
}

/// `φ1(x) = -e^{1/x} Ei(-1/x) = E[ln(1 + xZ)]` for standard-exponential `Z`.
pub fn phi1<T: Real>(x: T) -> Result<T> {
    require_positive("phi1", x)?;
    let z = x.recip();
    if z.is_infinite() {
        return Ok(x);
    }
    Ok(e1_scaled_unchecked(z))
}

/// `φ2(a, b) = φ1(a) - φ1(b)`.
pub fn phi2<T: Real>(a: T, b: T) -> Result<T> {
    Ok(phi1(a)? - phi1(b)?)
}

/// `φ3(x) = √x K1(√x)`, the complementary CDF of a product of two
/// independent exponentials whose means multiply to `1/4`.
pub fn phi3<T: Real>(x: T) -> Result<T> {
    require_positive("phi3", x)?;
    let r = x.sqrt();
    Ok(r * bessel_k1(r)?)
}

/// Total version of `φ3` on `[0, inf]`, used inside integrands.
pub(crate) fn phi3_total<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::one()
    } else if x.is_infinite() {
        T::zero()
    } else {
        let r = x.sqrt();
        r * bessel_k1(r).unwrap_or(T::zero())
    }
}

/// `φ4(a, b) = ∫_0^∞ e^{-bx} √x K1(√x) / (ax + 1) dx`.
pub fn phi4<T: Real>(a: T, b: T, q: &QuadratureSettings) -> Result<T> {
    require_positive("phi4", a)?;
    require_positive("phi4", b)?;
    phi4_total(a, b, q)
}

/// `φ4` allowing `a >= 0` and `b >= 0`.
pub(crate) fn phi4_total<T: Real>(a: T, b: T, q: &QuadratureSettings) -> Result<T> {
    let integrand = |x: T| {
        let decay = (-b * x).exp();
        if decay == T::zero() {
            return T::zero();
        }
        decay * phi3_total(x) / (a * x + T::one())
    };
    // The integrand has unit length scale from φ3 unless the exponential cuts
    // it off earlier.
    let scale = if b > T::one() { b.recip() } else { T::one() };
    Ok(integrate_semi_infinite(integrand, scale, q)?.value)
}

/// Closed-form large-`a` approximation of `∫_0^∞ e^{-by} ln(y) / (ay + 1) dy`:
/// `ln(b/a) ln(ab) / (2a) - ψ'(1) / (2a) + γ ln(b) / a + γ² / (2a)`.
pub fn phi5<T: Real>(a: T, b: T) -> Result<T> {
    require_positive("phi5", a)?;
    require_positive("phi5", b)?;
    let two = T::lit(2.0);
    let gamma = T::euler_gamma();
    let trigamma_one = T::PI() * T::PI() / T::lit(6.0);
    Ok((b / a).ln() * (a * b).ln() / (two * a) - trigamma_one / (two * a)
        + gamma * b.ln() / a
        + gamma * gamma / (two * a))
}

/// Quadrature of the integral that [`phi5`] approximates.
pub fn phi5_integral<T: Real>(a: T, b: T, q: &QuadratureSettings) -> Result<T> {
    require_positive("phi5_integral", a)?;
    require_positive("phi5_integral", b)?;
    let integrand = |y: T| {
        let decay = (-b * y).exp();
        if decay == T::zero() || y <= T::zero() {
            return T::zero();
        }
        decay * y.ln() / (a * y + T::one())
    };
    Ok(integrate_semi_infinite(integrand, b.recip(), q)?.value)
}

/// `E[ln(1 + Y)]` under the `φ3` model of `Y`:
/// `∫_0^∞ φ3(x / β) / (1 + x) dx`.
pub fn mean_ln1p_y<T: Real>(beta_u: T, q: &QuadratureSettings) -> Result<T> {
    require_positive("mean_ln1p_y", beta_u)?;
    let integrand = |x: T| phi3_total(x / beta_u) / (T::one() + x);
    Ok(integrate_semi_infinite(integrand, beta_u.max(T::lit(1e-3)), q)?.value)
}
