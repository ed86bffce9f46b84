//! Exponential integral and the order-one modified Bessel function of the
//! second kind.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_ITER: usize = 10_000;

/// Exponential integral `Ei(x) = -∫_{-x}^∞ e^{-t}/t dt` (principal value).
pub fn exp_integral_ei<T: Real>(x: T) -> Result<T> {
    if x == T::zero() || x.is_nan() {
        return Err(Error::Domain {
            function: "exp_integral_ei",
            arg: x.as_f64(),
        });
    }
    if x < T::zero() {
        return Ok(-e1_unchecked(-x));
    }
    let v = if x <= T::lit(40.0) {
        ei_series(x)
    } else {
        ei_asymptotic(x)
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range {
            function: "exp_integral_ei",
            arg: x.as_f64(),
        })
    }
}

/// `E1(z)` for `z > 0`.
pub fn exp_integral_e1<T: Real>(z: T) -> Result<T> {
    if !(z > T::zero()) {
        return Err(Error::Domain {
            function: "exp_integral_e1",
            arg: z.as_f64(),
        });
    }
    Ok(e1_unchecked(z))
}

/// `e^z E1(z)` for `z > 0`, without intermediate overflow or underflow.
pub fn exp_integral_e1_scaled<T: Real>(z: T) -> Result<T> {
    if !(z > T::zero()) {
        return Err(Error::Domain {
            function: "exp_integral_e1_scaled",
            arg: z.as_f64(),
        });
    }
    Ok(e1_scaled_unchecked(z))
}

fn e1_unchecked<T: Real>(z: T) -> T {
    if z <= T::one() {
        e1_series(z)
    } else {
        e1_scaled_unchecked(z) * (-z).exp()
    }
}

pub(crate) fn e1_scaled_unchecked<T: Real>(z: T) -> T {
    if z <= T::one() {
        e1_series(z) * z.exp()
    } else if z > T::one() / T::epsilon() {
        // e^z E1(z) ~ (1 - 1/z) / z once the continued fraction is exhausted.
        (T::one() - z.recip()) / z
    } else {
        e1_continued_fraction_scaled(z)
    }
}

/// `-γ - ln z - Σ (-z)^k / (k k!)`
fn e1_series<T: Real>(z: T) -> T {
    let mut term = T::one();
    let mut sum = T::zero();
    for k in 1..MAX_ITER {
        let kf = T::lit(k as f64);
        term = -term * z / kf;
        let add = term / kf;
        sum = sum + add;
        if add.abs() <= T::epsilon() * sum.abs().max(T::min_positive_value()) {
            break;
        }
    }
    -T::euler_gamma() - z.ln() - sum
}

/// Modified Lentz evaluation of the E1 continued fraction, times `e^z`.
fn e1_continued_fraction_scaled<T: Real>(z: T) -> T {
    let tiny = T::min_positive_value() / T::epsilon();
    let two = T::lit(2.0);
    let mut b = z + T::one();
    let mut c = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let fi = T::lit(i as f64);
        let an = -fi * fi;
        b = b + two;
        d = T::one() / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h = h * del;
        if (del - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    h
}

/// `γ + ln x + Σ x^k / (k k!)` for positive `x`.
fn ei_series<T: Real>(x: T) -> T {
    let mut term = T::one();
    let mut sum = T::zero();
    for k in 1..MAX_ITER {
        let kf = T::lit(k as f64);
        term = term * x / kf;
        let add = term / kf;
        sum = sum + add;
        if add <= T::epsilon() * sum {
            break;
        }
    }
    T::euler_gamma() + x.ln() + sum
}

fn ei_asymptotic<T: Real>(x: T) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..MAX_ITER {
        let next = term * T::lit(k as f64) / x;
        if next >= term {
            break;
        }
        term = next;
        sum = sum + term;
        if term <= T::epsilon() * sum {
            break;
        }
    }
    x.exp() / x * sum
}

/// `K1(x)` for `x > 0`.
pub fn bessel_k1<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain {
            function: "bessel_k1",
            arg: x.as_f64(),
        });
    }
    if x.is_infinite() {
        return Ok(T::zero());
    }
    Ok(if x <= T::lit(2.0) {
        k1_series(x)
    } else {
        k1_steed_scaled(x) * (-x).exp()
    })
}

/// `e^x K1(x)` for `x > 0`.
pub fn bessel_k1_scaled<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain {
            function: "bessel_k1_scaled",
            arg: x.as_f64(),
        });
    }
    Ok(if x <= T::lit(2.0) {
        k1_series(x) * x.exp()
    } else {
        k1_steed_scaled(x)
    })
}

/// Power series around the origin, valid for small and moderate `x`:
/// `K1 = 1/x + ln(x/2) I1(x) - (x/4) Σ (ψ(k+1) + ψ(k+2)) (x²/4)^k / (k!(k+1)!)`.
fn k1_series<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    let y = x * x * T::lit(0.25);
    let gamma = T::euler_gamma();
    // c_k = (x²/4)^k / (k!(k+1)!)
    let mut c = T::one();
    let mut harmonic = T::zero();
    let mut i1_sum = T::one();
    let mut psi_sum = T::lit(1.0) - T::lit(2.0) * gamma;
    for k in 1..MAX_ITER {
        let kf = T::lit(k as f64);
        c = c * y / (kf * (kf + T::one()));
        harmonic = harmonic + kf.recip();
        let psi = T::lit(2.0) * (harmonic - gamma) + (kf + T::one()).recip();
        i1_sum = i1_sum + c;
        let add = psi * c;
        psi_sum = psi_sum + add;
        if c <= T::epsilon() * i1_sum && add.abs() <= T::epsilon() * psi_sum.abs() {
            break;
        }
    }
    let i1 = x * half * i1_sum;
    x.recip() + (x * half).ln() * i1 - x * T::lit(0.25) * psi_sum
}

/// Steed's continued fraction (Temme's normalization) for `e^x K1(x)`, `x >= 2`.
fn k1_steed_scaled<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let mut b = two * (T::one() + x);
    let mut d = T::one() / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = T::zero();
    let mut q2 = T::one();
    let a1 = T::lit(0.25);
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = T::one() + q * delh;
    for i in 1..MAX_ITER {
        let fi = T::lit(i as f64);
        a = a - two * fi;
        c = -a * c / (fi + T::one());
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = T::one() / (b + a * d);
        delh = (b * d - T::one()) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if (dels / s).abs() < T::epsilon() {
            break;
        }
    }
    h = a1 * h;
    let k0_scaled = (T::PI() / (two * x)).sqrt() / s;
    k0_scaled * (x + half - h) / x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ei_reference_values() {
        assert_relative_eq!(exp_integral_ei(-1.0_f64).unwrap(), -0.219_383_934_395_520_3, max_relative = 1e-14);
        assert_relative_eq!(exp_integral_ei(-10.0_f64).unwrap(), -4.156_968_929_685_325e-6, max_relative = 1e-13);
        assert_relative_eq!(exp_integral_ei(1.0_f64).unwrap(), 1.895_117_816_355_936_8, max_relative = 1e-14);
        assert_relative_eq!(exp_integral_ei(50.0_f64).unwrap(), 1.058_563_689_713_169_1e20, max_relative = 1e-13);
    }

    #[test]
    fn ei_small_argument_expansion() {
        for &x in &[1e-6_f64, 1e-8, 1e-10] {
            let expansion = crate::scalar::EULER_GAMMA + x.ln();
            assert!((exp_integral_ei(-x).unwrap() - expansion).abs() < 2.0 * x);
        }
    }

    #[test]
    fn ei_domain_and_range() {
        assert!(matches!(exp_integral_ei(0.0_f64), Err(Error::Domain { .. })));
        assert!(matches!(exp_integral_ei(800.0_f64), Err(Error::Range { .. })));
        assert!(exp_integral_ei(700.0_f64).unwrap().is_finite());
        assert!(exp_integral_e1(-1.0_f64).is_err());
    }

    #[test]
    fn e1_branches_agree_at_switch() {
        let below = e1_series(1.0_f64);
        let above = e1_continued_fraction_scaled(1.0_f64) * (-1.0_f64).exp();
        assert_relative_eq!(below, above, max_relative = 1e-14);
    }

    #[test]
    fn k1_reference_values() {
        assert_relative_eq!(bessel_k1(1.0_f64).unwrap(), 0.601_907_230_197_234_6, max_relative = 1e-14);
        assert_relative_eq!(bessel_k1(10.0_f64).unwrap(), 1.864_877_345_382_558_5e-5, max_relative = 1e-13);
        assert_relative_eq!(bessel_k1(2.0_f64).unwrap(), 0.139_865_881_816_522_43, max_relative = 1e-14);
    }

    #[test]
    fn k1_branches_agree_at_switch() {
        let s = k1_series(2.0_f64);
        let c = k1_steed_scaled(2.0_f64) * (-2.0_f64).exp();
        assert_relative_eq!(s, c, max_relative = 1e-14);
    }

    #[test]
    fn k1_small_argument_limit() {
        for &x in &[1e-4_f64, 1e-6, 1e-8] {
            assert_relative_eq!(x * bessel_k1(x).unwrap(), 1.0, max_relative = 1e-6);
        }
        assert!(bessel_k1(0.0_f64).is_err());
        assert!(bessel_k1(-2.0_f64).is_err());
    }

    #[test]
    fn single_precision() {
        assert_relative_eq!(bessel_k1(1.0_f32).unwrap(), 0.601_907_2, max_relative = 1e-5);
        assert_relative_eq!(exp_integral_ei(-1.0_f32).unwrap(), -0.219_383_93, max_relative = 1e-5);
    }
}
