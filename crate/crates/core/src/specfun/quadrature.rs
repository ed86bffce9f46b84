//! Globally adaptive Gauss–Kronrod (10/21 point) integration.
//!
//! Semi-infinite ranges are mapped onto `[0, 1)` with `x = s t / (1 - t)`
//! before subdivision.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerances for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSettings {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let q = QuadratureSettings {
            rel_tol,
            abs_tol,
            max_subdivisions,
        };
        q.check()?;
        Ok(q)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidArgument(
                "quadrature tolerances must be strictly positive".into(),
            ));
        }
        if self.max_subdivisions < 10 {
            return Err(Error::InvalidArgument(
                "max_subdivisions must be at least 10".into(),
            ));
        }
        Ok(())
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One 21-point Kronrod panel, returning (estimate, error estimate).
fn kronrod21<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let abs_half = half_len.abs();

    let fc = f(center);
    let mut res_g = T::zero();
    let mut res_k = T::lit(WGK[10]) * fc;
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];

    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let result = res_k * half_len;
    res_abs = res_abs * abs_half;
    res_asc = res_asc * abs_half;
    let mut err = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && err != T::zero() {
        let scale = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = res_asc * scale.min(T::one());
    }
    let eps50 = T::lit(50.0) * T::epsilon();
    if res_abs > T::min_positive_value() / eps50 {
        err = err.max(eps50 * res_abs);
    }
    (result, err)
}

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Panel<T> {}
impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    q: &QuadratureSettings,
) -> Result<Estimate<T>> {
    q.check()?;
    // Requested tolerances are clipped to what the scalar type can deliver.
    let floor = T::lit(1000.0) * T::epsilon();
    let rel_tol = T::lit(q.rel_tol).max(floor);
    let abs_tol = T::lit(q.abs_tol).max(T::min_positive_value());

    let (v0, e0) = kronrod21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value: v0,
        error: e0,
    });
    let mut total = v0;
    let mut total_err = e0;

    for _ in 1..q.max_subdivisions {
        if !total.is_finite() || !total_err.is_finite() {
            break;
        }
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(Estimate {
                value: total,
                error: total_err,
            });
        }
        let worst = heap.pop().expect("panel heap is never empty");
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval can no longer be split in this precision.
            heap.push(worst);
            break;
        }
        let (v1, e1) = kronrod21(&f, worst.a, mid);
        let (v2, e2) = kronrod21(&f, mid, worst.b);
        total = total - worst.value + v1 + v2;
        total_err = total_err - worst.error + e1 + e2;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }

    // Re-sum to avoid drift from the incremental updates.
    let (value, error) = heap
        .iter()
        .fold((T::zero(), T::zero()), |(v, e), p| (v + p.value, e + p.error));
    if value.is_finite() && error <= abs_tol.max(rel_tol * value.abs()) {
        return Ok(Estimate { value, error });
    }
    Err(Error::Quadrature {
        estimate: value.as_f64(),
        error_bound: error.as_f64(),
    })
}

/// Integrates `f` over `[0, inf)` using the map `x = scale * t / (1 - t)`.
///
/// `scale` should be of the order of the integrand's characteristic length.
pub fn integrate_semi_infinite<T: Real, F: Fn(T) -> T>(
    f: F,
    scale: T,
    q: &QuadratureSettings,
) -> Result<Estimate<T>> {
    let mapped = |t: T| {
        let one_minus = T::one() - t;
        if one_minus <= T::zero() {
            return T::zero();
        }
        let x = scale * t / one_minus;
        if !x.is_finite() {
            return T::zero();
        }
        let fx = f(x);
        if fx == T::zero() {
            return T::zero();
        }
        fx * scale / (one_minus * one_minus)
    };
    integrate(mapped, T::zero(), T::one(), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let q = QuadratureSettings::default();
        let r = integrate(|x: f64| x.powi(5) - 3.0 * x * x, -1.0, 2.0, &q).unwrap();
        assert_relative_eq!(r.value, 64.0 / 6.0 - 1.0 / 6.0 - 9.0, max_relative = 1e-13);
    }

    #[test]
    fn exponential_tail() {
        let q = QuadratureSettings::default();
        let r = integrate_semi_infinite(|x: f64| (-x).exp(), 1.0, &q).unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-12);
        let r = integrate_semi_infinite(|x: f64| (-1e-3 * x).exp(), 1.0, &q).unwrap();
        assert_relative_eq!(r.value, 1e3, max_relative = 1e-10);
    }

    #[test]
    fn endpoint_singularity() {
        let q = QuadratureSettings::default();
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, &q).unwrap();
        assert_relative_eq!(r.value, -1.0, max_relative = 1e-10);
    }

    #[test]
    fn non_convergence_reports_best_estimate() {
        let q = QuadratureSettings::new(1e-14, 1e-300, 10).unwrap();
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &q).unwrap_err();
        assert!(matches!(err, Error::Quadrature { error_bound, .. } if error_bound > 0.0));
    }

    #[test]
    fn settings_validation() {
        assert!(QuadratureSettings::new(0.0, 1e-12, 100).is_err());
        assert!(QuadratureSettings::new(1e-8, 1e-12, 5).is_err());
    }

    #[test]
    fn single_precision_clips_tolerance() {
        let q = QuadratureSettings::default();
        let r = integrate_semi_infinite(|x: f32| (-x).exp(), 1.0, &q).unwrap();
        assert!((r.value - 1.0).abs() < 1e-5);
    }
}
