//! Closed-form lower bounds of the ergodic secrecy rates, their high-SNR
//! asymptotes, and the distribution functions they are built from.
//!
//! Several closed forms divide by `1 - ω1`, `ω1 - ā_S`, `ω1 - a_S`, `ω2 - 1`
//! or `ω2 - ā1`. The singularities are removable; near one, the component is
//! evaluated at two symmetric relative perturbations of the responsible gain
//! (`λ_RUF` for `ω1`, `λ_RUN` for `ω2`) and averaged, and the result is
//! flagged.

mod asymptotic;
pub mod cdf;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::params::{DerivedCoeffs, ParamField, SystemParams};
use crate::scalar::Real;
use crate::sinr::Signal;
use crate::specfun::{mean_ln1p_y, phi1, phi2, phi4, QuadratureSettings};

pub use asymptotic::{essr_asymptotic, esr_asymptotic, Asymptote, AsymptoticForm};

/// Denominator magnitude below which a closed form is treated as singular.
pub const POLE_TOLERANCE: f64 = 1e-6;
/// Relative perturbation applied at a pole.
pub const POLE_STEP: f64 = 1e-4;

/// Diagnostic attached to an analytic value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    /// Evaluated by symmetric perturbation around a removable singularity.
    PolePerturbed(Signal),
    /// A high-SNR log argument is at most one.
    LowSnr(Signal),
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::PolePerturbed(s) => write!(f, "pole_{s}"),
            Flag::LowSnr(s) => write!(f, "low_snr_{s}"),
        }
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Mean legitimate rate, mean relay rate and the clamped difference of one
/// signal, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Component<T> {
    pub legit: T,
    pub eve: T,
    pub esr: T,
    pub pole_perturbed: bool,
}

impl<T: Real> Component<T> {
    fn new(legit: T, eve: T) -> Self {
        Component {
            legit,
            eve,
            esr: (legit - eve).max(T::zero()),
            pole_perturbed: false,
        }
    }

    fn average(a: Self, b: Self) -> Self {
        let half = T::lit(0.5);
        let mut c = Component::new(half * (a.legit + b.legit), half * (a.eve + b.eve));
        c.pole_perturbed = true;
        c
    }
}

fn near_pole<T: Real>(dens: &[T]) -> bool {
    let tol = T::lit(POLE_TOLERANCE);
    dens.iter().any(|d| d.abs() < tol)
}

/// Evaluates `eval` at `p`, or at `p` with `field` scaled by `1 ± POLE_STEP`
/// and blended when `singular`.
pub(crate) fn guarded<T, R, F, B>(
    p: &SystemParams<T>,
    singular: bool,
    field: ParamField,
    eval: F,
    blend: B,
) -> Result<(R, bool)>
where
    T: Real,
    F: Fn(&SystemParams<T>) -> Result<R>,
    B: Fn(R, R) -> R,
{
    if !singular {
        return Ok((eval(p)?, false));
    }
    let v = p.get(field);
    let step = T::lit(POLE_STEP);
    let (mut lo, mut hi) = (*p, *p);
    lo.set(field, v * (T::one() - step));
    hi.set(field, v * (T::one() + step));
    Ok((blend(eval(&lo)?, eval(&hi)?), true))
}

fn component_guarded<T, F>(p: &SystemParams<T>, dens: &[T], field: ParamField, eval: F) -> Result<Component<T>>
where
    T: Real,
    F: Fn(&SystemParams<T>, &DerivedCoeffs<T>) -> Result<Component<T>>,
{
    let (c, _) = guarded(
        p,
        near_pole(dens),
        field,
        |q| eval(q, &DerivedCoeffs::from_params(q)),
        Component::average,
    )?;
    Ok(c)
}

/// `x1`: direct downlink to the near user against the relay's first slot.
pub fn esr_x1_lb<T: Real>(p: &SystemParams<T>, c: &DerivedCoeffs<T>) -> Result<Component<T>> {
    let one = T::one();
    let ab = p.a_s_bar();
    component_guarded(p, &[one - c.omega1, c.omega1 - ab], ParamField::LambdaRuf, |p, c| {
        let (a, ab, w1) = (p.a_s, p.a_s_bar(), c.omega1);
        let s = p.rho_s() * p.lambda_sr;
        let legit = phi1(a * p.rho_s() * p.lambda_sun)?;
        let eve = phi2(s, ab * s)? / (one - w1) - w1 * a * phi2(w1 * s, ab * s)? / ((one - w1) * (w1 - ab));
        Ok(Component::new(legit, eve))
    })
}

/// `x2`: relayed downlink to the far user.
pub fn esr_x2_lb<T: Real>(
    p: &SystemParams<T>,
    c: &DerivedCoeffs<T>,
    q: &QuadratureSettings,
) -> Result<Component<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    component_guarded(p, &[one - c.omega1, c.omega1 - p.a_s], ParamField::LambdaRuf, |p, c| {
        let (a, ab, w1) = (p.a_s, p.a_s_bar(), c.omega1);
        let s = p.rho_s() * p.lambda_sr;
        let b = c.g_sq * p.lambda_ruf / two;
        let legit = c.beta_s * phi4(c.beta_s, b, q)? - a * c.beta_s * phi4(a * c.beta_s, b, q)?;
        let eve = phi2(s, a * s)? / (one - w1) - w1 * ab * phi2(w1 * s, a * s)? / ((one - w1) * (w1 - a));
        Ok(Component::new(legit, eve))
    })
}

/// `x3`: near-user uplink received by the base station.
pub fn esr_x3_lb<T: Real>(p: &SystemParams<T>, c: &DerivedCoeffs<T>) -> Result<Component<T>> {
    let one = T::one();
    component_guarded(
        p,
        &[c.omega2 - one, c.omega2 - p.a1_t2_bar()],
        ParamField::LambdaRun,
        |p, c| {
            let (a1b, w2, ru) = (p.a1_t2_bar(), c.omega2, p.rho_u);
            let legit = phi1(p.a1_t2 * ru * p.lambda_sun)?;
            let eve = a1b * phi2(a1b * ru * p.lambda_run, ru * p.lambda_ruf)? / (w2 - a1b)
                - phi2(ru * p.lambda_run, ru * p.lambda_ruf)? / (w2 - one);
            Ok(Component::new(legit, eve))
        },
    )
}

/// `x4`: far-user uplink relayed to the base station.
pub fn esr_x4_lb<T: Real>(
    p: &SystemParams<T>,
    c: &DerivedCoeffs<T>,
    q: &QuadratureSettings,
) -> Result<Component<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    component_guarded(p, &[c.omega2 - one], ParamField::LambdaRun, |p, c| {
        let (w2, ru) = (c.omega2, p.rho_u);
        let legit = c.beta_u * phi4(c.beta_u, c.g_sq * p.lambda_sr / two, q)?;
        let eve = w2 * phi2(ru * p.lambda_ruf, ru * p.lambda_run)? / (w2 - one);
        Ok(Component::new(legit, eve))
    })
}

/// `x5` bound and its exponent `Φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct X5Bound<T> {
    pub phi: T,
    /// `ln(1 + e^Φ)`.
    pub esr: T,
}

/// `x5`: relay-forwarded downlink to the base station, never wiretapped.
pub fn esr_x5_lb<T: Real>(
    p: &SystemParams<T>,
    c: &DerivedCoeffs<T>,
    q: &QuadratureSettings,
) -> Result<X5Bound<T>> {
    let phi = (c.a1_t3_bar() * p.rho_u * p.lambda_sun).ln() - mean_ln1p_y(c.beta_u, q)? - T::euler_gamma();
    Ok(X5Bound {
        phi,
        esr: softplus(phi),
    })
}

/// `ln(1 + e^x)` without overflow.
fn softplus<T: Real>(x: T) -> T {
    if x > T::lit(30.0) {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Every closed-form component of the lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticBreakdown<T> {
    pub per_signal_legit: BTreeMap<Signal, T>,
    pub per_signal_eve: BTreeMap<Signal, T>,
    pub per_signal_esr_lb: BTreeMap<Signal, T>,
    pub essr_lb: T,
    pub phi_x5: T,
    pub flags: Vec<Flag>,
}

impl<T: Real> AnalyticBreakdown<T> {
    pub fn esr(&self, s: Signal) -> T {
        self.per_signal_esr_lb[&s]
    }
}

/// Lower bound of the sum rate with default quadrature settings.
pub fn essr_lb<T: Real>(p: &SystemParams<T>) -> Result<AnalyticBreakdown<T>> {
    essr_lb_with(p, &QuadratureSettings::default())
}

pub fn essr_lb_with<T: Real>(p: &SystemParams<T>, q: &QuadratureSettings) -> Result<AnalyticBreakdown<T>> {
    q.check()?;
    let c = p.derive()?;
    let parts = [
        (Signal::X1, esr_x1_lb(p, &c)?),
        (Signal::X2, esr_x2_lb(p, &c, q)?),
        (Signal::X3, esr_x3_lb(p, &c)?),
        (Signal::X4, esr_x4_lb(p, &c, q)?),
    ];
    let x5 = esr_x5_lb(p, &c, q)?;

    let mut out = AnalyticBreakdown {
        per_signal_legit: BTreeMap::new(),
        per_signal_eve: BTreeMap::new(),
        per_signal_esr_lb: BTreeMap::new(),
        essr_lb: T::zero(),
        phi_x5: x5.phi,
        flags: Vec::new(),
    };
    for (s, comp) in parts {
        out.per_signal_legit.insert(s, comp.legit);
        out.per_signal_eve.insert(s, comp.eve);
        out.per_signal_esr_lb.insert(s, comp.esr);
        if comp.pole_perturbed {
            out.flags.push(Flag::PolePerturbed(s));
        }
    }
    out.per_signal_legit.insert(Signal::X5, x5.esr);
    out.per_signal_esr_lb.insert(Signal::X5, x5.esr);
    let sum = out.per_signal_esr_lb.values().fold(T::zero(), |acc, &v| acc + v);
    out.essr_lb = sum / T::lit(3.0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(db: f64) -> SystemParams<f64> {
        SystemParams::reference_db(db)
    }

    #[test]
    fn breakdown_is_clamped_sum() {
        let b = essr_lb(&p(20.0)).unwrap();
        for s in Signal::WIRETAPPED {
            let want = (b.per_signal_legit[&s] - b.per_signal_eve[&s]).max(0.0);
            assert_eq!(b.esr(s), want);
        }
        let sum: f64 = b.per_signal_esr_lb.values().sum();
        assert_relative_eq!(b.essr_lb, sum / 3.0, max_relative = 1e-15);
        assert!(b.flags.is_empty());
    }

    #[test]
    fn x5_softplus_of_phi() {
        let b = essr_lb(&p(10.0)).unwrap();
        assert_relative_eq!(b.esr(Signal::X5), b.phi_x5.exp().ln_1p(), max_relative = 1e-14);
        assert_relative_eq!(softplus(800.0_f64), 800.0);
    }

    #[test]
    fn pole_is_perturbed_and_flagged() {
        // ω1 = λ_RUF / (ν λ_SR) = 1.
        let mut q = p(20.0);
        q.lambda_ruf = 1.4;
        let b = essr_lb(&q).unwrap();
        assert!(b.flags.contains(&Flag::PolePerturbed(Signal::X1)));
        assert!(b.flags.contains(&Flag::PolePerturbed(Signal::X2)));
        assert!(b.esr(Signal::X1).is_finite());

        let mut near = q;
        near.lambda_ruf = 1.4 * (1.0 + 1e-3);
        let bn = essr_lb(&near).unwrap();
        assert!(bn.flags.is_empty());
        assert_relative_eq!(b.esr(Signal::X1), bn.esr(Signal::X1), max_relative = 1e-3);
    }

    #[test]
    fn flag_names() {
        assert_eq!(Flag::PolePerturbed(Signal::X3).to_string(), "pole_x3");
        assert_eq!(Flag::LowSnr(Signal::X4).to_string(), "low_snr_x4");
    }

    #[test]
    fn single_precision_breakdown() {
        let b32 = essr_lb(&SystemParams::<f32>::reference_db(20.0)).unwrap();
        let b64 = essr_lb(&p(20.0)).unwrap();
        assert!((f64::from(b32.essr_lb) - b64.essr_lb).abs() < 1e-4 * b64.essr_lb);
    }
}
