//! Per-draw SINRs and instantaneous secrecy rates.
//!
//! Legitimate SINRs are indexed `x1..x5`, relay (eavesdropper) SINRs `x1..x4`.
//! The signal `x5` is forwarded by the relay itself and has no eavesdropper
//! term.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::ChannelDraw;
use crate::error::{Error, Result};
use crate::params::{DerivedCoeffs, SystemParams};
use crate::scalar::Real;

/// Signal identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signal {
    X1,
    X2,
    X3,
    X4,
    X5,
}

impl Signal {
    pub const ALL: [Signal; 5] = [Signal::X1, Signal::X2, Signal::X3, Signal::X4, Signal::X5];

    /// Signals exposed to the relay.
    pub const WIRETAPPED: [Signal; 4] = [Signal::X1, Signal::X2, Signal::X3, Signal::X4];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x1", "x2", "x3", "x4", "x5"][self.index()]
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Signal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Signal::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown signal `{s}`")))
    }
}

/// Transmission scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Three slots, network coding at the relay and jamming from both users.
    Proposed,
    /// Four slots, no network coding.
    Ben1,
    /// Three slots, network coding, no jamming.
    Ben2,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Proposed, Scheme::Ben1, Scheme::Ben2];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Proposed => "proposed",
            Scheme::Ben1 => "ben1",
            Scheme::Ben2 => "ben2",
        }
    }

    pub fn slots(self) -> u32 {
        match self {
            Scheme::Ben1 => 4,
            Scheme::Proposed | Scheme::Ben2 => 3,
        }
    }

    /// Per-slot normalization of the sum rate.
    pub fn prefactor<T: Real>(self) -> T {
        T::one() / T::lit(f64::from(self.slots()))
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scheme `{s}`")))
    }
}

/// Instantaneous SINRs of one draw under one scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SinrProfile<T> {
    /// Legitimate SINRs of `x1..x5`.
    pub legit: [T; 5],
    /// Relay SINRs of `x1..x4`.
    pub eve: [T; 4],
    /// Cancellation mismatch `ω0` of `x3` at the far user; zero unless the
    /// exact form is requested.
    pub omega0_residual: T,
    pub slots: u32,
}

impl<T: Real> SinrProfile<T> {
    pub fn legit(&self, s: Signal) -> T {
        self.legit[s.index()]
    }

    /// Relay SINR, `None` for `x5`.
    pub fn eve(&self, s: Signal) -> Option<T> {
        self.eve.get(s.index()).copied()
    }

    /// Clamped secrecy rate of `s` in nats (`x5`: plain rate).
    pub fn secrecy(&self, s: Signal) -> T {
        secrecy_rate(self.legit(s), self.eve(s).unwrap_or(T::zero()))
    }
}

/// `max(ln(1 + γ) - ln(1 + γ_R), 0)`, in nats.
#[inline]
pub fn secrecy_rate<T: Real>(gamma_legit: T, gamma_eve: T) -> T {
    (gamma_legit.ln_1p() - gamma_eve.ln_1p()).max(T::zero())
}

/// Proposed-scheme SINRs.
pub fn sinr_proposed<T: Real>(
    d: &ChannelDraw<T>,
    p: &SystemParams<T>,
    c: &DerivedCoeffs<T>,
    exact_omega0: bool,
) -> SinrProfile<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let (rs, ru) = (p.rho_s(), p.rho_u);
    let (a, ab) = (p.a_s, p.a_s_bar());
    let (a1, a1b) = (p.a1_t2, p.a1_t2_bar());
    let g2 = c.g_sq;

    let omega0 = if exact_omega0 {
        (g2.sqrt() * d.g_ruf.sqrt() * d.g_unr.sqrt() * (a1 * ru).sqrt()
            - d.g_unuf.sqrt() * (c.a1_t3 * ru).sqrt())
        .powi(2)
    } else {
        T::zero()
    };
    let jam_r = ru * d.g_ruf;

    let legit = [
        a * rs * d.g_sun,
        g2 * ab * rs * d.g_sr * d.g_ruf / (g2 * d.g_ruf * (a * rs * d.g_sr + two) + omega0 + one),
        a1 * ru * d.g_sun,
        g2 * ru * d.g_sr * d.g_ruf / (two * g2 * d.g_sr + one),
        c.a1_t3_bar() * ru * d.g_sun / (g2 * d.g_sr * (ru * d.g_ruf + two) + one),
    ];
    let eve = [
        a * rs * d.g_sr / (ab * rs * d.g_sr + jam_r + one),
        ab * rs * d.g_sr / (a * rs * d.g_sr + jam_r + one),
        ru * a1 * d.g_unr / (ru * a1b * d.g_unr + jam_r + one),
        ru * d.g_ruf / (ru * d.g_unr + one),
    ];
    SinrProfile {
        legit,
        eve,
        omega0_residual: omega0,
        slots: Scheme::Proposed.slots(),
    }
}

/// Fixed relay gains of the four-slot benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ben1Coeffs<T> {
    /// Gain applied to the downlink reception.
    pub g1_sq: T,
    /// Gain applied to the uplink reception.
    pub g2_sq: T,
    /// When false, both users' jamming powers are zero at the relay.
    pub jamming: bool,
}

impl<T: Real> Ben1Coeffs<T> {
    pub fn new(p: &SystemParams<T>) -> Self {
        let one = T::one();
        Ben1Coeffs {
            g1_sq: p.rho_u / (p.rho_s() * p.lambda_sr + p.rho_u * p.lambda_ruf + one),
            g2_sq: p.rho_u / (p.rho_u * p.lambda_run + p.rho_u * p.lambda_ruf + one),
            jamming: true,
        }
    }
}

/// Fixed relay gain of the three-slot benchmark without jamming.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ben2Coeffs<T> {
    pub gb_sq: T,
}

impl<T: Real> Ben2Coeffs<T> {
    pub fn new(p: &SystemParams<T>) -> Self {
        let two = T::lit(2.0);
        Ben2Coeffs {
            gb_sq: p.rho_u
                / (p.rho_s() * p.lambda_sr + p.rho_u * p.lambda_run + p.rho_u * p.lambda_ruf + two),
        }
    }
}

/// Four-slot benchmark SINRs.
pub fn sinr_ben1<T: Real>(d: &ChannelDraw<T>, p: &SystemParams<T>, c: &Ben1Coeffs<T>) -> SinrProfile<T> {
    let one = T::one();
    let (rs, ru) = (p.rho_s(), p.rho_u);
    let (a, ab) = (p.a_s, p.a_s_bar());
    let (a1, a1b) = (p.a1_t2, p.a1_t2_bar());
    let (g1, g2) = (c.g1_sq, c.g2_sq);

    let (jam_r, jam_n) = if c.jamming {
        (ru * d.g_ruf, ru * a1b * d.g_unr)
    } else {
        (T::zero(), T::zero())
    };
    let legit = [
        a * rs * d.g_sun,
        g1 * ab * rs * d.g_sr * d.g_ruf / (g1 * d.g_ruf * (a * rs * d.g_sr + one) + one),
        a1 * ru * d.g_sun,
        g2 * ru * d.g_sr * d.g_ruf / (g2 * d.g_sr + one),
        ru * d.g_sun / (g2 * d.g_sr * (ru * d.g_ruf + one) + one),
    ];
    let eve = [
        a * rs * d.g_sr / (ab * rs * d.g_sr + jam_r + one),
        ab * rs * d.g_sr / (a * rs * d.g_sr + jam_r + one),
        ru * a1 * d.g_unr / (jam_n + ru * d.g_ruf + one),
        ru * d.g_ruf / (ru * a1 * d.g_unr + jam_n + one),
    ];
    SinrProfile {
        legit,
        eve,
        omega0_residual: T::zero(),
        slots: Scheme::Ben1.slots(),
    }
}

/// Three-slot no-jamming benchmark SINRs.
pub fn sinr_ben2<T: Real>(d: &ChannelDraw<T>, p: &SystemParams<T>, c: &Ben2Coeffs<T>) -> SinrProfile<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let (rs, ru) = (p.rho_s(), p.rho_u);
    let (a, ab) = (p.a_s, p.a_s_bar());
    let gb = c.gb_sq;

    let legit = [
        a * rs * d.g_sun,
        gb * ab * rs * d.g_sr * d.g_ruf
            / (gb * d.g_ruf * (a * rs * d.g_sr + ru * d.g_unr + two) + one),
        ru * d.g_sun,
        gb * ru * d.g_sr * d.g_ruf / (two * gb * d.g_sr + one),
        ru * d.g_sun / (gb * d.g_sr * (ru * d.g_ruf + two) + one),
    ];
    let eve = [
        a * rs * d.g_sr / (ab * rs * d.g_sr + one),
        ab * rs * d.g_sr / (a * rs * d.g_sr + one),
        ru * d.g_unr / (ru * d.g_ruf + one),
        ru * d.g_ruf / (ru * d.g_unr + one),
    ];
    SinrProfile {
        legit,
        eve,
        omega0_residual: T::zero(),
        slots: Scheme::Ben2.slots(),
    }
}

/// A scheme with its per-scenario constants resolved, ready for repeated
/// evaluation.
#[derive(Debug, Clone, Copy)]
pub enum SinrModel<T> {
    Proposed {
        params: SystemParams<T>,
        coeffs: DerivedCoeffs<T>,
        exact_omega0: bool,
    },
    Ben1 {
        params: SystemParams<T>,
        coeffs: Ben1Coeffs<T>,
    },
    Ben2 {
        params: SystemParams<T>,
        coeffs: Ben2Coeffs<T>,
    },
}

impl<T: Real> SinrModel<T> {
    /// Validates `params` and precomputes the scheme's gains.
    pub fn new(scheme: Scheme, params: &SystemParams<T>, exact_omega0: bool) -> Result<Self> {
        let coeffs = params.derive()?;
        let params = *params;
        Ok(match scheme {
            Scheme::Proposed => SinrModel::Proposed {
                params,
                coeffs,
                exact_omega0,
            },
            Scheme::Ben1 => SinrModel::Ben1 {
                params,
                coeffs: Ben1Coeffs::new(&params),
            },
            Scheme::Ben2 => SinrModel::Ben2 {
                params,
                coeffs: Ben2Coeffs::new(&params),
            },
        })
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            SinrModel::Proposed { .. } => Scheme::Proposed,
            SinrModel::Ben1 { .. } => Scheme::Ben1,
            SinrModel::Ben2 { .. } => Scheme::Ben2,
        }
    }

    pub fn params(&self) -> &SystemParams<T> {
        match self {
            SinrModel::Proposed { params, .. }
            | SinrModel::Ben1 { params, .. }
            | SinrModel::Ben2 { params, .. } => params,
        }
    }

    #[inline]
    pub fn profile(&self, d: &ChannelDraw<T>) -> SinrProfile<T> {
        match self {
            SinrModel::Proposed {
                params,
                coeffs,
                exact_omega0,
            } => sinr_proposed(d, params, coeffs, *exact_omega0),
            SinrModel::Ben1 { params, coeffs } => sinr_ben1(d, params, coeffs),
            SinrModel::Ben2 { params, coeffs } => sinr_ben2(d, params, coeffs),
        }
    }
}
