//! Scenario inputs and the constant coefficients derived from them.
//!
//! Noise power is normalized to one, so every power appears as an SNR. One
//! average gain is stored per link; reciprocal links share it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::scalar::Real;

/// Static scenario inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams<T> {
    /// Average gain of the base station to near-user link.
    pub lambda_sun: T,
    /// Base station to relay.
    pub lambda_sr: T,
    /// Relay to near user.
    pub lambda_run: T,
    /// Relay to far user.
    pub lambda_ruf: T,
    /// Near user to far user.
    pub lambda_unuf: T,
    /// Downlink power share of `x1`; `x2` receives `1 - a_s`.
    pub a_s: T,
    /// Second-slot power share of `x3`; the jamming signal receives the rest.
    pub a1_t2: T,
    /// Linear user/relay transmit SNR.
    pub rho_u: T,
    /// Ratio of base-station SNR to user SNR.
    pub nu: T,
}

/// Names of the scalar fields, used by config files, CLI overrides and sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamField {
    LambdaSun,
    LambdaSr,
    LambdaRun,
    LambdaRuf,
    LambdaUnuf,
    As,
    A1T2,
    RhoU,
    Nu,
}

impl ParamField {
    pub const ALL: [ParamField; 9] = [
        ParamField::LambdaSun,
        ParamField::LambdaSr,
        ParamField::LambdaRun,
        ParamField::LambdaRuf,
        ParamField::LambdaUnuf,
        ParamField::As,
        ParamField::A1T2,
        ParamField::RhoU,
        ParamField::Nu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParamField::LambdaSun => "lambda_sun",
            ParamField::LambdaSr => "lambda_sr",
            ParamField::LambdaRun => "lambda_run",
            ParamField::LambdaRuf => "lambda_ruf",
            ParamField::LambdaUnuf => "lambda_unuf",
            ParamField::As => "a_s",
            ParamField::A1T2 => "a1_t2",
            ParamField::RhoU => "rho_u",
            ParamField::Nu => "nu",
        }
    }
}

impl std::str::FromStr for ParamField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ParamField::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter `{s}`")))
    }
}

/// Converts decibels to a linear power ratio.
pub fn db_to_linear<T: Real>(db: T) -> T {
    T::lit(10.0).powf(db / T::lit(10.0))
}

pub fn linear_to_db<T: Real>(x: T) -> T {
    T::lit(10.0) * x.log10()
}

impl<T: Real> SystemParams<T> {
    /// The reference scenario used throughout the evaluation figures, at the
    /// given linear user SNR.
    pub fn reference(rho_u: T) -> Self {
        SystemParams {
            lambda_sun: T::one(),
            lambda_sr: T::lit(0.7),
            lambda_run: T::lit(0.8),
            lambda_ruf: T::one(),
            lambda_unuf: T::lit(0.8),
            a_s: T::lit(0.2),
            a1_t2: T::lit(0.5),
            rho_u,
            nu: T::lit(2.0),
        }
    }

    pub fn reference_db(rho_db: T) -> Self {
        Self::reference(db_to_linear(rho_db))
    }

    /// Base-station SNR, `nu * rho_u`.
    #[inline]
    pub fn rho_s(&self) -> T {
        self.nu * self.rho_u
    }

    #[inline]
    pub fn a_s_bar(&self) -> T {
        T::one() - self.a_s
    }

    #[inline]
    pub fn a1_t2_bar(&self) -> T {
        T::one() - self.a1_t2
    }

    pub fn rho_db(&self) -> T {
        linear_to_db(self.rho_u)
    }

    pub fn with_rho_db(mut self, rho_db: T) -> Self {
        self.rho_u = db_to_linear(rho_db);
        self
    }

    pub fn get(&self, field: ParamField) -> T {
        match field {
            ParamField::LambdaSun => self.lambda_sun,
            ParamField::LambdaSr => self.lambda_sr,
            ParamField::LambdaRun => self.lambda_run,
            ParamField::LambdaRuf => self.lambda_ruf,
            ParamField::LambdaUnuf => self.lambda_unuf,
            ParamField::As => self.a_s,
            ParamField::A1T2 => self.a1_t2,
            ParamField::RhoU => self.rho_u,
            ParamField::Nu => self.nu,
        }
    }

    pub fn set(&mut self, field: ParamField, value: T) {
        let slot = match field {
            ParamField::LambdaSun => &mut self.lambda_sun,
            ParamField::LambdaSr => &mut self.lambda_sr,
            ParamField::LambdaRun => &mut self.lambda_run,
            ParamField::LambdaRuf => &mut self.lambda_ruf,
            ParamField::LambdaUnuf => &mut self.lambda_unuf,
            ParamField::As => &mut self.a_s,
            ParamField::A1T2 => &mut self.a1_t2,
            ParamField::RhoU => &mut self.rho_u,
            ParamField::Nu => &mut self.nu,
        };
        *slot = value;
    }

    /// Checks every scenario invariant, reporting all violations at once.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let positive = [
            (self.lambda_sun, "lambda_sun"),
            (self.lambda_sr, "lambda_sr"),
            (self.lambda_run, "lambda_run"),
            (self.lambda_ruf, "lambda_ruf"),
            (self.lambda_unuf, "lambda_unuf"),
            (self.rho_u, "rho_u"),
            (self.nu, "nu"),
        ];
        for (v, field) in positive {
            if !(v > T::zero() && v.is_finite()) {
                out.push(Violation {
                    field,
                    rule: "must be strictly positive and finite",
                });
            }
        }
        if !(self.a_s > T::zero() && self.a_s < T::lit(0.5)) {
            out.push(Violation {
                field: "a_s",
                rule: "must lie in (0, 0.5) so that x2 carries the larger share",
            });
        }
        if !(self.a1_t2 > T::zero() && self.a1_t2 < T::one()) {
            out.push(Violation {
                field: "a1_t2",
                rule: "must lie in (0, 1)",
            });
        }
        if !(self.lambda_sr < self.lambda_sun) {
            out.push(Violation {
                field: "lambda_sr/lambda_sun",
                rule: "lambda_sr must be below lambda_sun (near user decodes the far-user signal first)",
            });
        }
        if !(self.lambda_run <= self.lambda_unuf) {
            out.push(Violation {
                field: "lambda_run/lambda_unuf",
                rule: "lambda_run must not exceed lambda_unuf (keeps the slot-3 coefficient below one)",
            });
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }

    /// Derives the fixed relay gain and the shared coefficients.
    pub fn derive(&self) -> Result<DerivedCoeffs<T>> {
        self.validate()?;
        Ok(DerivedCoeffs::from_params(self))
    }
}

/// Constants computed once per scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedCoeffs<T> {
    /// Fixed amplify-and-forward gain `G^2`.
    pub g_sq: T,
    /// Slot-3 share of `x3` at the near user, fixed to its mean-form value.
    pub a1_t3: T,
    pub omega1: T,
    pub omega2: T,
    pub beta_s: T,
    pub beta_u: T,
}

impl<T: Real> DerivedCoeffs<T> {
    /// Computes the coefficients without validating `p`.
    pub fn from_params(p: &SystemParams<T>) -> Self {
        let two = T::lit(2.0);
        let four = T::lit(4.0);
        let rho_s = p.rho_s();
        let g_sq = p.rho_u
            / (rho_s * p.lambda_sr + two * p.rho_u * p.lambda_ruf + p.rho_u * p.lambda_run + two);
        let a1_t3 = g_sq * p.a1_t2 * p.lambda_run * p.lambda_ruf / p.lambda_unuf;
        let beta_s = g_sq * rho_s * p.lambda_sr * p.lambda_ruf / four;
        DerivedCoeffs {
            g_sq,
            a1_t3,
            omega1: p.rho_u * p.lambda_ruf / (rho_s * p.lambda_sr),
            omega2: p.lambda_ruf / p.lambda_run,
            beta_s,
            beta_u: beta_s / p.nu,
        }
    }

    #[inline]
    pub fn a1_t3_bar(&self) -> T {
        T::one() - self.a1_t3
    }
}
