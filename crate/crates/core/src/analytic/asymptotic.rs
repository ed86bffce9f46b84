//! High-SNR behavior with `ρ_S = ν ρ_U`, `ρ_U = ρ → ∞`.

use serde::{Deserialize, Serialize};

use super::{guarded, near_pole, Flag};
use crate::error::{Error, Result};
use crate::params::{ParamField, SystemParams};
use crate::scalar::Real;
use crate::sinr::Signal;

/// Which expansion of the `x1`, `x3` and `x4` asymptotes to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticForm {
    /// Leading logarithm only.
    #[default]
    Limit,
    /// Leading logarithm plus the constant offsets (and, for `x4`, the
    /// `e^{2/(ρ λ_RUF)}` factor).
    PreLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Asymptote<T> {
    pub value: T,
    pub flags: Vec<Flag>,
}

fn log_term<T: Real>(s: Signal, arg: T, flags: &mut Vec<Flag>) -> T {
    if arg <= T::one() {
        flags.push(Flag::LowSnr(s));
    }
    arg.ln()
}

/// Offset of the `x1`/`x3` pre-limit form:
/// `ω a ln ω / ((1 - ω)(ω - ā)) - ā ln ā / (ω - ā) - C`.
fn offset<T: Real>(w: T, a: T) -> T {
    let ab = T::one() - a;
    w * a * w.ln() / ((T::one() - w) * (w - ab)) - ab * ab.ln() / (w - ab) - T::euler_gamma()
}

/// Asymptotic secrecy rate of one signal. `x5` has none.
pub fn esr_asymptotic<T: Real>(s: Signal, p: &SystemParams<T>, form: AsymptoticForm) -> Result<Asymptote<T>> {
    p.validate()?;
    let one = T::one();
    let two = T::lit(2.0);
    let rho = p.rho_u;
    let mut flags = Vec::new();
    let w1 = p.lambda_ruf / (p.nu * p.lambda_sr);
    let w2 = p.lambda_ruf / p.lambda_run;

    let (value, perturbed) = match s {
        Signal::X1 => {
            let lead = log_term(s, p.a_s * p.nu * rho * p.lambda_sun, &mut flags);
            match form {
                AsymptoticForm::Limit => (lead, false),
                AsymptoticForm::PreLimit => {
                    let (off, pert) = guarded(
                        p,
                        near_pole(&[one - w1, w1 - p.a_s_bar()]),
                        ParamField::LambdaRuf,
                        |q| Ok(offset(q.lambda_ruf / (q.nu * q.lambda_sr), q.a_s)),
                        |a, b| (a + b) / two,
                    )?;
                    (lead + off, pert)
                }
            }
        }
        Signal::X3 => {
            let lead = log_term(s, p.a1_t2 * rho * p.lambda_sun, &mut flags);
            match form {
                AsymptoticForm::Limit => (lead, false),
                AsymptoticForm::PreLimit => {
                    let (off, pert) = guarded(
                        p,
                        near_pole(&[one - w2, w2 - p.a1_t2_bar()]),
                        ParamField::LambdaRun,
                        |q| Ok(offset(q.lambda_ruf / q.lambda_run, q.a1_t2)),
                        |a, b| (a + b) / two,
                    )?;
                    (lead + off, pert)
                }
            }
        }
        Signal::X4 => {
            let lead = log_term(s, rho * p.lambda_ruf / two, &mut flags);
            match form {
                AsymptoticForm::Limit => (lead, false),
                AsymptoticForm::PreLimit => {
                    let (eve, pert) = guarded(
                        p,
                        near_pole(&[w2 - one]),
                        ParamField::LambdaRun,
                        |q| {
                            let w = q.lambda_ruf / q.lambda_run;
                            Ok(w * w.ln() / (w - one))
                        },
                        |a, b| (a + b) / two,
                    )?;
                    let legit = (two / (rho * p.lambda_ruf)).exp() * (lead - T::euler_gamma());
                    (legit - eve, pert)
                }
            }
        }
        Signal::X2 => guarded(
            p,
            near_pole(&[w1 - p.a_s, one - w1]),
            ParamField::LambdaRuf,
            |q| {
                let w = q.lambda_ruf / (q.nu * q.lambda_sr);
                let (a, ab) = (q.a_s, q.a_s_bar());
                Ok(w / (w - a) * (a.recip().ln() + ab * w.ln() / (one - w)))
            },
            |a, b| (a + b) / two,
        )?,
        Signal::X5 => {
            return Err(Error::InvalidArgument("x5 has no high-SNR asymptote".into()));
        }
    };
    if perturbed {
        flags.push(Flag::PolePerturbed(s));
    }
    Ok(Asymptote { value, flags })
}

/// Sum-rate asymptote `(x1 + x3 + x4) / 3`; without the slot normalization
/// when `paper_literal` is set.
pub fn essr_asymptotic<T: Real>(
    p: &SystemParams<T>,
    form: AsymptoticForm,
    paper_literal: bool,
) -> Result<Asymptote<T>> {
    let mut value = T::zero();
    let mut flags = Vec::new();
    for s in [Signal::X1, Signal::X3, Signal::X4] {
        let a = esr_asymptotic(s, p, form)?;
        value = value + a.value;
        flags.extend(a.flags);
    }
    if !paper_literal {
        value = value / T::lit(3.0);
    }
    Ok(Asymptote { value, flags })
}
