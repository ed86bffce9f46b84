//! Numerical health report: the φ5 deviation table and a few reference
//! constants.

use std::fmt::Write as _;

use nomacdrt::specfun::{bessel_k1, exp_integral_ei, phi5, phi5_integral, QuadratureSettings};
use serde::Serialize;

use crate::error::Result;

pub const A_GRID: [f64; 7] = [1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6];
pub const B_GRID: [f64; 3] = [0.1, 1.0, 10.0];

const EI_M1: f64 = -0.219_383_934_395_520_3;
const K1_1: f64 = 0.601_907_230_197_234_6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Phi5Entry {
    pub a: f64,
    pub b: f64,
    pub closed_form: f64,
    pub integral: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub phi5: Vec<Phi5Entry>,
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>10} {:>6} {:>16} {:>16} {:>12} {:>12}",
            "a", "b", "closed_form", "integral", "abs_dev", "rel_dev"
        );
        for e in &self.phi5 {
            let _ = writeln!(
                s,
                "{:>10.0e} {:>6} {:>16.9e} {:>16.9e} {:>12.3e} {:>12.3e}",
                e.a, e.b, e.closed_form, e.integral, e.abs_dev, e.rel_dev
            );
        }
        s.push('\n');
        for c in &self.checks {
            let _ = writeln!(s, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        s
    }
}

fn sci(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", ")
}

fn decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

pub fn run() -> Result<SelftestReport> {
    let q = QuadratureSettings::default();
    let mut phi5_rows = Vec::new();
    for &b in &B_GRID {
        for &a in &A_GRID {
            let closed_form = phi5(a, b)?;
            let integral = phi5_integral(a, b, &q)?;
            let abs_dev = (closed_form - integral).abs();
            phi5_rows.push(Phi5Entry {
                a,
                b,
                closed_form,
                integral,
                abs_dev,
                rel_dev: abs_dev / integral.abs(),
            });
        }
    }

    let mut checks = Vec::new();
    for &b in &B_GRID {
        let tail: Vec<&Phi5Entry> = phi5_rows.iter().filter(|e| e.b == b && e.a >= 1e3).collect();
        let cf: Vec<f64> = tail.iter().map(|e| e.closed_form.abs()).collect();
        let int: Vec<f64> = tail.iter().map(|e| e.integral.abs()).collect();
        checks.push(Check {
            name: format!("phi5_decay_b{b}"),
            pass: decreasing(&cf) && decreasing(&int),
            detail: format!("|phi5| for a >= 1e3: closed [{}], integral [{}]", sci(&cf), sci(&int)),
        });
    }

    let ei = exp_integral_ei(-1.0_f64)?;
    checks.push(Check {
        name: "ei_minus_one".into(),
        pass: (ei - EI_M1).abs() <= 1e-9,
        detail: format!("{ei:.12} vs {EI_M1:.12}"),
    });
    let k1 = bessel_k1(1.0_f64)?;
    checks.push(Check {
        name: "k1_one".into(),
        pass: (k1 - K1_1).abs() <= 1e-9,
        detail: format!("{k1:.12} vs {K1_1:.12}"),
    });

    Ok(SelftestReport {
        phi5: phi5_rows,
        checks,
    })
}
