//! Parameter grids and the sweep engine.

use std::fmt;
use std::str::FromStr;

use nomacdrt::{
    analytic::AsymptoticForm, essr_asymptotic, essr_lb, esr_asymptotic, montecarlo::simulate, EsrReport, McConfig,
    Method, ParamField, Params, Scheme, Signal,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};

/// Variables a sweep may step through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVar {
    RhoDb,
    As,
    A1T2,
    LambdaRun,
    LambdaRuf,
    Nu,
}

impl SweepVar {
    pub const ALL: [SweepVar; 6] = [
        SweepVar::RhoDb,
        SweepVar::As,
        SweepVar::A1T2,
        SweepVar::LambdaRun,
        SweepVar::LambdaRuf,
        SweepVar::Nu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepVar::RhoDb => "rho_db",
            SweepVar::As => "a_s",
            SweepVar::A1T2 => "a1_t2",
            SweepVar::LambdaRun => "lambda_run",
            SweepVar::LambdaRuf => "lambda_ruf",
            SweepVar::Nu => "nu",
        }
    }

    /// Grid used when only the variable is named.
    pub fn default_grid(self) -> Grid {
        let (start, stop, steps) = match self {
            SweepVar::RhoDb => (0.0, 30.0, 7),
            SweepVar::As => (0.05, 0.45, 9),
            SweepVar::A1T2 => (0.05, 0.95, 19),
            SweepVar::LambdaRun => (0.2, 1.0, 5),
            SweepVar::LambdaRuf => (0.2, 1.0, 5),
            SweepVar::Nu => (1.0, 5.0, 5),
        };
        Grid { start, stop, steps }
    }

    pub fn get(self, p: &Params) -> f64 {
        match self {
            SweepVar::RhoDb => p.rho_db(),
            SweepVar::As => p.a_s,
            SweepVar::A1T2 => p.a1_t2,
            SweepVar::LambdaRun => p.lambda_run,
            SweepVar::LambdaRuf => p.lambda_ruf,
            SweepVar::Nu => p.nu,
        }
    }

    pub fn apply(self, p: &Params, value: f64) -> Params {
        match self {
            SweepVar::RhoDb => p.with_rho_db(value),
            SweepVar::As => with(p, ParamField::As, value),
            SweepVar::A1T2 => with(p, ParamField::A1T2, value),
            SweepVar::LambdaRun => with(p, ParamField::LambdaRun, value),
            SweepVar::LambdaRuf => with(p, ParamField::LambdaRuf, value),
            SweepVar::Nu => with(p, ParamField::Nu, value),
        }
    }
}

fn with(p: &Params, f: ParamField, v: f64) -> Params {
    let mut q = *p;
    q.set(f, v);
    q
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVar {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        SweepVar::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown sweep variable `{s}`")))
    }
}

/// Inclusive, evenly spaced grid of `steps` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn single(v: f64) -> Self {
        Grid {
            start: v,
            stop: v,
            steps: 1,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.stop } else { self.start + h * i as f64 })
            .collect()
    }
}

/// `VAR` or `VAR:START:STOP:STEPS`.
pub fn parse_sweep(s: &str) -> Result<(SweepVar, Grid)> {
    let parts: Vec<&str> = s.split(':').collect();
    let var: SweepVar = parts[0].trim().parse()?;
    match parts.len() {
        1 => Ok((var, var.default_grid())),
        4 => {
            let num = |t: &str| {
                t.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Usage(format!("sweep bound `{t}` is not a finite number")))
            };
            let steps = parts[3]
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("sweep steps `{}` is not a positive integer", parts[3])))?;
            Ok((
                var,
                Grid {
                    start: num(parts[1])?,
                    stop: num(parts[2])?,
                    steps,
                },
            ))
        }
        _ => Err(CliError::Usage(format!("sweep `{s}` must be VAR or VAR:START:STOP:STEPS"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub swept: SweepVar,
    pub grid: Grid,
    pub base: Params,
    pub schemes: Vec<Scheme>,
    pub methods: Vec<Method>,
    pub n_samples: u64,
    pub seed: u64,
    pub exact_omega0: bool,
    pub essr_asy_paper_literal: bool,
    pub asymptotic_form: AsymptoticForm,
}

impl SweepSpec {
    pub fn new(swept: SweepVar, grid: Grid, base: Params) -> Self {
        SweepSpec {
            swept,
            grid,
            base,
            schemes: vec![Scheme::Proposed],
            methods: vec![Method::SimExact, Method::AnalyticLb],
            n_samples: 1_000_000,
            seed: 1,
            exact_omega0: false,
            essr_asy_paper_literal: false,
            asymptotic_form: AsymptoticForm::Limit,
        }
    }

    /// Field-level problems; empty when the spec may run.
    pub fn problems(&self, min_points: usize) -> Vec<String> {
        let mut out = Vec::new();
        if self.grid.steps < min_points {
            out.push(format!("sweep: grid needs at least {min_points} points, got {}", self.grid.steps));
        }
        if self.schemes.is_empty() {
            out.push("schemes: at least one scheme is required".into());
        }
        if self.methods.is_empty() {
            out.push("methods: at least one method is required".into());
        }
        let closed_form = self.methods.iter().any(|m| !m.is_simulation());
        if closed_form && !self.schemes.contains(&Scheme::Proposed) {
            out.push("methods: analytic_lb and asymptotic are only defined for scheme proposed".into());
        }
        if self.n_samples == 0 && self.methods.iter().any(|m| m.is_simulation()) {
            out.push("n: sample count must be at least 1".into());
        }
        out
    }

    pub fn check(&self, min_points: usize) -> Result<()> {
        let p = self.problems(min_points);
        if p.is_empty() {
            Ok(())
        } else {
            Err(CliError::Usage(p.join("; ")))
        }
    }
}

/// One output line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub scheme: Scheme,
    pub method: Method,
    pub swept: &'static str,
    pub swept_value: f64,
    pub rho_db: f64,
    pub esr_x1: Option<f64>,
    pub esr_x2: Option<f64>,
    pub esr_x3: Option<f64>,
    pub esr_x4: Option<f64>,
    pub esr_x5: Option<f64>,
    pub essr: f64,
    pub stderr_essr: f64,
    pub flags: String,
}

/// Column names, in output order.
pub const COLUMNS: [&str; 13] = [
    "scheme",
    "method",
    "swept",
    "swept_value",
    "rho_db",
    "esr_x1",
    "esr_x2",
    "esr_x3",
    "esr_x4",
    "esr_x5",
    "essr",
    "stderr_essr",
    "flags",
];

impl ResultRow {
    fn blank(scheme: Scheme, method: Method, spec: &SweepSpec, value: f64, p: &Params) -> Self {
        ResultRow {
            scheme,
            method,
            swept: spec.swept.name(),
            swept_value: value,
            rho_db: p.rho_db(),
            esr_x1: None,
            esr_x2: None,
            esr_x3: None,
            esr_x4: None,
            esr_x5: None,
            essr: 0.0,
            stderr_essr: 0.0,
            flags: String::new(),
        }
    }

    pub fn esr(&self, s: Signal) -> Option<f64> {
        match s {
            Signal::X1 => self.esr_x1,
            Signal::X2 => self.esr_x2,
            Signal::X3 => self.esr_x3,
            Signal::X4 => self.esr_x4,
            Signal::X5 => self.esr_x5,
        }
    }

    fn set_esr(&mut self, s: Signal, v: f64) {
        let slot = match s {
            Signal::X1 => &mut self.esr_x1,
            Signal::X2 => &mut self.esr_x2,
            Signal::X3 => &mut self.esr_x3,
            Signal::X4 => &mut self.esr_x4,
            Signal::X5 => &mut self.esr_x5,
        };
        *slot = Some(v);
    }

    fn with_report(mut self, r: &EsrReport) -> Self {
        for s in Signal::ALL {
            self.set_esr(s, r.esr(s).value);
        }
        self.essr = r.essr.value;
        self.stderr_essr = r.essr.stderr;
        self
    }

    /// Rate columns rescaled by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        let s = |v: Option<f64>| v.map(|x| x * k);
        ResultRow {
            esr_x1: s(self.esr_x1),
            esr_x2: s(self.esr_x2),
            esr_x3: s(self.esr_x3),
            esr_x4: s(self.esr_x4),
            esr_x5: s(self.esr_x5),
            essr: self.essr * k,
            stderr_essr: self.stderr_essr * k,
            ..self.clone()
        }
    }
}

fn stream_index(s: Scheme) -> u64 {
    match s {
        Scheme::Proposed => 0,
        Scheme::Ben1 => 1,
        Scheme::Ben2 => 2,
    }
}

enum Task {
    Sim(Scheme, usize),
    Closed(usize),
}

fn join_flags<I: IntoIterator<Item = String>>(it: I) -> String {
    let mut v: Vec<String> = it.into_iter().collect();
    v.sort();
    v.dedup();
    v.join(";")
}

fn run_task(spec: &SweepSpec, points: &[(f64, Params)], task: &Task) -> Result<Vec<ResultRow>> {
    match *task {
        Task::Sim(scheme, i) => {
            let (value, p) = &points[i];
            let mut cfg = McConfig::new(spec.n_samples, spec.seed);
            cfg.stream_index = stream_index(scheme);
            cfg.exact_omega0 = spec.exact_omega0;
            let sim = simulate(p, scheme, &cfg)?;
            let mut rows = Vec::new();
            for &m in &spec.methods {
                let report = match m {
                    Method::SimExact => sim.exact_report(),
                    Method::SimLowerbound => sim.lowerbound_report(),
                    _ => continue,
                };
                rows.push(ResultRow::blank(scheme, m, spec, *value, p).with_report(&report));
            }
            Ok(rows)
        }
        Task::Closed(i) => {
            let (value, p) = &points[i];
            let mut rows = Vec::new();
            for &m in &spec.methods {
                let mut row = ResultRow::blank(Scheme::Proposed, m, spec, *value, p);
                match m {
                    Method::AnalyticLb => {
                        let b = essr_lb(p)?;
                        for s in Signal::ALL {
                            row.set_esr(s, b.esr(s));
                        }
                        row.essr = b.essr_lb;
                        row.flags = join_flags(b.flags.iter().map(ToString::to_string));
                    }
                    Method::Asymptotic => {
                        let mut flags = Vec::new();
                        for s in Signal::WIRETAPPED {
                            let a = esr_asymptotic(s, p, spec.asymptotic_form)?;
                            row.set_esr(s, a.value);
                            flags.extend(a.flags);
                        }
                        let total = essr_asymptotic(p, spec.asymptotic_form, spec.essr_asy_paper_literal)?;
                        row.essr = total.value;
                        row.flags = join_flags(flags.iter().map(ToString::to_string));
                    }
                    _ => continue,
                }
                rows.push(row);
            }
            Ok(rows)
        }
    }
}

fn method_rank(spec: &SweepSpec, m: Method) -> usize {
    spec.methods.iter().position(|&x| x == m).unwrap_or(usize::MAX)
}

fn scheme_rank(spec: &SweepSpec, s: Scheme) -> usize {
    spec.schemes.iter().position(|&x| x == s).unwrap_or(usize::MAX)
}

/// Every (scheme, method, grid point) row, ordered by scheme, method, then
/// grid index. `min_points` is 2 for sweeps and 1 for single points.
pub fn run_sweep(spec: &SweepSpec, min_points: usize) -> Result<Vec<ResultRow>> {
    spec.check(min_points)?;
    let points: Vec<(f64, Params)> = spec
        .grid
        .points()
        .into_iter()
        .map(|v| (v, spec.swept.apply(&spec.base, v)))
        .collect();
    for (_, p) in &points {
        p.validate()?;
    }

    let has_sim = spec.methods.iter().any(|m| m.is_simulation());
    let has_closed = spec.methods.iter().any(|m| !m.is_simulation());
    let mut tasks = Vec::new();
    for &scheme in &spec.schemes {
        for i in 0..points.len() {
            if has_sim {
                tasks.push(Task::Sim(scheme, i));
            }
            if has_closed && scheme == Scheme::Proposed {
                tasks.push(Task::Closed(i));
            }
        }
    }

    let done: Vec<Vec<ResultRow>> = tasks
        .par_iter()
        .map(|t| run_task(spec, &points, t))
        .collect::<Result<_>>()?;

    let mut keyed: Vec<(usize, usize, usize, ResultRow)> = Vec::new();
    for (t, rows) in tasks.iter().zip(done) {
        let i = match *t {
            Task::Sim(_, i) | Task::Closed(i) => i,
        };
        for r in rows {
            keyed.push((scheme_rank(spec, r.scheme), method_rank(spec, r.method), i, r));
        }
    }
    keyed.sort_by_key(|k| (k.0, k.1, k.2));
    Ok(keyed.into_iter().map(|k| k.3).collect())
}

/// Runs `f` on a pool of `workers` threads, or on the global pool.
pub fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("workers: must be at least 1".into())),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::Usage(format!("workers: {e}"))),
    }
}
