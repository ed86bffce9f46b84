//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::Settings;
use crate::error::{CliError, Result};
use crate::output::{self, Format, PlotOptions};
use crate::selftest;
use crate::sweep::{self, Grid, SweepVar};

#[derive(Debug, Parser)]
#[command(name = "nomacdrt", version, about = "Secrecy-rate simulator for NOMA coordinated direct and relay transmission")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate methods over a parameter grid.
    Sweep(RunArgs),
    /// Evaluate methods at the configured parameters.
    Point(RunArgs),
    /// Check parameters and print the derived coefficients.
    Validate(ParamArgs),
    /// Print the φ5 deviation table and reference-constant checks.
    Selftest,
}

#[derive(Debug, Default, Args)]
pub struct ParamArgs {
    /// `key = value` file applied before command-line flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long = "lambda_sun", alias = "lambda-sun")]
    pub lambda_sun: Option<f64>,
    #[arg(long = "lambda_sr", alias = "lambda-sr")]
    pub lambda_sr: Option<f64>,
    #[arg(long = "lambda_run", alias = "lambda-run")]
    pub lambda_run: Option<f64>,
    #[arg(long = "lambda_ruf", alias = "lambda-ruf")]
    pub lambda_ruf: Option<f64>,
    #[arg(long = "lambda_unuf", alias = "lambda-unuf")]
    pub lambda_unuf: Option<f64>,
    #[arg(long = "a_s", alias = "a-s")]
    pub a_s: Option<f64>,
    #[arg(long = "a1_t2", alias = "a1-t2")]
    pub a1_t2: Option<f64>,
    /// Linear user SNR.
    #[arg(long = "rho_u", alias = "rho-u", conflicts_with = "rho_db")]
    pub rho_u: Option<f64>,
    /// User SNR in dB.
    #[arg(long = "rho_db", alias = "rho-db", allow_negative_numbers = true)]
    pub rho_db: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
}

#[derive(Debug, Default, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// `VAR` or `VAR:START:STOP:STEPS` with VAR one of rho_db, a_s, a1_t2,
    /// lambda_run, lambda_ruf, nu.
    #[arg(long, allow_hyphen_values = true)]
    pub sweep: Option<String>,
    /// Comma-separated subset of proposed, ben1, ben2.
    #[arg(long)]
    pub schemes: Option<String>,
    /// Comma-separated subset of sim_exact, sim_lowerbound, analytic_lb, asymptotic.
    #[arg(long)]
    pub methods: Option<String>,
    /// Monte Carlo sample count.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// csv, json or svg.
    #[arg(long)]
    pub out: Option<String>,
    /// nats or bits.
    #[arg(long)]
    pub units: Option<String>,
    #[arg(long = "exact-omega0", alias = "exact_omega0")]
    pub exact_omega0: bool,
    #[arg(long = "essr-asy-paper-literal", alias = "essr_asy_paper_literal")]
    pub essr_asy_paper_literal: bool,
    /// limit or pre_limit.
    #[arg(long = "asymptotic-form", alias = "asymptotic_form")]
    pub asymptotic_form: Option<String>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn override_with(s: &mut Settings, key: &str, v: Option<String>) -> Result<()> {
    match v {
        Some(v) => s.apply(key, &v).map_err(CliError::Usage),
        None => Ok(()),
    }
}

impl ParamArgs {
    pub fn settings(&self) -> Result<Settings> {
        let mut s = Settings::default();
        if let Some(path) = &self.config {
            s.apply_file(path)?;
        }
        let pairs = [
            ("lambda_sun", self.lambda_sun),
            ("lambda_sr", self.lambda_sr),
            ("lambda_run", self.lambda_run),
            ("lambda_ruf", self.lambda_ruf),
            ("lambda_unuf", self.lambda_unuf),
            ("a_s", self.a_s),
            ("a1_t2", self.a1_t2),
            ("rho_u", self.rho_u),
            ("rho_db", self.rho_db),
            ("nu", self.nu),
        ];
        for (k, v) in pairs {
            override_with(&mut s, k, v.map(|x| x.to_string()))?;
        }
        Ok(s)
    }
}

impl RunArgs {
    pub fn settings(&self) -> Result<Settings> {
        let mut s = self.params.settings()?;
        override_with(&mut s, "sweep", self.sweep.clone())?;
        override_with(&mut s, "schemes", self.schemes.clone())?;
        override_with(&mut s, "methods", self.methods.clone())?;
        override_with(&mut s, "n", self.n.clone())?;
        override_with(&mut s, "seed", self.seed.map(|x| x.to_string()))?;
        override_with(&mut s, "out", self.out.clone())?;
        override_with(&mut s, "units", self.units.clone())?;
        override_with(&mut s, "asymptotic_form", self.asymptotic_form.clone())?;
        override_with(&mut s, "workers", self.workers.map(|x| x.to_string()))?;
        s.exact_omega0 |= self.exact_omega0;
        s.essr_asy_paper_literal |= self.essr_asy_paper_literal;
        Ok(s)
    }
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    valid: bool,
    rho_db: f64,
    params: &'a nomacdrt::Params,
    derived: nomacdrt::Coeffs,
}

/// Renders the rows of a sweep or point run.
pub fn render_rows(rows: &[sweep::ResultRow], s: &Settings) -> Result<Vec<u8>> {
    let rows = output::convert(rows, s.units);
    match s.out {
        Format::Csv => output::emit_csv(&rows),
        Format::Json => output::emit_json(&rows),
        Format::Svg => {
            let opts = PlotOptions {
                y_label: format!("ESSR ({})", s.units.label()),
                ..PlotOptions::default()
            };
            output::emit_svg(&rows, &opts)
        }
    }
}

fn run_rows(args: &RunArgs, single: bool) -> Result<Vec<u8>> {
    let s = args.settings()?;
    let (spec, min_points) = if single {
        let mut spec = s.spec((SweepVar::RhoDb, Grid::single(s.params.rho_db())));
        spec.swept = SweepVar::RhoDb;
        spec.grid = Grid::single(s.params.rho_db());
        (spec, 1)
    } else {
        (s.spec((SweepVar::RhoDb, SweepVar::RhoDb.default_grid())), 2)
    };
    let rows = sweep::with_workers(s.workers, || sweep::run_sweep(&spec, min_points))??;
    render_rows(&rows, &s)
}

/// Executes a parsed command, returning stdout bytes and the target file.
pub fn execute(cli: &Cli) -> Result<(Vec<u8>, Option<PathBuf>)> {
    match &cli.command {
        Command::Sweep(a) => Ok((run_rows(a, false)?, a.output.clone())),
        Command::Point(a) => Ok((run_rows(a, true)?, a.output.clone())),
        Command::Validate(a) => {
            let s = a.settings()?;
            let derived = s.params.derive()?;
            let report = ValidateReport {
                valid: true,
                rho_db: s.params.rho_db(),
                params: &s.params,
                derived,
            };
            let mut v = serde_json::to_vec_pretty(&report)?;
            v.push(b'\n');
            Ok((v, None))
        }
        Command::Selftest => {
            let r = selftest::run()?;
            if r.passed() {
                Ok((r.render().into_bytes(), None))
            } else {
                Err(CliError::SelftestFailed(r.render()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nomacdrt::{Method, Scheme};

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("nomacdrt").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "nu = 3\nrho_db = 10\nschemes = ben1\nn = 500\n").unwrap();
        let cli = parse(&[
            "sweep",
            "--config",
            path.to_str().unwrap(),
            "--rho-db",
            "25",
            "--schemes",
            "proposed,ben2",
            "--methods",
            "sim_exact",
        ]);
        let Command::Sweep(a) = &cli.command else { panic!() };
        let s = a.settings().unwrap();
        assert_eq!(s.params.nu, 3.0);
        assert!((s.params.rho_db() - 25.0).abs() < 1e-12);
        assert_eq!(s.schemes, vec![Scheme::Proposed, Scheme::Ben2]);
        assert_eq!(s.methods, vec![Method::SimExact]);
        assert_eq!(s.n, 500);
    }

    #[test]
    fn underscore_and_kebab_names() {
        let a = parse(&["validate", "--lambda_sun", "9"]);
        let b = parse(&["validate", "--lambda-sun", "9"]);
        let (Command::Validate(a), Command::Validate(b)) = (&a.command, &b.command) else { panic!() };
        assert_eq!(a.lambda_sun, b.lambda_sun);
    }

    #[test]
    fn point_uses_a_single_grid_point() {
        let cli = parse(&["point", "--n", "1000", "--methods", "sim_exact,analytic_lb", "--rho-db", "15"]);
        let (bytes, _) = execute(&cli).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(1).unwrap().starts_with("proposed,sim_exact,rho_db,15"));
    }
}
