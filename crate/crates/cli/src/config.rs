//! Run settings: defaults, then a `key = value` file, then command-line
//! overrides.

use std::path::Path;
use std::str::FromStr;

use nomacdrt::{analytic::AsymptoticForm, Method, ParamField, Params, Scheme};

use crate::error::{CliError, Result};
use crate::output::{Format, Units};
use crate::sweep::{self, Grid, SweepSpec, SweepVar};

/// Keys accepted besides the parameter field names.
pub const RUN_KEYS: [&str; 12] = [
    "rho_db",
    "n",
    "seed",
    "schemes",
    "methods",
    "sweep",
    "units",
    "out",
    "exact_omega0",
    "essr_asy_paper_literal",
    "workers",
    "asymptotic_form",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub params: Params,
    pub n: u64,
    pub seed: u64,
    pub schemes: Vec<Scheme>,
    pub methods: Vec<Method>,
    pub sweep: Option<(SweepVar, Grid)>,
    pub units: Units,
    pub out: Format,
    pub exact_omega0: bool,
    pub essr_asy_paper_literal: bool,
    pub workers: Option<usize>,
    pub asymptotic_form: AsymptoticForm,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            params: Params::reference_db(20.0),
            n: 1_000_000,
            seed: 1,
            schemes: vec![Scheme::Proposed],
            methods: vec![Method::SimExact, Method::AnalyticLb],
            sweep: None,
            units: Units::Nats,
            out: Format::Csv,
            exact_omega0: false,
            essr_asy_paper_literal: false,
            workers: None,
            asymptotic_form: AsymptoticForm::Limit,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> std::result::Result<T, String> {
    v.parse().map_err(|_| format!("{key}: cannot parse `{v}`"))
}

fn parse_real(key: &str, v: &str) -> std::result::Result<f64, String> {
    let x: f64 = parse_num(key, v)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{key}: `{v}` is not finite"))
    }
}

fn parse_bool(key: &str, v: &str) -> std::result::Result<bool, String> {
    match v {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(format!("{key}: expected a boolean, got `{v}`")),
    }
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> std::result::Result<Vec<T>, String> {
    let mut out = Vec::new();
    for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        out.push(item.parse().map_err(|_| format!("{key}: unknown entry `{item}`"))?);
    }
    if out.is_empty() {
        return Err(format!("{key}: list is empty"));
    }
    Ok(out)
}

impl Settings {
    /// Sets one key from its textual value.
    pub fn apply(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let v = value.trim();
        if let Ok(field) = key.parse::<ParamField>() {
            let x = parse_real(key, v)?;
            self.params.set(field, x);
            return Ok(());
        }
        match key {
            "rho_db" => {
                let x = parse_real(key, v)?;
                self.params = self.params.with_rho_db(x);
            }
            "n" => {
                // Accept 1e6 style counts.
                let x: f64 = parse_real(key, v)?;
                if x < 1.0 || x.fract() != 0.0 || x > u64::MAX as f64 {
                    return Err(format!("n: `{v}` is not a positive integer"));
                }
                self.n = x as u64;
            }
            "seed" => self.seed = parse_num(key, v)?,
            "schemes" => self.schemes = parse_list(key, v)?,
            "methods" => self.methods = parse_list(key, v)?,
            "sweep" => self.sweep = Some(sweep::parse_sweep(v).map_err(|e| e.to_string())?),
            "units" => self.units = v.parse().map_err(|e: CliError| e.to_string())?,
            "out" => self.out = v.parse().map_err(|e: CliError| e.to_string())?,
            "exact_omega0" => self.exact_omega0 = parse_bool(key, v)?,
            "essr_asy_paper_literal" => self.essr_asy_paper_literal = parse_bool(key, v)?,
            "workers" => {
                let w: usize = parse_num(key, v)?;
                if w == 0 {
                    return Err("workers: must be at least 1".into());
                }
                self.workers = Some(w);
            }
            "asymptotic_form" => {
                self.asymptotic_form = match v {
                    "limit" => AsymptoticForm::Limit,
                    "pre_limit" => AsymptoticForm::PreLimit,
                    _ => return Err(format!("asymptotic_form: expected limit or pre_limit, got `{v}`")),
                }
            }
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Applies every line of a config text. `origin` names it in errors.
    pub fn apply_text(&mut self, text: &str, origin: &Path) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CliError::Config {
                path: origin.to_path_buf(),
                line: i + 1,
                message,
            };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            self.apply(k.trim(), v).map_err(err)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.apply_text(&text, path)
    }

    /// Sweep spec over the configured variable, or `fallback` when none.
    pub fn spec(&self, fallback: (SweepVar, Grid)) -> SweepSpec {
        let (swept, grid) = self.sweep.unwrap_or(fallback);
        SweepSpec {
            schemes: self.schemes.clone(),
            methods: self.methods.clone(),
            n_samples: self.n,
            seed: self.seed,
            exact_omega0: self.exact_omega0,
            essr_asy_paper_literal: self.essr_asy_paper_literal,
            asymptotic_form: self.asymptotic_form,
            ..SweepSpec::new(swept, grid, self.params)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_lines_and_comments() {
        let mut s = Settings::default();
        let text = "# scenario\nlambda_sun = 12\n\nrho_db = 30  # high snr\nschemes = proposed, ben2\nn = 1e4\n";
        s.apply_text(text, Path::new("t.conf")).unwrap();
        assert_eq!(s.params.lambda_sun, 12.0);
        assert_eq!(s.params.rho_u, 1000.0);
        assert_eq!(s.schemes, vec![Scheme::Proposed, Scheme::Ben2]);
        assert_eq!(s.n, 10_000);
    }

    #[test]
    fn reports_line_of_bad_entry() {
        let mut s = Settings::default();
        let e = s.apply_text("nu = 2\nbogus = 1\n", Path::new("t.conf")).unwrap_err();
        match e {
            CliError::Config { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(s.apply_text("n = 0.5", Path::new("t")).is_err());
        assert!(s.apply_text("a_s", Path::new("t")).is_err());
        assert!(s.apply_text("lambda_sr = nan", Path::new("t")).is_err());
    }

    #[test]
    fn every_field_name_is_a_key() {
        let mut s = Settings::default();
        for f in ParamField::ALL {
            s.apply(f.name(), "0.25").unwrap();
            assert_eq!(s.params.get(f), 0.25);
        }
        for k in RUN_KEYS {
            assert!(s.apply(k, "?").is_err());
        }
    }
}
