//! Sample-average estimates of ergodic secrecy rates.
//!
//! Draws are split into fixed chunks of consecutive positions. Each chunk is
//! accumulated independently and the partial moments are merged in a fixed
//! tree order, so a report depends on `(seed, stream, n)` and never on the
//! number of workers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{for_each_draw, RngStream};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::scalar::Real;
use crate::sinr::{Scheme, Signal, SinrModel};
use crate::stats::{ecdf_at, tree_reduce, MomentBank};

/// Draws per work unit.
pub const CHUNK: u64 = 4096;

/// How a report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SimExact,
    SimLowerbound,
    AnalyticLb,
    Asymptotic,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::SimExact,
        Method::SimLowerbound,
        Method::AnalyticLb,
        Method::Asymptotic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::SimExact => "sim_exact",
            Method::SimLowerbound => "sim_lowerbound",
            Method::AnalyticLb => "analytic_lb",
            Method::Asymptotic => "asymptotic",
        }
    }

    pub fn is_simulation(self) -> bool {
        matches!(self, Method::SimExact | Method::SimLowerbound)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ValueStderr {
    pub value: f64,
    pub stderr: f64,
}

/// Per-signal rates and their sum, in nats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EsrReport {
    pub per_signal: BTreeMap<Signal, ValueStderr>,
    pub essr: ValueStderr,
    pub method: Method,
    pub n_samples: u64,
    pub seed: u64,
    pub scheme: Scheme,
    /// Mean legitimate rates `E[ln(1 + γ)]`.
    pub legit: BTreeMap<Signal, ValueStderr>,
    /// Mean relay rates `E[ln(1 + γ_R)]`.
    pub eve: BTreeMap<Signal, ValueStderr>,
}

impl EsrReport {
    pub fn esr(&self, s: Signal) -> ValueStderr {
        self.per_signal[&s]
    }
}

/// Sampling configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub n: u64,
    pub seed: u64,
    pub stream_index: u64,
    /// Include the per-draw cancellation mismatch in the far-user SINR.
    pub exact_omega0: bool,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl McConfig {
    pub fn new(n: u64, seed: u64) -> Self {
        McConfig {
            n,
            seed,
            stream_index: 0,
            exact_omega0: false,
            workers: None,
        }
    }

    pub fn stream(&self) -> RngStream {
        RngStream::new(self.seed, self.stream_index)
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("sample count must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidArgument("worker count must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig::new(1_000_000, 0)
    }
}

fn run_pooled<R: Send, F: FnOnce() -> R + Send>(workers: Option<usize>, f: F) -> Result<R> {
    match workers {
        None => Ok(f()),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}"))),
    }
}

fn chunk_ranges(n: u64) -> impl IndexedParallelIterator<Item = (u64, u64)> {
    let chunks = usize::try_from(n.div_ceil(CHUNK)).expect("chunk count fits in usize");
    (0..chunks).into_par_iter().map(move |i| {
        let start = i as u64 * CHUNK;
        (start, CHUNK.min(n - start))
    })
}

// Accumulator layout.
const SEC: usize = 0;
const LEGIT: usize = 5;
const EVE: usize = 10;
const DIFF: usize = 14;
const ESSR_EXACT: usize = 18;
const ESSR_LINEAR: usize = 19;
const SLOTS: usize = 20;

/// Moments of every per-draw rate needed by both estimators.
#[derive(Debug, Clone, PartialEq)]
pub struct SimSummary {
    pub scheme: Scheme,
    pub n_samples: u64,
    pub seed: u64,
    bank: MomentBank<SLOTS>,
}

impl SimSummary {
    fn vs(&self, slot: usize) -> ValueStderr {
        let m = &self.bank.slots[slot];
        ValueStderr {
            value: m.mean,
            stderr: m.stderr(),
        }
    }

    fn components(&self) -> (BTreeMap<Signal, ValueStderr>, BTreeMap<Signal, ValueStderr>) {
        let legit = Signal::ALL.iter().map(|&s| (s, self.vs(LEGIT + s.index()))).collect();
        let eve = Signal::WIRETAPPED.iter().map(|&s| (s, self.vs(EVE + s.index()))).collect();
        (legit, eve)
    }

    /// Mean of per-draw clamped secrecy rates.
    pub fn exact_report(&self) -> EsrReport {
        let (legit, eve) = self.components();
        EsrReport {
            per_signal: Signal::ALL.iter().map(|&s| (s, self.vs(SEC + s.index()))).collect(),
            essr: self.vs(ESSR_EXACT),
            method: Method::SimExact,
            n_samples: self.n_samples,
            seed: self.seed,
            scheme: self.scheme,
            legit,
            eve,
        }
    }

    /// Clamp applied after averaging: `max(E[C] - E[C_R], 0)` per signal.
    pub fn lowerbound_report(&self) -> EsrReport {
        let (legit, eve) = self.components();
        let mut per_signal = BTreeMap::new();
        for s in Signal::WIRETAPPED {
            let d = self.vs(DIFF + s.index());
            per_signal.insert(
                s,
                ValueStderr {
                    value: d.value.max(0.0),
                    stderr: d.stderr,
                },
            );
        }
        per_signal.insert(Signal::X5, self.vs(LEGIT + Signal::X5.index()));
        let pref = self.scheme.prefactor::<f64>();
        let essr = ValueStderr {
            value: pref * per_signal.values().map(|v| v.value).sum::<f64>(),
            stderr: self.vs(ESSR_LINEAR).stderr,
        };
        EsrReport {
            per_signal,
            essr,
            method: Method::SimLowerbound,
            n_samples: self.n_samples,
            seed: self.seed,
            scheme: self.scheme,
            legit,
            eve,
        }
    }
}

/// One sampling pass shared by [`estimate_exact`] and [`estimate_lowerbound`].
pub fn simulate<T: Real>(params: &SystemParams<T>, scheme: Scheme, cfg: &McConfig) -> Result<SimSummary> {
    cfg.check()?;
    let model = SinrModel::new(scheme, params, cfg.exact_omega0)?;
    let pref = scheme.prefactor::<f64>();
    let stream = cfg.stream();
    let parts: Vec<MomentBank<SLOTS>> = run_pooled(cfg.workers, || {
        chunk_ranges(cfg.n)
            .map(|(start, count)| {
                let mut bank = MomentBank::<SLOTS>::default();
                let mut row = [0.0; SLOTS];
                for_each_draw(model.params(), stream, start, count, |d| {
                    let prof = model.profile(d);
                    let mut exact = 0.0;
                    let mut linear = 0.0;
                    for j in 0..5 {
                        let c = prof.legit[j].ln_1p().as_f64();
                        row[LEGIT + j] = c;
                        if j < 4 {
                            let cr = prof.eve[j].ln_1p().as_f64();
                            row[EVE + j] = cr;
                            row[DIFF + j] = c - cr;
                            row[SEC + j] = (c - cr).max(0.0);
                        } else {
                            row[SEC + j] = c;
                        }
                        exact += row[SEC + j];
                        linear += if j < 4 { row[DIFF + j] } else { c };
                    }
                    row[ESSR_EXACT] = pref * exact;
                    row[ESSR_LINEAR] = pref * linear;
                    bank.push(&row);
                });
                bank
            })
            .collect()
    })?;
    let bank = tree_reduce(&parts, &|a: &MomentBank<SLOTS>, b: &MomentBank<SLOTS>| a.merge(b))
        .unwrap_or_default();
    Ok(SimSummary {
        scheme,
        n_samples: cfg.n,
        seed: cfg.seed,
        bank,
    })
}

/// Ergodic secrecy rates as sample means of per-draw clamped rates.
pub fn estimate_exact<T: Real>(params: &SystemParams<T>, scheme: Scheme, cfg: &McConfig) -> Result<EsrReport> {
    Ok(simulate(params, scheme, cfg)?.exact_report())
}

/// Sample estimate of the lower bound that clamps after averaging.
pub fn estimate_lowerbound<T: Real>(
    params: &SystemParams<T>,
    scheme: Scheme,
    cfg: &McConfig,
) -> Result<EsrReport> {
    Ok(simulate(params, scheme, cfg)?.lowerbound_report())
}

/// A per-draw scalar whose distribution can be inspected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Legit(Signal),
    Eve(Signal),
    /// `G^2 g_sr (ρ_U g_ruf + 2)`, the relay-noise term of the `x5` SINR.
    Y,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Legit(s) => write!(f, "legit.{s}"),
            Quantity::Eve(s) => write!(f, "eve.{s}"),
            Quantity::Y => f.write_str("y"),
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownQuantity(s.to_string());
        if s == "y" {
            return Ok(Quantity::Y);
        }
        let (kind, sig) = s.split_once('.').ok_or_else(unknown)?;
        let sig: Signal = sig.parse().map_err(|_| unknown())?;
        match kind {
            "legit" => Ok(Quantity::Legit(sig)),
            "eve" if sig != Signal::X5 => Ok(Quantity::Eve(sig)),
            _ => Err(unknown()),
        }
    }
}

/// The first `cfg.n` values of `q`, in position order.
pub fn sample_quantity<T: Real>(
    q: Quantity,
    params: &SystemParams<T>,
    scheme: Scheme,
    cfg: &McConfig,
) -> Result<Vec<f64>> {
    cfg.check()?;
    if let Quantity::Eve(Signal::X5) = q {
        return Err(Error::UnknownQuantity(q.to_string()));
    }
    let model = SinrModel::new(scheme, params, cfg.exact_omega0)?;
    let g_sq = params.derive()?.g_sq;
    let two = T::lit(2.0);
    let stream = cfg.stream();
    let chunks: Vec<Vec<f64>> = run_pooled(cfg.workers, || {
        chunk_ranges(cfg.n)
            .map(|(start, count)| {
                let mut out = Vec::with_capacity(count as usize);
                for_each_draw(model.params(), stream, start, count, |d| {
                    let v = match q {
                        Quantity::Legit(s) => model.profile(d).legit(s),
                        Quantity::Eve(s) => model.profile(d).eve[s.index()],
                        Quantity::Y => g_sq * d.g_sr * (params.rho_u * d.g_ruf + two),
                    };
                    out.push(v.as_f64());
                });
                out
            })
            .collect()
    })?;
    Ok(chunks.concat())
}

/// Empirical CDF of `q` on `grid` (strictly increasing).
pub fn empirical_cdf<T: Real>(
    q: Quantity,
    params: &SystemParams<T>,
    scheme: Scheme,
    cfg: &McConfig,
    grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("grid must be strictly increasing".into()));
    }
    let mut xs = sample_quantity(q, params, scheme, cfg)?;
    xs.sort_by(f64::total_cmp);
    Ok(ecdf_at(&xs, grid))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> SystemParams<f64> {
        SystemParams::reference_db(20.0)
    }

    #[test]
    fn worker_count_does_not_change_report() {
        let mut cfg = McConfig::new(20_000, 11);
        cfg.workers = Some(1);
        let a = estimate_exact(&p(), Scheme::Proposed, &cfg).unwrap();
        cfg.workers = Some(3);
        let b = estimate_exact(&p(), Scheme::Proposed, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn essr_is_prefactor_times_sum() {
        let cfg = McConfig::new(10_000, 2);
        for scheme in Scheme::ALL {
            let s = simulate(&p(), scheme, &cfg).unwrap();
            for r in [s.exact_report(), s.lowerbound_report()] {
                let sum: f64 = r.per_signal.values().map(|v| v.value).sum();
                let want = sum * scheme.prefactor::<f64>();
                assert!((r.essr.value - want).abs() < 1e-12 * want.max(1.0));
            }
        }
    }

    #[test]
    fn lowerbound_never_exceeds_exact_by_construction_of_clamp() {
        let cfg = McConfig::new(10_000, 5);
        let s = simulate(&p(), Scheme::Proposed, &cfg).unwrap();
        let (ex, lb) = (s.exact_report(), s.lowerbound_report());
        for sig in Signal::ALL {
            assert!(lb.esr(sig).value <= ex.esr(sig).value + 1e-12);
        }
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(estimate_exact(&p(), Scheme::Proposed, &McConfig::new(0, 0)).is_err());
    }

    #[test]
    fn quantity_names() {
        assert_eq!("eve.x1".parse::<Quantity>().unwrap(), Quantity::Eve(Signal::X1));
        assert_eq!("legit.x5".parse::<Quantity>().unwrap(), Quantity::Legit(Signal::X5));
        assert_eq!("y".parse::<Quantity>().unwrap(), Quantity::Y);
        assert!(matches!("eve.x5".parse::<Quantity>(), Err(Error::UnknownQuantity(_))));
        assert!("foo".parse::<Quantity>().is_err());
    }

    #[test]
    fn partial_chunk_is_counted() {
        let cfg = McConfig::new(CHUNK + 3, 0);
        let xs = sample_quantity(Quantity::Y, &p(), Scheme::Proposed, &cfg).unwrap();
        assert_eq!(xs.len() as u64, CHUNK + 3);
    }

    #[test]
    fn ecdf_requires_increasing_grid() {
        let cfg = McConfig::new(100, 0);
        let q = Quantity::Eve(Signal::X1);
        assert!(empirical_cdf(q, &p(), Scheme::Proposed, &cfg, &[1.0, 1.0]).is_err());
        let e = empirical_cdf(q, &p(), Scheme::Proposed, &cfg, &[0.0, 0.1, 1e9]).unwrap();
        assert_eq!(e.last().unwrap().1, 1.0);
    }
}
