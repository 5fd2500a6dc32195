//! Range-scale experiments.
//!
//! * [`survey_range`] runs the witness constructions over every
//!   `n ∈ [⌈x/2⌉, x]` and collects the exceptional `n`.
//! * [`rset_density`] counts primes `r ≤ z` with `P(r − 1) > r^α`.
//! * [`bs_max_pdiff`] and [`bs_experiment`] measure the largest prime factor
//!   of differences `a − b` over two sets.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::factor::{lpf_table, FactorTable, LargestPrimeFactor};
use crate::format::{opt_sig9, sig9};
use crate::sieve::count_primes;
use crate::threshold::snapped_ceil;
use crate::witness::{build_rset, strategy_bv, strategy_smooth_with, RSet, Strategy, Witness};
use crate::{Error, Result};

/// Shift-prime exponent known to be admissible unconditionally.
pub const DEFAULT_ALPHA: f64 = 0.677;
pub const DEFAULT_C0: f64 = 0.05;
pub const DEFAULT_EPS: f64 = 0.05;

/// Named parameter sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `alpha = gamma = 0.677`: budgets of order `n^{1.677}`.
    Corollary1,
    /// `alpha = 0.677`, `gamma = 1/2`: budgets of order `n^{3/2}`.
    Corollary2,
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corollary-1" => Ok(Preset::Corollary1),
            "corollary-2" => Ok(Preset::Corollary2),
            other => Err(Error::config(format!("unknown preset {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurveyConfig {
    pub alpha: f64,
    pub gamma: f64,
    pub c0: f64,
    pub eps: f64,
    pub smooth: bool,
    pub bv: bool,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        Self::preset(Preset::Corollary1)
    }
}

impl SurveyConfig {
    pub fn preset(preset: Preset) -> Self {
        let gamma = match preset {
            Preset::Corollary1 => DEFAULT_ALPHA,
            Preset::Corollary2 => 0.5,
        };
        Self {
            alpha: DEFAULT_ALPHA,
            gamma,
            c0: DEFAULT_C0,
            eps: DEFAULT_EPS,
            smooth: true,
            bv: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("gamma", self.gamma)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::config(format!("{name} = {v} must lie in (0, 1]")));
            }
        }
        if !(self.c0 > 0.0 && self.c0 < 0.25) {
            return Err(Error::config(format!("c0 = {} must lie in (0, 1/4)", self.c0)));
        }
        if !(0.0..0.25).contains(&self.eps) {
            return Err(Error::config(format!("eps = {} must lie in [0, 1/4)", self.eps)));
        }
        if !(self.smooth || self.bv) {
            return Err(Error::config("no strategy enabled"));
        }
        Ok(())
    }
}

/// Outcome for one `n`: a witness with its strategy, or exceptional.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurveyRecord {
    pub n: u64,
    pub strategy: Option<Strategy>,
    pub witness: Option<Witness>,
    #[serde(serialize_with = "opt_sig9")]
    pub beta: Option<f64>,
}

impl SurveyRecord {
    pub fn is_exceptional(&self) -> bool {
        self.witness.is_none()
    }
}

/// Order statistics of `β(n) = log(score) / log(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaStats {
    #[serde(serialize_with = "sig9")]
    pub min: f64,
    #[serde(serialize_with = "sig9")]
    pub median: f64,
    #[serde(serialize_with = "sig9")]
    pub mean: f64,
}

impl BetaStats {
    /// The median of an even count is the mean of the two middle values.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyStatistics);
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let len = sorted.len();
        let median = if len % 2 == 1 {
            sorted[len / 2]
        } else {
            (sorted[len / 2 - 1] + sorted[len / 2]) / 2.0
        };
        let mean = sorted
            .iter()
            .copied()
            .sum::<crate::sum::NeumaierSum>()
            .value()
            / len as f64;
        Ok(Self {
            min: sorted[0],
            median,
            mean,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyReport {
    pub x: u64,
    pub config: SurveyConfig,
    pub rset_interval: (u64, u64),
    pub rset_size: usize,
    pub records: Vec<SurveyRecord>,
    pub exceptional_count: u64,
    pub beta_stats: Option<BetaStats>,
}

impl SurveyReport {
    pub fn exceptional(&self) -> impl Iterator<Item = u64> + '_ {
        self.records
            .iter()
            .filter(|r| r.is_exceptional())
            .map(|r| r.n)
    }

    /// `exceptional_count / (x/2)`.
    pub fn exceptional_fraction(&self) -> f64 {
        self.exceptional_count as f64 / (self.x as f64 / 2.0)
    }
}

/// `[⌈c0·x⌉, ⌊x/4⌋]`, the interval the survey draws `r` from.
pub fn rset_interval(x: u64, c0: f64) -> (u64, u64) {
    (snapped_ceil(c0 * x as f64).max(1), x / 4)
}

/// Runs the enabled strategies on every `n ∈ [⌈x/2⌉, x]`.
///
/// The R-set is built once, and one factor table covers every difference
/// `n − r` the smooth strategy can touch. When both strategies succeed the
/// higher score is kept (the smooth witness on ties).
pub fn survey_range(x: u64, config: &SurveyConfig) -> Result<SurveyReport> {
    if x < 8 {
        return Err(Error::config(format!("x = {x} must be at least 8")));
    }
    config.validate()?;
    let (r_lo, r_hi) = rset_interval(x, config.c0);
    let rset = if r_lo <= r_hi {
        build_rset(r_lo, r_hi, config.alpha)?
    } else {
        RSet::empty(config.alpha)
    };
    let n_lo = x.div_ceil(2);

    let table: Option<FactorTable> = match (rset.members().first(), rset.members().last()) {
        (Some(&first), Some(&last)) if config.smooth => Some(lpf_table(n_lo - last, x - first)?),
        _ => None,
    };

    let records = (n_lo..=x)
        .into_par_iter()
        .map(|n| -> Result<SurveyRecord> {
            let mut found: Option<(Strategy, Witness)> = None;
            if let Some(table) = &table {
                if let Some(w) = strategy_smooth_with(n, &rset, config.gamma, table)? {
                    found = Some((Strategy::Smooth, w));
                }
            }
            if config.bv {
                if let Some(w) = strategy_bv(n, config.eps)? {
                    if found.is_none_or(|(_, prev)| w.score > prev.score) {
                        found = Some((Strategy::Bv, w));
                    }
                }
            }
            Ok(SurveyRecord {
                n,
                strategy: found.map(|f| f.0),
                witness: found.map(|f| f.1),
                beta: found.map(|f| f.1.beta(n)),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let exceptional_count = records.iter().filter(|r| r.is_exceptional()).count() as u64;
    let betas: Vec<f64> = records.iter().filter_map(|r| r.beta).collect();
    let beta_stats = BetaStats::from_values(&betas).ok();
    Ok(SurveyReport {
        x,
        config: *config,
        rset_interval: (r_lo, r_hi),
        rset_size: rset.len(),
        records,
        exceptional_count,
        beta_stats,
    })
}

/// β statistics over the successful records of a report.
pub fn exponent_stats(report: &SurveyReport) -> Result<BetaStats> {
    let betas: Vec<f64> = report.records.iter().filter_map(|r| r.beta).collect();
    BetaStats::from_values(&betas)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RsetDensity {
    pub z: u64,
    #[serde(serialize_with = "sig9")]
    pub alpha: f64,
    pub count: u64,
    /// `count / (z / log z)`.
    #[serde(serialize_with = "sig9")]
    pub ratio: f64,
    /// `π(z)`.
    pub prime_count: u64,
    /// `count / π(z)`.
    #[serde(serialize_with = "sig9")]
    pub prime_fraction: f64,
}

/// Number of primes `r ≤ z` with `P(r − 1) > r^alpha`, normalized by
/// `z / log z` and by `π(z)`.
pub fn rset_density(z: u64, alpha: f64) -> Result<RsetDensity> {
    if z == 0 {
        return Err(Error::domain("z must be positive"));
    }
    let count = build_rset(1, z, alpha)?.len() as u64;
    let prime_count = count_primes(1, z)?;
    let ratio = if count == 0 {
        0.0
    } else {
        count as f64 / (z as f64 / (z as f64).ln())
    };
    let prime_fraction = if count == 0 {
        0.0
    } else {
        count as f64 / prime_count as f64
    };
    Ok(RsetDensity {
        z,
        alpha,
        count,
        ratio,
        prime_count,
        prime_fraction,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PdiffMax {
    pub max_p: u64,
    pub a: u64,
    pub b: u64,
}

/// `max P(|a − b|)` over `a ∈ A`, `b ∈ B`, `a ≠ b`, with the first
/// maximizing pair in iteration order.
pub fn bs_max_pdiff(a_set: &[u64], b_set: &[u64]) -> Result<PdiffMax> {
    if a_set.iter().chain(b_set).any(|&v| v == 0) {
        return Err(Error::domain("set elements must be positive"));
    }
    let top = a_set.iter().chain(b_set).copied().max().unwrap_or(0);
    if top < 2 {
        return Err(Error::NoValidPair);
    }
    let table = lpf_table(1, top - 1)?;
    let mut best: Option<PdiffMax> = None;
    for &a in a_set {
        for &b in b_set {
            if a == b {
                continue;
            }
            let p = table.lpf(a.abs_diff(b));
            if best.is_none_or(|cur| p > cur.max_p) {
                best = Some(PdiffMax { max_p: p, a, b });
            }
        }
    }
    best.ok_or(Error::NoValidPair)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BsConfig {
    /// Sets are drawn from `[1, n]`.
    pub n: u64,
    pub trials: usize,
    pub seed: u64,
    /// Size condition `#A·#B ≥ size_constant · N (log N)²`.
    #[serde(serialize_with = "sig9")]
    pub size_constant: f64,
    /// Bound checked: `max P ≥ bound_constant · (#A·#B)^{1/2} / log N`.
    #[serde(serialize_with = "sig9")]
    pub bound_constant: f64,
}

impl Default for BsConfig {
    fn default() -> Self {
        Self {
            n: 10_000,
            trials: 50,
            seed: 0x5eed,
            size_constant: 1.0,
            bound_constant: 0.05,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BsTrial {
    pub size_a: usize,
    pub size_b: usize,
    pub max_p: u64,
    pub a: u64,
    pub b: u64,
    #[serde(serialize_with = "sig9")]
    pub bound: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BsReport {
    pub config: BsConfig,
    pub trials: Vec<BsTrial>,
    pub failures: usize,
}

fn random_subset(rng: &mut ChaCha8Rng, n: u64, size: usize) -> Vec<u64> {
    let mut v: Vec<u64> = sample(rng, n as usize, size)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect();
    v.sort_unstable();
    v
}

/// Draws seeded random set pairs `A, B ⊆ [1, N]` meeting the size
/// condition and compares `max P(a − b)` against the lower bound.
pub fn bs_experiment(config: &BsConfig) -> Result<BsReport> {
    let n = config.n;
    if n < 3 {
        return Err(Error::config("N must be at least 3"));
    }
    if !(config.size_constant > 0.0 && config.bound_constant >= 0.0) {
        return Err(Error::config("constants must be positive"));
    }
    let log_n = (n as f64).ln();
    let need = (config.size_constant * n as f64 * log_n * log_n).ceil() as u64;
    if need > n * n {
        return Err(Error::config(format!(
            "size condition {need} cannot be met by subsets of [1, {n}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trials = Vec::with_capacity(config.trials);
    for _ in 0..config.trials {
        let size_a = rng.random_range(need.div_ceil(n).max(1)..=n);
        let min_b = need.div_ceil(size_a).max(1);
        let size_b = rng.random_range(min_b..=(2 * min_b).min(n));
        let a_set = random_subset(&mut rng, n, size_a as usize);
        let b_set = random_subset(&mut rng, n, size_b as usize);
        let best = bs_max_pdiff(&a_set, &b_set)?;
        let bound = config.bound_constant * ((size_a * size_b) as f64).sqrt() / log_n;
        trials.push(BsTrial {
            size_a: size_a as usize,
            size_b: size_b as usize,
            max_p: best.max_p,
            a: best.a,
            b: best.b,
            bound,
            passed: best.max_p as f64 >= bound,
        });
    }
    let failures = trials.iter().filter(|t| !t.passed).count();
    Ok(BsReport {
        config: *config,
        trials,
        failures,
    })
}
