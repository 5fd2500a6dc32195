//! `evasive`: command-line front end for `evasive-core`.
//!
//! Exit status is 0 on success, 1 on invalid input or other errors, and 2
//! when the computation succeeds but finds no witness (or a certificate
//! fails verification).

mod args;
mod verify;

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, Format, SmoothArgs, StrategyArg};
use evasive_core::dirichlet::{bv_breakdown, max_discrepancy, psi, DiscrepancyRecord};
use evasive_core::format::{round_sig9, sig9};
use evasive_core::survey::{
    bs_experiment, rset_density, rset_interval, survey_range, BsConfig, Preset, SurveyConfig,
};
use evasive_core::witness::{
    build_rset, f_exact, strategy_bv, strategy_smooth, Certificate, RSet, Strategy, Witness,
    MAX_N,
};

/// Largest n accepted by `f-exact` (dense tables of size n).
const F_EXACT_LIMIT: u64 = 10_000_000;

/// A rendered report and whether it records a meaningful absence.
struct Report {
    json: String,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    absent: bool,
}

impl Report {
    fn new<T: Serialize>(value: &T, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Result<Self> {
        Ok(Self {
            json: serde_json::to_string(value)?,
            header,
            rows,
            absent: false,
        })
    }

    fn absent(mut self, absent: bool) -> Self {
        self.absent = absent;
        self
    }

    fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => Ok(format!("{}\n", self.json).into_bytes()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                Ok(w.into_inner()?)
            }
        }
    }
}

fn num(x: f64) -> String {
    round_sig9(x).to_string()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v <= 1.0) {
        bail!("{name} = {v} must lie in (0, 1]");
    }
    Ok(())
}

fn check_c0(c0: f64) -> Result<()> {
    if !(c0 > 0.0 && c0 < 0.25) {
        bail!("c0 = {c0} must lie in (0, 1/4)");
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..0.25).contains(&eps) {
        bail!("eps = {eps} must lie in [0, 1/4)");
    }
    Ok(())
}

fn check_n(n: u64, limit: u64) -> Result<()> {
    if n == 0 || n > limit {
        bail!("n = {n} must lie in [1, {limit}]");
    }
    Ok(())
}

#[derive(Serialize)]
struct Quadruple {
    k: u64,
    p: u64,
    q: u64,
    r: u64,
}

#[derive(Serialize)]
struct FExactOut {
    n: u64,
    value: u128,
    witness: Option<Quadruple>,
}

#[derive(Serialize)]
struct NoWitness {
    n: u64,
    strategy: Strategy,
    witness: Option<Quadruple>,
}

fn f_exact_report(n: u64) -> Result<Report> {
    check_n(n, F_EXACT_LIMIT)?;
    let exact = f_exact(n)?;
    let out = FExactOut {
        n,
        value: exact.value,
        witness: exact.witness.map(|w| Quadruple {
            k: w.k,
            p: w.p,
            q: w.q,
            r: w.r,
        }),
    };
    let w = exact.witness;
    let row = vec![
        n.to_string(),
        exact.value.to_string(),
        opt(w.map(|w| w.k)),
        opt(w.map(|w| w.p)),
        opt(w.map(|w| w.q)),
        opt(w.map(|w| w.r)),
    ];
    Ok(Report::new(&out, vec!["n", "value", "k", "p", "q", "r"], vec![row])?.absent(w.is_none()))
}

fn witness_report(n: u64, strategy: Strategy, found: Option<Witness>) -> Result<Report> {
    let header = vec!["n", "strategy", "k", "p", "q", "r", "score"];
    let row = vec![
        n.to_string(),
        strategy.to_string(),
        opt(found.map(|w| w.k)),
        opt(found.map(|w| w.p)),
        opt(found.map(|w| w.q)),
        opt(found.map(|w| w.r)),
        opt(found.map(|w| w.score)),
    ];
    let report = match found {
        Some(w) => Report::new(&Certificate::new(n, w, strategy), header, vec![row])?,
        None => Report::new(
            &NoWitness {
                n,
                strategy,
                witness: None,
            },
            header,
            vec![row],
        )?
        .absent(true),
    };
    Ok(report)
}

fn smooth_rset(x: u64, args: &SmoothArgs) -> Result<RSet> {
    let (lo, hi) = rset_interval(x, args.c0);
    Ok(if lo <= hi {
        build_rset(lo, hi, args.alpha)?
    } else {
        RSet::empty(args.alpha)
    })
}

fn survey_config(
    preset: Option<&str>,
    alpha: Option<f64>,
    gamma: Option<f64>,
    c0: Option<f64>,
    eps: Option<f64>,
    strategies: &[StrategyArg],
) -> Result<SurveyConfig> {
    let base = match preset {
        Some(name) => SurveyConfig::preset(name.parse::<Preset>()?),
        None => SurveyConfig::default(),
    };
    Ok(SurveyConfig {
        alpha: alpha.unwrap_or(base.alpha),
        gamma: gamma.unwrap_or(base.gamma),
        c0: c0.unwrap_or(base.c0),
        eps: eps.unwrap_or(base.eps),
        smooth: strategies.contains(&StrategyArg::Smooth),
        bv: strategies.contains(&StrategyArg::Bv),
    })
}

fn discrepancy_row(r: &DiscrepancyRecord) -> Vec<String> {
    vec![
        r.m.to_string(),
        r.worst_a.to_string(),
        num(r.worst_y),
        num(r.sup_value),
        r.is_left_limit.to_string(),
    ]
}

const DISCREPANCY_HEADER: [&str; 5] = ["m", "worst_a", "worst_y", "sup_value", "is_left_limit"];

#[derive(Serialize)]
struct PsiOut {
    #[serde(serialize_with = "sig9")]
    y: f64,
    m: u64,
    a: u64,
    #[serde(serialize_with = "sig9")]
    value: f64,
}

fn dispatch(command: &Command) -> Result<Report> {
    match *command {
        Command::FExact { n } => f_exact_report(n),
        Command::WitnessBv { n, eps } => {
            check_n(n, MAX_N)?;
            check_eps(eps)?;
            witness_report(n, Strategy::Bv, strategy_bv(n, eps)?)
        }
        Command::WitnessSmooth { n, smooth, x } => {
            check_n(n, MAX_N)?;
            check_unit("alpha", smooth.alpha)?;
            check_unit("gamma", smooth.gamma)?;
            check_c0(smooth.c0)?;
            let x = x.unwrap_or(n);
            let rset = smooth_rset(x, &smooth)?;
            if rset.members().last().is_some_and(|&r| r >= n) {
                bail!("R-set interval for x = {x} reaches n = {n}; choose x < 4n");
            }
            witness_report(n, Strategy::Smooth, strategy_smooth(n, &rset, smooth.gamma)?)
        }
        Command::Survey {
            x,
            ref preset,
            alpha,
            gamma,
            c0,
            eps,
            ref strategies,
        } => {
            check_n(x, MAX_N)?;
            let cfg = survey_config(preset.as_deref(), alpha, gamma, c0, eps, strategies)?;
            cfg.validate()?;
            let report = survey_range(x, &cfg)?;
            let rows = report
                .records
                .iter()
                .map(|rec| {
                    let w = rec.witness;
                    vec![
                        rec.n.to_string(),
                        opt(rec.strategy),
                        opt(w.map(|w| w.k)),
                        opt(w.map(|w| w.p)),
                        opt(w.map(|w| w.q)),
                        opt(w.map(|w| w.r)),
                        opt(w.map(|w| w.score)),
                        rec.beta.map(num).unwrap_or_default(),
                        rec.is_exceptional().to_string(),
                    ]
                })
                .collect();
            Report::new(
                &report,
                vec!["n", "strategy", "k", "p", "q", "r", "score", "beta", "exceptional"],
                rows,
            )
        }
        Command::RsetDensity { z, alpha } => {
            check_unit("alpha", alpha)?;
            if z == 0 {
                bail!("z must be positive");
            }
            let d = rset_density(z, alpha)?;
            let row = vec![
                d.z.to_string(),
                num(d.alpha),
                d.count.to_string(),
                num(d.ratio),
                d.prime_count.to_string(),
                num(d.prime_fraction),
            ];
            Report::new(
                &d,
                vec!["z", "alpha", "count", "ratio", "prime_count", "prime_fraction"],
                vec![row],
            )
        }
        Command::Psi { y, m, a } => {
            let value = psi(y, m, a)?;
            let out = PsiOut { y, m, a, value };
            let row = vec![num(y), m.to_string(), a.to_string(), num(value)];
            Report::new(&out, vec!["y", "m", "a", "value"], vec![row])
        }
        Command::Discrepancy { z, m } => {
            let rec = max_discrepancy(z, m)?;
            Report::new(&rec, DISCREPANCY_HEADER.to_vec(), vec![discrepancy_row(&rec)])
        }
        Command::BvSum { z, b } => {
            let sum = bv_breakdown(z, b)?;
            let rows = sum.records.iter().map(discrepancy_row).collect();
            Report::new(&sum, DISCREPANCY_HEADER.to_vec(), rows)
        }
        Command::BsExperiment {
            big_n,
            trials,
            seed,
            size_constant,
            bound_constant,
        } => {
            let report = bs_experiment(&BsConfig {
                n: big_n,
                trials,
                seed,
                size_constant,
                bound_constant,
            })?;
            let rows = report
                .trials
                .iter()
                .map(|t| {
                    vec![
                        t.size_a.to_string(),
                        t.size_b.to_string(),
                        t.max_p.to_string(),
                        t.a.to_string(),
                        t.b.to_string(),
                        num(t.bound),
                        t.passed.to_string(),
                    ]
                })
                .collect();
            Report::new(
                &report,
                vec!["size_a", "size_b", "max_p", "a", "b", "bound", "passed"],
                rows,
            )
        }
        Command::Verify { ref input } => {
            let mut text = String::new();
            match input {
                Some(path) => {
                    text = fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?
                }
                None => {
                    io::stdin().read_to_string(&mut text)?;
                }
            }
            let summary = verify::verify_json(&text)?;
            let rows = summary
                .results
                .iter()
                .map(|(n, ok)| vec![n.to_string(), ok.to_string()])
                .collect();
            let all_valid = summary.all_valid();
            Ok(Report::new(&summary, vec!["n", "valid"], rows)?.absent(!all_valid))
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let report = dispatch(&cli.command)?;
    let bytes = report.render(cli.format)?;
    match &cli.out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(&bytes)?,
    }
    Ok(report.absent)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
