use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use evasive_core::survey::{DEFAULT_ALPHA, DEFAULT_C0, DEFAULT_EPS};

#[derive(Debug, Parser)]
#[command(
    name = "evasive",
    version,
    about = "Edge-budget certificates for sparse graph evasiveness and prime-distribution experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (0 = one per core). Never changes the output.
    #[arg(long, env = "EVASIVE_THREADS", global = true)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact f(n) with a maximizing witness.
    FExact {
        #[arg(long)]
        n: u64,
    },
    /// Witness from two primes near n^{1/4-eps} and a prime in a progression.
    WitnessBv {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Witness from a prime r with a large prime factor of r - 1.
    WitnessSmooth {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        smooth: SmoothArgs,
        /// Anchor for the R-set interval [c0*x, x/4]; defaults to n.
        #[arg(long)]
        x: Option<u64>,
    },
    /// Run the strategies over every n in [x/2, x].
    Survey {
        #[arg(long)]
        x: u64,
        /// Named parameter set; explicit flags override it.
        #[arg(long, value_parser = ["corollary-1", "corollary-2"])]
        preset: Option<String>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        c0: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        /// Comma-separated strategies to run.
        #[arg(long, value_delimiter = ',', default_value = "smooth")]
        strategies: Vec<StrategyArg>,
    },
    /// Count primes r <= z with P(r - 1) > r^alpha.
    RsetDensity {
        #[arg(long)]
        z: u64,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
    },
    /// Chebyshev psi(y; m, a).
    Psi {
        #[arg(long)]
        y: f64,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        a: u64,
    },
    /// Worst-case |psi(y; m, a) - y/phi(m)| over y <= z and coprime a.
    Discrepancy {
        #[arg(long)]
        z: f64,
        #[arg(long)]
        m: u64,
    },
    /// Sum of worst-case discrepancies over m <= sqrt(z)/(log z)^B.
    BvSum {
        #[arg(long)]
        z: f64,
        #[arg(long = "b", default_value_t = 1.0)]
        b: f64,
    },
    /// Largest prime factor of differences over seeded random set pairs.
    BsExperiment {
        /// Sets are drawn from [1, N].
        #[arg(long = "n", default_value_t = 10_000)]
        big_n: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// c in #A #B >= c N (log N)^2.
        #[arg(long, default_value_t = 1.0)]
        size_constant: f64,
        /// Constant in the checked bound max P >= C sqrt(#A #B) / log N.
        #[arg(long, default_value_t = 0.05)]
        bound_constant: f64,
    },
    /// Re-validate certificates from a JSON report (file or stdin).
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, Args)]
pub struct SmoothArgs {
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub gamma: f64,
    #[arg(long, default_value_t = DEFAULT_C0)]
    pub c0: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Smooth,
    Bv,
}
