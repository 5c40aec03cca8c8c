use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hypersphere",
    version,
    about = "Hypercontractivity checks for the Poisson semigroup on spheres"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Quadrature tolerance, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = parse_tol)]
    pub tol: f64,
    /// Worker threads (defaults to available cores).
    #[arg(long, global = true, value_parser = parse_jobs)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Required status of every row (ratio, limit, logsob, subordination, necessity).
    #[arg(long, global = true, value_enum)]
    pub expect: Option<Expect>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Holds,
    Fails,
}

impl Expect {
    pub fn as_str(self) -> &'static str {
        match self {
            Expect::Holds => "holds",
            Expect::Fails => "fails",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare the Beckner coefficient against the square-root eigenvalue bound.
    Lemma {
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(1..))]
        n: Vec<u32>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k_max: u64,
    },
    /// Evaluate zonal witnesses over an (n, d) grid at the critical time.
    Scan {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        d_min: usize,
        #[arg(long)]
        d_max: usize,
    },
    /// Single norm ratio with its hypercontractive bound.
    Ratio {
        #[arg(
            long,
            conflicts_with = "gaussian",
            required_unless_present = "gaussian"
        )]
        n: Option<u32>,
        #[arg(long)]
        gaussian: bool,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
    },
    /// Approach of sphere ratios to the Gaussian ratio as n grows.
    Limit {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
    },
    /// Log-Sobolev inequality for a zonal function given by its coefficients.
    Logsob {
        #[arg(long)]
        n: u32,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        coeffs: Vec<f64>,
        #[arg(long, value_enum, default_value_t = RhsArg::Both)]
        rhs: RhsArg,
    },
    /// Subordination identity at the given points.
    Subordination {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
    },
    /// Second-order expansion of both norms for f = 1 + eps Y_1.
    Necessity {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        /// Defaults to the critical time.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [1e-2, 1e-3, 1e-4])]
        eps: Vec<f64>,
    },
    /// Randomized log-Sobolev and contraction checks on S^2 and S^3.
    Suite {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=40))]
        max_degree: u64,
    },
    /// Run the full reproduction suite and print a pass/fail summary.
    Repro,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RhsArg {
    Beckner,
    SqrtEigenvalue,
    Both,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v <= 1e-3 {
        Ok(v)
    } else {
        Err(format!("tolerance must lie in (0, 1e-3], got {s}"))
    }
}

fn parse_jobs(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("jobs must be at least 1".into())
    }
}
