use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use robin_gap::RobinParam;

use crate::config::{Command, EngineChoice, Family, Format, RunConfig};
use crate::parse_bc;

/// Spectral gaps of -u'' + V u = λ u with Robin boundary conditions.
#[derive(Debug, Parser)]
#[command(name = "robin-gap", version, about)]
pub struct Cli {
    /// JSON run configuration used instead of a subcommand.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Sub>,
}

#[derive(Debug, Args)]
pub struct Problem {
    /// Potential as inline JSON or a path to a JSON file (default: zero).
    #[arg(long)]
    pub potential: Option<String>,
    /// Left Robin parameter, a number or "inf" for Dirichlet.
    #[arg(long, value_parser = parse_bc, allow_negative_numbers = true, default_value = "0")]
    pub alpha: RobinParam,
    /// Right Robin parameter, a number or "inf" for Dirichlet.
    #[arg(long, value_parser = parse_bc, allow_negative_numbers = true, default_value = "0")]
    pub beta: RobinParam,
    /// Interval length (default: the potential's own, else π).
    #[arg(long = "L")]
    pub length: Option<f64>,
    /// Grid cells of the base level.
    #[arg(long = "N", default_value_t = robin_gap::solver::DEFAULT_CELLS)]
    pub cells: usize,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Lowest eigenvalues (and eigenfunctions for the grid engines).
    Eig {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = EngineChoice::Fd)]
        engine: EngineChoice,
        #[command(flatten)]
        output: Output,
    },
    /// Gap λ₂ - λ₁ with crossing points of the eigenfunctions.
    Gap {
        #[command(flatten)]
        problem: Problem,
        #[command(flatten)]
        output: Output,
    },
    /// Gap of the step m·1(0,π/2) against m, one curve per alpha.
    SweepM {
        #[arg(long, value_parser = parse_bc, allow_negative_numbers = true, num_args = 1.., default_value = "0")]
        alpha: Vec<RobinParam>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        m_min: f64,
        #[arg(long, default_value_t = 30.0)]
        m_max: f64,
        #[arg(long, default_value_t = 600)]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Gap of the step m·1(0,π/2) against alpha, one curve per m.
    SweepAlpha {
        #[arg(long, num_args = 1.., default_value = "0")]
        m: Vec<f64>,
        #[arg(long, default_value_t = -6.0, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, default_value_t = 6.0, allow_negative_numbers = true)]
        alpha_max: f64,
        #[arg(long, default_value_t = 240)]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Runs named verification suites ("all" for every suite).
    Verify {
        #[arg(long, num_args = 1.., default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Minimizes the gap over a one-parameter family.
    Search {
        #[arg(long, value_enum, default_value_t = Family::Linear)]
        family: Family,
        #[arg(long, value_parser = parse_bc, allow_negative_numbers = true, default_value = "0")]
        alpha: RobinParam,
        #[arg(long, value_parser = parse_bc, allow_negative_numbers = true, default_value = "0")]
        beta: RobinParam,
        /// Lower end of the parameter range.
        #[arg(long, allow_negative_numbers = true)]
        lo: Option<f64>,
        /// Upper end of the parameter range (largest t for the off-centre family).
        #[arg(long, allow_negative_numbers = true)]
        hi: Option<f64>,
        /// Left end of the support of the off-centre step.
        #[arg(long, allow_negative_numbers = true, default_value_t = -std::f64::consts::FRAC_PI_4)]
        tau: f64,
        #[arg(long = "L")]
        length: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

fn with_problem(mut c: RunConfig, p: Problem) -> RunConfig {
    c.potential = p.potential.map(serde_json::Value::String);
    c.alpha = p.alpha;
    c.beta = p.beta;
    c.length = p.length;
    c.cells = p.cells;
    c
}

fn with_output(mut c: RunConfig, o: Output) -> RunConfig {
    c.output = o.output;
    c.format = o.format;
    c
}

impl Sub {
    pub fn into_config(self) -> RunConfig {
        match self {
            Sub::Eig {
                problem,
                k,
                engine,
                output,
            } => {
                let mut c =
                    with_output(with_problem(RunConfig::new(Command::Eig), problem), output);
                c.k = k;
                c.engine = engine;
                c
            }
            Sub::Gap { problem, output } => {
                with_output(with_problem(RunConfig::new(Command::Gap), problem), output)
            }
            Sub::SweepM {
                alpha,
                m_min,
                m_max,
                steps,
                output,
            } => {
                let mut c = with_output(RunConfig::new(Command::SweepM), output);
                c.alphas = alpha;
                c.m_min = m_min;
                c.m_max = m_max;
                c.steps = steps;
                c
            }
            Sub::SweepAlpha {
                m,
                alpha_min,
                alpha_max,
                steps,
                output,
            } => {
                let mut c = with_output(RunConfig::new(Command::SweepAlpha), output);
                c.ms = m;
                c.alpha_min = alpha_min;
                c.alpha_max = alpha_max;
                c.steps = steps;
                c
            }
            Sub::Verify {
                suite,
                seed,
                output,
            } => {
                let mut c = with_output(RunConfig::new(Command::Verify), output);
                c.suites = suite;
                c.seed = seed;
                c
            }
            Sub::Search {
                family,
                alpha,
                beta,
                lo,
                hi,
                tau,
                length,
                output,
            } => {
                let mut c = with_output(RunConfig::new(Command::Search), output);
                c.family = family;
                c.alpha = alpha;
                c.beta = beta;
                c.lo = lo;
                c.hi = hi;
                c.tau = tau;
                c.length = length;
                c
            }
        }
    }
}
