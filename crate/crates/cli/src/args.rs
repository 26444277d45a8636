use crate::error::{invalid, CliResult};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Invariant states of the generalized squeezing operator exp(z a†^k - z* a^k).
#[derive(Debug, Parser)]
#[command(name = "gsqueeze", version)]
pub struct Cli {
    /// Worker threads for grid evaluations (defaults to all cores).
    #[arg(long, global = true, env = "GSQUEEZE_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the non-vanishing number-basis components of one state.
    State(StateArgs),
    /// Check the zero-eigenvalue residual, the G_k phase and invariance under
    /// truncated evolution.
    Verify(VerifyArgs),
    /// Classify divergence of number moments and position/momentum
    /// expectations.
    Moments(MomentsArgs),
    /// Evaluate the k = 3 momentum-space solutions and a synthesized state on
    /// a grid.
    Momentum(MomentumArgs),
    /// Emit the data behind the three figures (fig1, fig2, fig3).
    Figures(FiguresArgs),
    /// Run a quick battery of internal consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file, or `-` for standard output.
    #[arg(long, short, default_value = "-")]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = -6.0, allow_hyphen_values = true)]
    pub p_min: f64,
    #[arg(long, default_value_t = 6.0, allow_hyphen_values = true)]
    pub p_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 1201)]
    pub p_steps: usize,
}

impl GridArgs {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.p_min.is_finite() && self.p_max.is_finite() && self.p_min < self.p_max) {
            return Err(invalid(format!("need p-min < p-max, got [{}, {}]", self.p_min, self.p_max)));
        }
        if self.p_steps < 2 {
            return Err(invalid("p-steps must be at least 2"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.p_steps - 1;
        (0..=n)
            .map(|i| {
                // exact zero at the centre of symmetric grids
                let t = (2 * i) as f64 - n as f64;
                0.5 * (self.p_min + self.p_max) + 0.5 * (self.p_max - self.p_min) * t / n as f64
            })
            .collect()
    }
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long, default_value_t = 0)]
    pub alpha: u32,
    /// Components are written for m = 0..=m_max (n = alpha + 2mk).
    #[arg(long, default_value_t = 10_000)]
    pub m_max: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long, default_value_t = 0)]
    pub alpha: u32,
    /// Largest basis size; the invariance check also runs at dim/2 and dim/4.
    #[arg(long, default_value_t = 1024)]
    pub dim: usize,
    #[arg(long, default_value_t = 0.05)]
    pub tau: f64,
    /// Coupling in H_k = i r (a†^k - a^k).
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Target error of the evolution integrator.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl VerifyArgs {
    pub fn validate(&self) -> CliResult<()> {
        if self.dim <= 4 * self.k as usize || self.dim / 4 <= 4 * self.k as usize {
            return Err(invalid(format!("dim/4 must exceed 4k = {}", 4 * self.k)));
        }
        if !(self.tau.abs() <= 0.1) {
            return Err(invalid(format!("|tau| must be at most 0.1, got {}", self.tau)));
        }
        if !(self.r > 0.0) || !(self.tol > 0.0 && self.tol < 1e-3) {
            return Err(invalid("need r > 0 and 0 < tol < 1e-3"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Args)]
pub struct MomentsArgs {
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    /// Classify every k from --k up to this value.
    #[arg(long)]
    pub k_max: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub alpha: u32,
    #[arg(long, default_value_t = 3)]
    pub j_max: u32,
    /// Largest cutoff is 2^cutoff_exp; cutoffs start at 2^(cutoff_exp - 10).
    #[arg(long, default_value_t = 20)]
    pub cutoff_exp: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MomentumArgs {
    /// Which k = 3 state to synthesize.
    #[arg(long, default_value_t = 0)]
    pub alpha: u32,
    /// Number of number-basis terms in the synthesis.
    #[arg(long, default_value_t = 20_000)]
    pub m_max: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    /// Number-basis terms used to synthesize the momentum-space states.
    #[arg(long, default_value_t = 20_000)]
    pub m_max: usize,
    /// fig1 covers n = 0..=n_max.
    #[arg(long, default_value_t = 120)]
    pub n_max: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output directory.
    #[arg(long, short, default_value = ".")]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    #[command(flatten)]
    pub out: OutputArgs,
}
