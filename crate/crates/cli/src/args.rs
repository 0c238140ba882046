//! Command-line grammar.

use std::path::PathBuf;

use bohr_lab::{Order, VanishingOrderSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bohr-lab", version, about = "Sharp Bohr–Rogosinski radii for concave univalent maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a radius equation.
    Radius(RadiusArgs),
    /// Tabulate Taylor coefficients A_n (opening angle) or c_n(p) (pole).
    Coeffs(CoeffsArgs),
    /// Tabulate a radius function on a grid, flagging the root.
    Scan(ScanArgs),
    /// Run the sampled certification harness.
    Verify(VerifyArgs),
    /// Run the acceptance battery.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format; each subcommand has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Inequality: 1 and 2 for the opening-angle family, 4 for the pole family.
    #[arg(long, value_parser = parse_thm)]
    pub thm: Option<u8>,
    /// Opening-angle parameter, 1 ≤ α ≤ 2.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Pole position, 0 < p < 1.
    #[arg(long)]
    pub p: Option<f64>,
    /// First index of the coefficient sum.
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    /// Vanishing order of w₀ (integer or "inf").
    #[arg(long, default_value = "inf", value_parser = parse_order)]
    pub m0: Order,
    /// Vanishing order of w₁ (integer or "inf").
    #[arg(long, default_value = "inf", value_parser = parse_order)]
    pub m1: Order,
    /// Vanishing order of w₂ (integer or "inf").
    #[arg(long, default_value = "inf", value_parser = parse_order)]
    pub m2: Order,
    /// Vanishing orders h(n) of the w*_n: "n" or "a*n+b".
    #[arg(long, default_value = "n", value_parser = parse_h)]
    pub h: VanishingOrderSpec,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Bisection tolerance on the bracket width.
    #[arg(long, default_value_t = bohr_lab::radius::DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    /// First index.
    #[arg(long, default_value_t = 1)]
    pub from: usize,
    /// Last index (inclusive).
    #[arg(long, default_value_t = 10)]
    pub to: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Right end of the grid; defaults to twice the root, clipped to the domain.
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Bisection tolerance for the flagged root row.
    #[arg(long, default_value_t = bohr_lab::radius::DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict the run to one problem; without --thm the default suite runs.
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Random draws per check family.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Test radius as a multiple of the reported radius (single problem only).
    #[arg(long, default_value_t = 0.9)]
    pub radius_factor: f64,
    /// Slack allowed on every inequality.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Truncation order of composed series.
    #[arg(long, default_value_t = bohr_lab::DEFAULT_ORDER)]
    pub order: usize,
    /// Evaluate samples on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Negative control: perturb the coefficient recurrence.
    #[arg(long, hide = true)]
    pub tamper_coefficients: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_thm(s: &str) -> Result<u8, String> {
    match s {
        "1" => Ok(1),
        "2" => Ok(2),
        "4" => Ok(4),
        _ => Err(format!("expected 1, 2 or 4, got {s:?}")),
    }
}

fn parse_order(s: &str) -> Result<Order, String> {
    s.parse().map_err(|e: bohr_lab::Error| e.to_string())
}

fn parse_h(s: &str) -> Result<VanishingOrderSpec, String> {
    s.parse().map_err(|e: bohr_lab::Error| e.to_string())
}
