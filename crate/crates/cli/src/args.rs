//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use yitang_core::arith::EnvelopeRegime;
use yitang_core::{defaults, Axis, LogPower, MapParams, MapVariant};

#[derive(Debug, Parser)]
#[command(
    name = "yitang",
    version,
    about = "Yitang map dynamics and quadratic-field arithmetic, as CSV"
)]
pub struct Cli {
    /// Write CSV here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// `key = value` defaults, overridden by explicit flags.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

pub const SUBCOMMANDS: &[&str] = &[
    "lyap",
    "curve",
    "sweep",
    "bifurcate",
    "cycles",
    "fixedpoints",
    "orbit",
    "lfunc",
    "psi",
    "envelope",
    "genus",
    "dg",
    "calibrate",
];

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One Lyapunov exponent.
    #[command(args_override_self = true)]
    Lyap(MapArgs),
    /// Lyapunov exponent along a parameter axis.
    #[command(args_override_self = true)]
    Curve(CurveArgs),
    /// Lyapunov exponent and regime over a (c, alpha) grid.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Attractor samples along a parameter axis.
    #[command(args_override_self = true)]
    Bifurcate(BifurcateArgs),
    /// Cycle detection along a parameter axis.
    #[command(args_override_self = true)]
    Cycles(CyclesArgs),
    /// Fixed points in an interval.
    #[command(args_override_self = true)]
    Fixedpoints(FixedPointArgs),
    /// Post-transient orbit trace.
    #[command(args_override_self = true)]
    Orbit(MapArgs),
    /// L(1, chi_d) by class-number formula and character sum.
    #[command(args_override_self = true)]
    Lfunc(LfuncArgs),
    /// Chebyshev psi in residue classes.
    #[command(args_override_self = true)]
    Psi(PsiArgs),
    /// Prime-counting error envelope.
    #[command(args_override_self = true)]
    Envelope(EnvelopeArgs),
    /// One-class-per-genus scan of imaginary quadratic fields.
    #[command(args_override_self = true)]
    Genus(GenusArgs),
    /// Growth of the smallest discriminant with g prime factors.
    #[command(args_override_self = true)]
    Dg(DgArgs),
    /// Fit c to target Lyapunov exponents.
    #[command(args_override_self = true)]
    Calibrate(CalibrateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    #[arg(long, default_value = "zhang1")]
    pub map: MapVariant,
    #[arg(long, default_value_t = defaults::BETA, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, default_value_t = defaults::C, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long = "eps-log", default_value_t = std::f64::consts::PI, allow_negative_numbers = true)]
    pub eps_log: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long = "log-power", default_value = "absolute")]
    pub log_power: LogPower,
    #[arg(long, default_value_t = defaults::X0, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, default_value_t = defaults::ITERATIONS)]
    pub iters: usize,
    #[arg(long, default_value_t = defaults::TRANSIENT)]
    pub transient: usize,
}

impl MapArgs {
    pub fn params(&self) -> MapParams {
        MapParams {
            variant: self.map,
            beta: self.beta,
            c: self.c,
            alpha: self.alpha,
            eps_log: self.eps_log,
            r: self.r,
            log_power: self.log_power,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, default_value = "alpha")]
    pub axis: Axis,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub step: f64,
    /// Worker count, 0 for all cores. Does not change results.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long = "c-lo", default_value_t = 0.0005, allow_negative_numbers = true)]
    pub c_lo: f64,
    #[arg(long = "c-hi", default_value_t = 0.007, allow_negative_numbers = true)]
    pub c_hi: f64,
    #[arg(long = "n-c", default_value_t = 20)]
    pub n_c: usize,
    #[arg(
        long = "alpha-lo",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub alpha_lo: f64,
    #[arg(
        long = "alpha-hi",
        default_value_t = 10.0,
        allow_negative_numbers = true
    )]
    pub alpha_hi: f64,
    #[arg(long = "n-alpha", default_value_t = 40)]
    pub n_alpha: usize,
    /// Half-width of the band around zero classified as marginal.
    #[arg(long, default_value_t = defaults::MARGINAL_BAND, allow_negative_numbers = true)]
    pub band: f64,
    /// Worker count, 0 for all cores. Does not change results.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BifurcateArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, default_value = "alpha")]
    pub axis: Axis,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long = "n-params", default_value_t = 200)]
    pub n_params: usize,
    #[arg(long = "n-samples", default_value_t = 100)]
    pub n_samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct CyclesArgs {
    /// `--iters` is the number of post-transient samples examined.
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, default_value = "alpha")]
    pub axis: Axis,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long = "n-params", default_value_t = 50)]
    pub n_params: usize,
    #[arg(long, default_value_t = defaults::CYCLE_TOLERANCE, allow_negative_numbers = true)]
    pub tol: f64,
    #[arg(long = "max-period", default_value_t = defaults::MAX_PERIOD)]
    pub max_period: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FixedPointArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 1e6, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long, default_value_t = 10_000)]
    pub brackets: usize,
}

#[derive(Debug, Clone, Args)]
pub struct LfuncArgs {
    /// A single discriminant. Overrides the range.
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<i64>,
    #[arg(long = "d-min", default_value_t = -100, allow_negative_numbers = true)]
    pub d_min: i64,
    #[arg(long = "d-max", default_value_t = 100, allow_negative_numbers = true)]
    pub d_max: i64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c1: f64,
    /// Exponent of the logarithmic lower bound.
    #[arg(long = "zhang-a", default_value_t = defaults::ZHANG_A, allow_negative_numbers = true)]
    pub zhang_a: f64,
}

#[derive(Debug, Clone, Args)]
pub struct PsiArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, default_value_t = 1)]
    pub q: u64,
    /// A single residue class instead of all of them.
    #[arg(long)]
    pub a: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct EnvelopeArgs {
    /// One or more x values, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub x: Vec<f64>,
    #[arg(long, default_value = "page")]
    pub regime: EnvelopeRegime,
    #[arg(long, default_value_t = 3)]
    pub q: u64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c0: f64,
    #[arg(long = "zhang-a", default_value_t = defaults::ZHANG_A, allow_negative_numbers = true)]
    pub zhang_a: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub epsilon: f64,
    #[arg(long = "a-eps", default_value_t = 1.0, allow_negative_numbers = true)]
    pub a_eps: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GenusArgs {
    /// Scan negative fundamental discriminants with |d| up to this.
    #[arg(long, default_value_t = 100_000)]
    pub limit: u64,
    /// Emit only discriminants with one class per genus.
    #[arg(long)]
    pub flagged: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DgArgs {
    #[arg(long = "g-max", default_value_t = 20)]
    pub g_max: u32,
}

#[derive(Debug, Clone, Args)]
pub struct CalibrateArgs {
    #[command(flatten)]
    pub map: MapArgs,
    /// `alpha:lambda` pairs, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        value_parser = parse_target,
        default_value = "0:-1.15226,0.5:-0.215057,1:-0.49284",
        allow_negative_numbers = true
    )]
    pub targets: Vec<(f64, f64)>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.001,0.01,0.1,1,10,100",
        allow_negative_numbers = true
    )]
    pub candidates: Vec<f64>,
}

fn parse_target(s: &str) -> Result<(f64, f64), String> {
    let (a, l) = s
        .split_once(':')
        .ok_or_else(|| format!("expected alpha:lambda, got `{s}`"))?;
    let a = a
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad alpha `{a}`: {e}"))?;
    let l = l
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad lambda `{l}`: {e}"))?;
    Ok((a, l))
}
