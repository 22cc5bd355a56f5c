//! Numerical workbench for the discrete log-power maps built from the
//! class-number formula for `L(1, χ)`, together with the number theory they
//! are built from.
//!
//! The crate is organised by concern:
//!
//! - [`map`]: the map family, its analytic derivative and orbit iteration.
//! - [`lyapunov`]: Lyapunov exponent estimates and λ-versus-parameter curves.
//! - [`bifurcation`]: bifurcation data, cycle detection and fixed points.
//! - [`sweep`]: parallel `(c, α)` grid sweeps, regime classification and
//!   calibration of the constant `c`.
//! - [`arith`]: Kronecker characters, class numbers, fundamental units,
//!   `L(1, χ)`, Chebyshev `ψ(x; q, a)`, error envelopes and genus theory.

// NaN must fail these range checks, so `!(x > 0.0)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod bifurcation;
pub mod error;
pub mod lyapunov;
pub mod map;
pub mod sweep;

pub use bifurcation::{
    bifurcation_scan, detect_cycle, find_fixed_points, BifurcationData, CycleInfo, CycleKind,
    FixedPoint, Stability,
};
pub use error::{DomainError, Error, Result};
pub use lyapunov::{
    lyapunov_curve, lyapunov_exponent, EstimateStatus, LyapunovEstimate, MAX_GRID_POINTS,
};
pub use map::{
    eval_derivative, eval_map, iterate_orbit, ln_abs_derivative, spow, Axis, LogPower, MapParams,
    MapVariant, Orbit, OrbitStatus,
};
pub use sweep::{
    calibrate_c, classify_regime, grid_sweep, with_workers, Calibration, Cell, GridAxis, Regime,
    SweepGrid, SweepOptions, MAX_WORKERS,
};

/// Defaults shared by the library entry points and the CLI.
pub mod defaults {
    /// `β = 2πh/w` with `h = 1`, `w = 2`.
    pub const BETA: f64 = std::f64::consts::PI;
    pub const C: f64 = 100.0;
    pub const X0: f64 = 0.4;
    pub const ITERATIONS: usize = 50_000;
    pub const TRANSIENT: usize = 1_000;
    pub const MARGINAL_BAND: f64 = 0.01;
    pub const CYCLE_TOLERANCE: f64 = 1e-6;
    pub const MAX_PERIOD: usize = 64;
    /// Exponent in the lower bound `L(1, χ) > c₁ (log D)^{-A}`.
    pub const ZHANG_A: f64 = 2022.0;
}
