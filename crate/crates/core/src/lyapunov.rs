//! Lyapunov exponents of one-dimensional maps from the orbit average of
//! `ln|f′(x_k)|`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::map::{check_start, ln_abs_derivative, Axis, MapParams};

/// `|f′(x)|` below this threshold counts as a superstable pass.
pub const DEGENERATE_DERIVATIVE: f64 = 1e-300;

/// Smallest iteration budget [`lyapunov_exponent`] accepts.
pub const MIN_ITERATIONS: usize = 1000;

/// Largest parameter grid any scan accepts.
pub const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateStatus {
    Converged,
    /// The orbit left the domain after `step` applications (transient included).
    Escaped(usize),
    /// `count` iterates had `|f′| < 1e-300` and were left out of the average.
    DegenerateDerivative(usize),
}

impl EstimateStatus {
    pub fn label(&self) -> &'static str {
        match self {
            EstimateStatus::Converged => "converged",
            EstimateStatus::Escaped(_) => "escaped",
            EstimateStatus::DegenerateDerivative(_) => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovEstimate {
    /// Nats per iteration. NaN when no term was accumulated before an
    /// escape, `-∞` when every term was degenerate.
    pub lambda: f64,
    /// Number of `ln|f′|` terms in the average.
    pub n_used: usize,
    pub transient: usize,
    pub status: EstimateStatus,
}

impl LyapunovEstimate {
    pub fn is_escaped(&self) -> bool {
        matches!(self.status, EstimateStatus::Escaped(_))
    }

    /// `λ` if at least one derivative term was accumulated.
    pub fn value(&self) -> Option<f64> {
        (!self.lambda.is_nan()).then_some(self.lambda)
    }
}

/// Estimates `λ = (1/N) Σ ln|f′(x_k)|` over `x_T, …, x_{T+n-1}` where `T` is
/// the transient.
pub fn lyapunov_exponent(
    params: &MapParams,
    x0: f64,
    n: usize,
    transient: usize,
) -> Result<LyapunovEstimate> {
    params.validate()?;
    if n < MIN_ITERATIONS {
        return Err(Error::invalid(format!(
            "lyapunov iteration budget must be >= {MIN_ITERATIONS}, got {n}"
        )));
    }
    check_start(params, x0)?;

    let ln_threshold = DEGENERATE_DERIVATIVE.ln();
    let mut x = x0;
    let mut sum = 0.0;
    let mut used = 0usize;
    let mut degenerate = 0usize;
    let mut escaped = None;

    for step in 0..transient.saturating_add(n) {
        if step >= transient {
            match ln_abs_derivative(params, x) {
                Ok(l) if l < ln_threshold => degenerate += 1,
                Ok(l) => {
                    sum += l;
                    used += 1;
                }
                Err(_) => {
                    escaped = Some(step);
                    break;
                }
            }
        }
        match crate::map::eval_map(params, x) {
            Ok(y) => x = y,
            Err(_) => {
                escaped = Some(step);
                break;
            }
        }
    }

    let lambda = if used > 0 {
        sum / used as f64
    } else if escaped.is_none() && degenerate > 0 {
        f64::NEG_INFINITY
    } else {
        f64::NAN
    };
    let status = match escaped {
        Some(step) => EstimateStatus::Escaped(step),
        None if degenerate > 0 => EstimateStatus::DegenerateDerivative(degenerate),
        None => EstimateStatus::Converged,
    };
    Ok(LyapunovEstimate {
        lambda,
        n_used: used,
        transient,
        status,
    })
}

/// Grid `lo, lo + step, …` up to and including `hi` (with a small relative
/// allowance so that `hi` lands on the grid when it should).
pub fn stepped_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
        return Err(Error::invalid("range bounds and step must be finite"));
    }
    if step <= 0.0 {
        return Err(Error::invalid(format!("step must be > 0, got {step}")));
    }
    if lo > hi {
        return Err(Error::invalid(format!("inverted range [{lo}, {hi}]")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() + 1.0;
    if count > MAX_GRID_POINTS as f64 {
        return Err(Error::CapExceeded {
            what: "grid points",
            value: count,
            cap: MAX_GRID_POINTS as f64,
        });
    }
    let count = count as usize;
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

/// `λ` along one parameter axis, one fresh orbit from `x0` per grid point.
#[allow(clippy::too_many_arguments)]
pub fn lyapunov_curve(
    template: &MapParams,
    axis: Axis,
    lo: f64,
    hi: f64,
    step: f64,
    x0: f64,
    n: usize,
    transient: usize,
) -> Result<Vec<(f64, LyapunovEstimate)>> {
    let grid = stepped_grid(lo, hi, step)?;
    grid.into_par_iter()
        .map(|value| {
            let params = template.with(axis, value);
            lyapunov_exponent(&params, x0, n, transient).map(|est| (value, est))
        })
        .collect()
}
