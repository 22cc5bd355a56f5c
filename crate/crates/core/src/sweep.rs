//! `(c, α)` grid sweeps, regime classification and the search for the
//! constant `c` behind tabulated exponents.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bifurcation::linspace;
use crate::error::{Error, Result};
use crate::lyapunov::{lyapunov_exponent, LyapunovEstimate, MAX_GRID_POINTS};
use crate::map::{Axis, MapParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Chaotic,
    Periodic,
    Marginal,
    Escaped,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Chaotic => "chaotic",
            Regime::Periodic => "periodic",
            Regime::Marginal => "marginal",
            Regime::Escaped => "escaped",
        }
    }

    /// Sign classification of a non-escaped exponent.
    pub fn from_lambda(lambda: f64, marginal_band: f64) -> Self {
        if lambda > marginal_band {
            Regime::Chaotic
        } else if lambda < -marginal_band {
            Regime::Periodic
        } else {
            Regime::Marginal
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chaotic" => Ok(Regime::Chaotic),
            "periodic" => Ok(Regime::Periodic),
            "marginal" => Ok(Regime::Marginal),
            "escaped" => Ok(Regime::Escaped),
            other => Err(Error::invalid(format!("unknown regime `{other}`"))),
        }
    }
}

pub fn classify_regime(estimate: &LyapunovEstimate, marginal_band: f64) -> Regime {
    if estimate.is_escaped() || estimate.lambda.is_nan() {
        Regime::Escaped
    } else {
        Regime::from_lambda(estimate.lambda, marginal_band)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    /// Missing when the orbit escaped before any derivative term was accumulated.
    pub lambda: Option<f64>,
    pub regime: Regime,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub c_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    /// Row-major, one row per `c` value.
    pub cells: Vec<Cell>,
    pub marginal_band: f64,
}

impl SweepGrid {
    pub fn cell(&self, c_index: usize, alpha_index: usize) -> &Cell {
        &self.cells[c_index * self.alpha_values.len() + alpha_index]
    }

    /// `(c, α, cell)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, &Cell)> + '_ {
        let n_alpha = self.alpha_values.len();
        self.cells.iter().enumerate().map(move |(i, cell)| {
            (
                self.c_values[i / n_alpha],
                self.alpha_values[i % n_alpha],
                cell,
            )
        })
    }

    pub fn count(&self, regime: Regime) -> usize {
        self.cells.iter().filter(|c| c.regime == regime).count()
    }

    pub fn missing(&self) -> usize {
        self.cells.iter().filter(|c| c.lambda.is_none()).count()
    }

    /// Nearest-rank deciles `q₁₀, q₂₀, …, q₁₀₀` of the non-missing exponents.
    pub fn deciles(&self) -> Vec<f64> {
        let mut lambdas: Vec<f64> = self.cells.iter().filter_map(|c| c.lambda).collect();
        if lambdas.is_empty() {
            return Vec::new();
        }
        lambdas.sort_by(f64::total_cmp);
        let n = lambdas.len();
        (1..=10)
            .map(|k| {
                let rank = (k * n).div_ceil(10).max(1);
                lambdas[rank - 1]
            })
            .collect()
    }
}

/// Worker count and other knobs that never change the computed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepOptions {
    /// `0` uses the global rayon pool.
    pub threads: usize,
}

pub const MAX_WORKERS: usize = 1024;

/// Runs `job` on a dedicated pool of `threads` workers, or on the global pool
/// when `threads` is 0.
pub fn with_workers<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(job());
    }
    if threads > MAX_WORKERS {
        return Err(Error::CapExceeded {
            what: "threads",
            value: threads as f64,
            cap: MAX_WORKERS as f64,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start {threads} workers: {e}")))?;
    Ok(pool.install(job))
}

/// Sweep ranges: `n` linearly spaced values from `lo` to `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridAxis {
    pub fn new(lo: f64, hi: f64, n: usize) -> Self {
        GridAxis { lo, hi, n }
    }

    fn values(&self, name: &str) -> Result<Vec<f64>> {
        if self.n == 0 {
            return Err(Error::invalid(format!(
                "{name} grid needs at least one point"
            )));
        }
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo > self.hi {
            return Err(Error::invalid(format!(
                "bad {name} range [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(linspace(self.lo, self.hi, self.n))
    }
}

/// Lyapunov exponent and regime at every `(c, α)` grid point.
#[allow(clippy::too_many_arguments)]
pub fn grid_sweep(
    template: &MapParams,
    c_axis: GridAxis,
    alpha_axis: GridAxis,
    x0: f64,
    n_iter: usize,
    transient: usize,
    marginal_band: f64,
    options: SweepOptions,
) -> Result<SweepGrid> {
    if !(marginal_band > 0.0) {
        return Err(Error::invalid("marginal band must be > 0"));
    }
    match c_axis.n.checked_mul(alpha_axis.n) {
        Some(total) if total <= MAX_GRID_POINTS => {}
        _ => {
            return Err(Error::CapExceeded {
                what: "grid points",
                value: c_axis.n as f64 * alpha_axis.n as f64,
                cap: MAX_GRID_POINTS as f64,
            })
        }
    }
    let c_values = c_axis.values("c")?;
    let alpha_values = alpha_axis.values("alpha")?;
    let n_alpha = alpha_values.len();
    let total = c_values.len() * n_alpha;

    let cells = with_workers(options.threads, || {
        (0..total)
            .into_par_iter()
            .map(|i| {
                let params = template
                    .with(Axis::C, c_values[i / n_alpha])
                    .with(Axis::Alpha, alpha_values[i % n_alpha]);
                let est = lyapunov_exponent(&params, x0, n_iter, transient)?;
                Ok(Cell {
                    lambda: est.value(),
                    regime: classify_regime(&est, marginal_band),
                })
            })
            .collect::<Result<Vec<Cell>>>()
    })??;

    Ok(SweepGrid {
        c_values,
        alpha_values,
        cells,
        marginal_band,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub best_c: f64,
    pub rms_error: f64,
    /// `(c, rms)` for every candidate, ascending in `c`.
    pub candidates: Vec<(f64, f64)>,
}

/// Picks the candidate `c` minimising the RMS deviation between computed and
/// target exponents at the target `α` values. Escaped or undefined estimates
/// make a candidate's RMS infinite; ties go to the smaller `c`.
pub fn calibrate_c(
    targets: &[(f64, f64)],
    candidates: &[f64],
    template: &MapParams,
    x0: f64,
    n_iter: usize,
    transient: usize,
) -> Result<Calibration> {
    if targets.is_empty() || candidates.is_empty() {
        return Err(Error::invalid("calibration needs targets and candidates"));
    }
    let mut sorted = candidates.to_vec();
    sorted.sort_by(f64::total_cmp);

    let scored: Vec<(f64, f64)> = sorted
        .par_iter()
        .map(|&c| {
            let mut sq = 0.0;
            for &(alpha, target) in targets {
                let params = template.with(Axis::C, c).with(Axis::Alpha, alpha);
                let est = lyapunov_exponent(&params, x0, n_iter, transient)?;
                let dev = if est.is_escaped() || !est.lambda.is_finite() {
                    f64::INFINITY
                } else {
                    est.lambda - target
                };
                sq += dev * dev;
            }
            Ok((c, (sq / targets.len() as f64).sqrt()))
        })
        .collect::<Result<_>>()?;

    let (best_c, rms_error) = scored
        .iter()
        .copied()
        .fold(None, |best: Option<(f64, f64)>, (c, rms)| match best {
            Some((_, b)) if rms >= b => best,
            _ => Some((c, rms)),
        })
        .expect("candidates non-empty");

    Ok(Calibration {
        best_c,
        rms_error,
        candidates: scored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyapunov::EstimateStatus;

    fn estimate(lambda: f64, status: EstimateStatus) -> LyapunovEstimate {
        LyapunovEstimate {
            lambda,
            n_used: 1000,
            transient: 0,
            status,
        }
    }

    #[test]
    fn classify_examples() {
        let ok = EstimateStatus::Converged;
        assert_eq!(classify_regime(&estimate(0.21, ok), 0.01), Regime::Chaotic);
        assert_eq!(
            classify_regime(&estimate(-0.348, ok), 0.01),
            Regime::Periodic
        );
        assert_eq!(classify_regime(&estimate(0.0, ok), 0.01), Regime::Marginal);
        assert_eq!(
            classify_regime(&estimate(0.5, EstimateStatus::Escaped(3)), 0.01),
            Regime::Escaped
        );
        assert_eq!(
            classify_regime(
                &estimate(f64::NEG_INFINITY, EstimateStatus::DegenerateDerivative(9)),
                0.01
            ),
            Regime::Periodic
        );
    }

    #[test]
    fn logistic_row_is_periodic() {
        // c and alpha do not enter the logistic map; one row spans r via the template.
        let grid = grid_sweep(
            &MapParams::logistic(2.75),
            GridAxis::new(1.0, 1.0, 1),
            GridAxis::new(0.0, 1.0, 5),
            0.3,
            5000,
            500,
            0.01,
            SweepOptions::default(),
        )
        .unwrap();
        assert_eq!(grid.cells.len(), 5);
        assert_eq!(grid.count(Regime::Periodic), 5);
    }

    #[test]
    fn single_cell_matches_direct_call() {
        let template = MapParams::zhang1(std::f64::consts::PI, 0.0, 0.0);
        let grid = grid_sweep(
            &template,
            GridAxis::new(10.5, 10.5, 1),
            GridAxis::new(3.5, 3.5, 1),
            0.4,
            5000,
            100,
            0.01,
            SweepOptions::default(),
        )
        .unwrap();
        let direct = lyapunov_exponent(
            &template.with(Axis::C, 10.5).with(Axis::Alpha, 3.5),
            0.4,
            5000,
            100,
        )
        .unwrap();
        assert_eq!(grid.cells[0].lambda, direct.value());
        assert_eq!(grid.cells[0].regime, classify_regime(&direct, 0.01));
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        let t = MapParams::default();
        let run = |c: GridAxis, a: GridAxis| {
            grid_sweep(&t, c, a, 0.4, 1000, 0, 0.01, SweepOptions::default())
        };
        assert!(run(GridAxis::new(1.0, 0.0, 3), GridAxis::new(0.0, 1.0, 3)).is_err());
        assert!(run(GridAxis::new(0.0, 1.0, 0), GridAxis::new(0.0, 1.0, 3)).is_err());
        assert!(grid_sweep(
            &t,
            GridAxis::new(0.0, 1.0, 2),
            GridAxis::new(0.0, 1.0, 2),
            0.4,
            1000,
            0,
            0.0,
            SweepOptions::default()
        )
        .is_err());
    }

    #[test]
    fn deciles_are_sorted() {
        let grid = SweepGrid {
            c_values: vec![0.0],
            alpha_values: (0..7).map(f64::from).collect(),
            cells: [3.0, -1.0, 2.0, 0.5, -4.0, 1.0, 0.0]
                .iter()
                .map(|&l| Cell {
                    lambda: Some(l),
                    regime: Regime::from_lambda(l, 0.01),
                })
                .collect(),
            marginal_band: 0.01,
        };
        let d = grid.deciles();
        assert_eq!(d.len(), 10);
        assert!(d.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(d[9], 3.0);
        assert_eq!(d[0], -4.0);
    }

    #[test]
    fn calibration_singleton() {
        let cal = calibrate_c(
            &[(0.0, -1.0)],
            &[2.0],
            &MapParams::zhang1(std::f64::consts::PI, 0.0, 0.0),
            0.4,
            2000,
            100,
        )
        .unwrap();
        assert_eq!(cal.best_c, 2.0);
        assert!(cal.rms_error.is_finite());
        assert_eq!(cal.candidates, vec![(2.0, cal.rms_error)]);
    }

    #[test]
    fn calibration_ties_prefer_smaller_c() {
        // The logistic map ignores c, so every candidate scores the same.
        let cal = calibrate_c(
            &[(0.0, 0.0)],
            &[5.0, 3.0, 4.0],
            &MapParams::logistic(2.5),
            0.3,
            2000,
            100,
        )
        .unwrap();
        assert_eq!(cal.best_c, 3.0);
    }

    #[test]
    fn calibration_needs_inputs() {
        let t = MapParams::default();
        assert!(calibrate_c(&[], &[1.0], &t, 0.4, 1000, 0).is_err());
        assert!(calibrate_c(&[(0.0, 0.0)], &[], &t, 0.4, 1000, 0).is_err());
    }
}
