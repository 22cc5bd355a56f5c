//! Bifurcation-diagram data, cycle detection and fixed points.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lyapunov::MAX_GRID_POINTS;
use crate::map::{eval_derivative, eval_map, iterate_orbit, Axis, MapParams, Orbit, OrbitStatus};

/// Raw attractor samples per parameter value. Columns are not deduplicated.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationData {
    pub axis: Axis,
    /// `(parameter, sample)` grouped by ascending parameter.
    pub rows: Vec<(f64, f64)>,
}

impl BifurcationData {
    /// Samples grouped per parameter value, in orbit order.
    pub fn columns(&self) -> Vec<(f64, Vec<f64>)> {
        let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
        for &(p, x) in &self.rows {
            match out.last_mut() {
                Some((last, xs)) if *last == p => xs.push(x),
                _ => out.push((p, vec![x])),
            }
        }
        out
    }
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + i as f64 * h })
                .collect()
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn bifurcation_scan(
    template: &MapParams,
    axis: Axis,
    lo: f64,
    hi: f64,
    n_params: usize,
    n_samples: usize,
    transient: usize,
    x0: f64,
) -> Result<BifurcationData> {
    if n_params < 2 {
        return Err(Error::invalid(format!(
            "n_params must be >= 2, got {n_params}"
        )));
    }
    if n_samples == 0 {
        return Err(Error::invalid("n_samples must be >= 1"));
    }
    match n_params.checked_mul(n_samples) {
        Some(total) if total <= MAX_GRID_POINTS * 10 => {}
        _ => {
            return Err(Error::CapExceeded {
                what: "bifurcation samples",
                value: n_params as f64 * n_samples as f64,
                cap: (MAX_GRID_POINTS * 10) as f64,
            })
        }
    }
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::invalid(format!("bad parameter range [{lo}, {hi}]")));
    }
    let columns: Vec<Vec<(f64, f64)>> = linspace(lo, hi, n_params)
        .into_par_iter()
        .map(|value| {
            let params = template.with(axis, value);
            let orbit = iterate_orbit(&params, x0, n_samples, transient)?;
            Ok(orbit
                .samples
                .into_iter()
                .filter(|x| x.is_finite())
                .map(|x| (value, x))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(BifurcationData {
        axis,
        rows: columns.into_iter().flatten().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleKind {
    FixedPoint,
    Cycle(usize),
    Aperiodic,
    Escaped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleInfo {
    pub kind: CycleKind,
    /// The last `p` orbit samples for a period-`p` cycle, in visiting order.
    pub points: Vec<f64>,
    pub tolerance: f64,
}

impl CycleInfo {
    pub fn period(&self) -> Option<usize> {
        match self.kind {
            CycleKind::FixedPoint => Some(1),
            CycleKind::Cycle(p) => Some(p),
            _ => None,
        }
    }
}

fn tail_has_period(samples: &[f64], p: usize, window: usize, tol: f64) -> bool {
    let len = samples.len();
    (len - window - p..len - p).all(|k| {
        let x = samples[k];
        (samples[k + p] - x).abs() <= tol * x.abs().max(1.0)
    })
}

/// Smallest `p ≤ max_period` for which the last `2·max_period` samples repeat
/// with period `p` to relative tolerance `tol`.
pub fn detect_cycle(orbit: &Orbit, tol: f64, max_period: usize) -> Result<CycleInfo> {
    if !(tol > 0.0) || max_period == 0 {
        return Err(Error::invalid(
            "cycle tolerance and max_period must be positive",
        ));
    }
    if let OrbitStatus::Escaped { .. } = orbit.status {
        return Ok(CycleInfo {
            kind: CycleKind::Escaped,
            points: Vec::new(),
            tolerance: tol,
        });
    }
    let samples = &orbit.samples;
    if samples.len() / 4 < max_period {
        return Err(Error::invalid(format!(
            "orbit has {} samples, cycle detection up to period {max_period} needs {}",
            samples.len(),
            max_period.saturating_mul(4)
        )));
    }
    let window = 2 * max_period;
    for p in 1..=max_period {
        if tail_has_period(samples, p, window, tol) {
            let points = samples[samples.len() - p..].to_vec();
            let kind = if p == 1 {
                CycleKind::FixedPoint
            } else {
                CycleKind::Cycle(p)
            };
            return Ok(CycleInfo {
                kind,
                points,
                tolerance: tol,
            });
        }
    }
    Ok(CycleInfo {
        kind: CycleKind::Aperiodic,
        points: Vec::new(),
        tolerance: tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Attracting,
    Repelling,
    Neutral,
}

impl Stability {
    pub fn from_multiplier(derivative_magnitude: f64) -> Self {
        if (derivative_magnitude - 1.0).abs() <= 1e-9 {
            Stability::Neutral
        } else if derivative_magnitude < 1.0 {
            Stability::Attracting
        } else {
            Stability::Repelling
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Stability::Attracting => "attracting",
            Stability::Repelling => "repelling",
            Stability::Neutral => "neutral",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub x_star: f64,
    pub stability: Stability,
    pub derivative_magnitude: f64,
}

/// Residual bound every reported fixed point satisfies, relative to `max(1, |x*|)`.
pub const FIXED_POINT_RESIDUAL: f64 = 1e-9;

fn residual(params: &MapParams, x: f64) -> Option<f64> {
    eval_map(params, x).ok().map(|y| y - x)
}

/// Bisects `[a, b]` on a sign change of `g` down to adjacent doubles.
fn bisect(params: &MapParams, mut a: f64, mut b: f64, mut ga: f64) -> Option<f64> {
    for _ in 0..2000 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = residual(params, mid)?;
        if gm == 0.0 {
            return Some(mid);
        }
        if (gm < 0.0) == (ga < 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
        if (b - a) <= 1e-15 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
    }
    let ga = residual(params, a)?.abs();
    let gb = residual(params, b)?.abs();
    Some(if ga <= gb { a } else { b })
}

/// Scans `n_brackets` subintervals of `[lo, hi]` for sign changes of
/// `f(x) − x` and bisects each one. Brackets are log-spaced when
/// `0 < lo` and `hi / lo ≥ 10`, linear otherwise. Points where the map is
/// undefined (such as `x = 1` for the Zhang maps) are skipped, and roots
/// failing the residual check (poles mistaken for sign changes) are dropped.
pub fn find_fixed_points(
    params: &MapParams,
    lo: f64,
    hi: f64,
    n_brackets: usize,
) -> Result<Vec<FixedPoint>> {
    params.validate()?;
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi || n_brackets == 0 {
        return Ok(Vec::new());
    }
    if params.variant.is_zhang() && lo <= 0.0 {
        return Err(Error::invalid(
            "fixed-point brackets of the Zhang maps need lo > 0",
        ));
    }
    if n_brackets > MAX_GRID_POINTS {
        return Err(Error::CapExceeded {
            what: "brackets",
            value: n_brackets as f64,
            cap: MAX_GRID_POINTS as f64,
        });
    }
    let nodes: Vec<f64> = if lo > 0.0 && hi / lo >= 10.0 {
        let (a, b) = (lo.ln(), hi.ln());
        let mut v: Vec<f64> = linspace(a, b, n_brackets + 1)
            .into_iter()
            .map(f64::exp)
            .collect();
        v[0] = lo;
        v[n_brackets] = hi;
        v
    } else {
        linspace(lo, hi, n_brackets + 1)
    };
    let values: Vec<Option<f64>> = nodes.iter().map(|&x| residual(params, x)).collect();

    let mut roots = Vec::new();
    for i in 0..nodes.len() {
        if values[i] == Some(0.0) {
            roots.push(nodes[i]);
        }
        if i + 1 == nodes.len() {
            break;
        }
        if let (Some(ga), Some(gb)) = (values[i], values[i + 1]) {
            if ga != 0.0 && gb != 0.0 && (ga < 0.0) != (gb < 0.0) {
                if let Some(root) = bisect(params, nodes[i], nodes[i + 1], ga) {
                    roots.push(root);
                }
            }
        }
    }

    Ok(roots
        .into_iter()
        .filter_map(|x| {
            let g = residual(params, x)?;
            if g.abs() > FIXED_POINT_RESIDUAL * x.abs().max(1.0) {
                return None;
            }
            let derivative_magnitude = eval_derivative(params, x).ok()?.abs();
            Some(FixedPoint {
                x_star: x,
                stability: Stability::from_multiplier(derivative_magnitude),
                derivative_magnitude,
            })
        })
        .collect())
}
