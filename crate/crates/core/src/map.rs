//! The one-dimensional map family
//!
//! ```text
//! Zhang1:   x ↦ β / √x + c · P(ln x, α)
//! Zhang2:   x ↦ (β · log|ε| / π) / √x + c · P(ln x, α)
//! Logistic: x ↦ r x (1 − x)
//! ```
//!
//! where `P(ℓ, α)` is the real extension of `ℓ^{-α}` selected by
//! [`LogPower`]. Logs are natural logs throughout.

use std::fmt;
use std::str::FromStr;

use crate::error::{DomainError, Error, Result};

/// Smallest `|ln x|` accepted before the log-power term is considered singular.
pub const LOG_SINGULARITY: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapVariant {
    /// Odd character case, `χ(-1) = -1`.
    Zhang1,
    /// Even character case, `χ(-1) = 1`.
    Zhang2,
    /// Control map `r x (1 − x)`.
    Logistic,
}

impl MapVariant {
    pub fn name(self) -> &'static str {
        match self {
            MapVariant::Zhang1 => "zhang1",
            MapVariant::Zhang2 => "zhang2",
            MapVariant::Logistic => "logistic",
        }
    }

    pub fn is_zhang(self) -> bool {
        !matches!(self, MapVariant::Logistic)
    }
}

impl FromStr for MapVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zhang1" => Ok(MapVariant::Zhang1),
            "zhang2" => Ok(MapVariant::Zhang2),
            "logistic" => Ok(MapVariant::Logistic),
            other => Err(Error::invalid(format!("unknown map `{other}`"))),
        }
    }
}

impl fmt::Display for MapVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Real-valued reading of `(ln x)^{-α}` when `ln x < 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum LogPower {
    /// `|ln x|^{-α}`. The log-power term stays positive, so orbits of the
    /// Zhang maps never leave `x > 0`.
    #[default]
    Absolute,
    /// `spow(ln x, -α) = sign(ln x) · |ln x|^{-α}`.
    Signed,
}

impl LogPower {
    pub fn name(self) -> &'static str {
        match self {
            LogPower::Absolute => "absolute",
            LogPower::Signed => "signed",
        }
    }
}

impl FromStr for LogPower {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "absolute" | "abs" => Ok(LogPower::Absolute),
            "signed" => Ok(LogPower::Signed),
            other => Err(Error::invalid(format!(
                "unknown log-power convention `{other}`"
            ))),
        }
    }
}

/// Parameter a curve, sweep or scan varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Alpha,
    C,
    R,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Alpha => "alpha",
            Axis::C => "c",
            Axis::R => "r",
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" => Ok(Axis::Alpha),
            "c" => Ok(Axis::C),
            "r" => Ok(Axis::R),
            other => Err(Error::invalid(format!("unknown axis `{other}`"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Full parameterisation of the map family.
///
/// Fields that do not apply to `variant` are carried along and ignored, so a
/// single template can be re-targeted along any [`Axis`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    pub variant: MapVariant,
    /// `β = 2πh/w`.
    pub beta: f64,
    pub c: f64,
    pub alpha: f64,
    /// `log|ε|`, Zhang2 only.
    pub eps_log: f64,
    /// Logistic parameter.
    pub r: f64,
    pub log_power: LogPower,
}

impl Default for MapParams {
    fn default() -> Self {
        MapParams {
            variant: MapVariant::Zhang1,
            beta: crate::defaults::BETA,
            c: crate::defaults::C,
            alpha: 2.0,
            eps_log: std::f64::consts::PI,
            r: 4.0,
            log_power: LogPower::default(),
        }
    }
}

impl MapParams {
    pub fn zhang1(beta: f64, c: f64, alpha: f64) -> Self {
        MapParams {
            variant: MapVariant::Zhang1,
            beta,
            c,
            alpha,
            ..Default::default()
        }
    }

    pub fn zhang2(beta: f64, c: f64, alpha: f64, eps_log: f64) -> Self {
        MapParams {
            variant: MapVariant::Zhang2,
            beta,
            c,
            alpha,
            eps_log,
            ..Default::default()
        }
    }

    pub fn logistic(r: f64) -> Self {
        MapParams {
            variant: MapVariant::Logistic,
            r,
            ..Default::default()
        }
    }

    pub fn with_log_power(mut self, log_power: LogPower) -> Self {
        self.log_power = log_power;
        self
    }

    pub fn with(mut self, axis: Axis, value: f64) -> Self {
        match axis {
            Axis::Alpha => self.alpha = value,
            Axis::C => self.c = value,
            Axis::R => self.r = value,
        }
        self
    }

    pub fn get(&self, axis: Axis) -> f64 {
        match axis {
            Axis::Alpha => self.alpha,
            Axis::C => self.c,
            Axis::R => self.r,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.beta, self.c, self.alpha, self.eps_log, self.r]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("map parameters must be finite"));
        }
        match self.variant {
            MapVariant::Logistic => Ok(()),
            variant => {
                if self.beta <= 0.0 {
                    return Err(Error::invalid(format!(
                        "beta must be > 0, got {}",
                        self.beta
                    )));
                }
                if self.alpha < 0.0 {
                    return Err(Error::invalid(format!(
                        "alpha must be >= 0, got {}",
                        self.alpha
                    )));
                }
                if variant == MapVariant::Zhang2 && self.eps_log <= 0.0 {
                    return Err(Error::invalid(format!(
                        "eps_log must be > 0, got {}",
                        self.eps_log
                    )));
                }
                Ok(())
            }
        }
    }

    /// Coefficient of `x^{-1/2}`.
    fn inverse_sqrt_coefficient(&self) -> f64 {
        match self.variant {
            MapVariant::Zhang2 => self.beta * self.eps_log / std::f64::consts::PI,
            _ => self.beta,
        }
    }

    /// Orbit of `x0` as a stream of iterates `x₁, x₂, …`. The first iterate
    /// outside the map domain is yielded as an error and ends the stream.
    pub fn trajectory(&self, x0: f64) -> Trajectory<'_> {
        Trajectory {
            params: self,
            x: Some(x0),
        }
    }
}

/// Signed power `sign(y) · |y|^p`.
pub fn spow(y: f64, p: f64) -> Result<f64> {
    if y == 0.0 {
        return if p < 0.0 {
            Err(Error::PoleAtZero(p))
        } else if p == 0.0 {
            Ok(1.0)
        } else {
            Ok(0.0)
        };
    }
    Ok(y.signum() * y.abs().powf(p))
}

/// Checks that `x` is a legal argument of the map.
pub fn check_domain(params: &MapParams, x: f64) -> Result<(), DomainError> {
    if !x.is_finite() {
        return Err(DomainError::Overflow);
    }
    if params.variant.is_zhang() {
        if x <= 0.0 {
            return Err(DomainError::NonPositive);
        }
        if x.ln().abs() < LOG_SINGULARITY {
            return Err(DomainError::LogSingularity);
        }
    }
    Ok(())
}

fn log_power_term(params: &MapParams, ln_x: f64) -> f64 {
    let magnitude = ln_x.abs().powf(-params.alpha);
    match params.log_power {
        LogPower::Absolute => magnitude,
        LogPower::Signed => ln_x.signum() * magnitude,
    }
}

pub fn eval_map(params: &MapParams, x: f64) -> Result<f64, DomainError> {
    check_domain(params, x)?;
    let y = match params.variant {
        MapVariant::Logistic => params.r * x * (1.0 - x),
        _ => {
            let ln_x = x.ln();
            params.inverse_sqrt_coefficient() / x.sqrt() + params.c * log_power_term(params, ln_x)
        }
    };
    if y.is_finite() {
        Ok(y)
    } else {
        Err(DomainError::Overflow)
    }
}

/// Analytic `f′(x)`.
pub fn eval_derivative(params: &MapParams, x: f64) -> Result<f64, DomainError> {
    check_domain(params, x)?;
    let d = match params.variant {
        MapVariant::Logistic => params.r * (1.0 - 2.0 * x),
        _ => {
            let ln_x = x.ln();
            let k = params.inverse_sqrt_coefficient();
            let first = -0.5 * k * x.powf(-1.5);
            let mut second = -params.c * params.alpha * ln_x.abs().powf(-params.alpha - 1.0) / x;
            if params.log_power == LogPower::Absolute {
                second *= ln_x.signum();
            }
            // α = 0 makes the log-power term constant even where |ln x|^{-1} overflows.
            if params.alpha == 0.0 || params.c == 0.0 {
                second = 0.0;
            }
            first + second
        }
    };
    if d.is_finite() {
        Ok(d)
    } else {
        Err(DomainError::Overflow)
    }
}

/// `ln|f′(x)|` evaluated in log space, so it stays finite where `f′` itself
/// overflows. Exact cancellation gives `-∞`.
pub fn ln_abs_derivative(params: &MapParams, x: f64) -> Result<f64, DomainError> {
    check_domain(params, x)?;
    if params.variant == MapVariant::Logistic {
        return Ok((params.r * (1.0 - 2.0 * x)).abs().ln());
    }
    let ln_x = x.ln();
    let k = params.inverse_sqrt_coefficient();
    // First term: -(k/2) x^{-3/2}, always negative.
    let ln_first = (0.5 * k).ln() - 1.5 * ln_x;
    let ca = params.c * params.alpha;
    if ca == 0.0 {
        return Ok(ln_first);
    }
    let ln_second = ca.abs().ln() - (params.alpha + 1.0) * ln_x.abs().ln() - ln_x;
    let mut second_sign = -ca.signum();
    if params.log_power == LogPower::Absolute {
        second_sign *= ln_x.signum();
    }
    let (hi, lo) = if ln_first >= ln_second {
        (ln_first, ln_second)
    } else {
        (ln_second, ln_first)
    };
    let gap = lo - hi;
    let out = if second_sign < 0.0 {
        hi + gap.exp().ln_1p()
    } else if gap == 0.0 {
        f64::NEG_INFINITY
    } else {
        hi + (-gap.exp()).ln_1p()
    };
    if out.is_nan() {
        Err(DomainError::Overflow)
    } else {
        Ok(out)
    }
}

/// Streaming orbit, see [`MapParams::trajectory`].
#[derive(Debug, Clone)]
pub struct Trajectory<'a> {
    params: &'a MapParams,
    x: Option<f64>,
}

impl Trajectory<'_> {
    /// Last in-domain iterate, the point the next application acts on.
    pub fn current(&self) -> Option<f64> {
        self.x
    }
}

impl Iterator for Trajectory<'_> {
    type Item = Result<f64, DomainError>;

    fn next(&mut self) -> Option<Self::Item> {
        let x = self.x?;
        let next = eval_map(self.params, x).and_then(|y| check_domain(self.params, y).map(|_| y));
        match next {
            Ok(y) => {
                self.x = Some(y);
                Some(Ok(y))
            }
            Err(e) => {
                self.x = None;
                Some(Err(e))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitStatus {
    Completed,
    /// Iterate `x_step` (with `x_0 = x0`) left the domain for `reason`;
    /// `x_0, …, x_{step−1}` were all in the domain.
    Escaped {
        step: usize,
        reason: DomainError,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    /// In-domain iterates `x_T, x_{T+1}, …` where `T` is the transient.
    pub samples: Vec<f64>,
    pub status: OrbitStatus,
    pub x0: f64,
    /// Iterates dropped as transient; `samples.len() + transient_discarded`
    /// equals the escape step of an escaped orbit.
    pub transient_discarded: usize,
}

impl Orbit {
    pub fn is_completed(&self) -> bool {
        self.status == OrbitStatus::Completed
    }
}

pub(crate) fn check_start(params: &MapParams, x0: f64) -> Result<()> {
    check_domain(params, x0)
        .map_err(|reason| Error::invalid(format!("x0 = {x0} is outside the map domain ({reason})")))
}

/// Iterates `x_0 = x0, x_{k+1} = f(x_k)` and keeps `x_T, …, x_{T+n−1}`
/// where `T` is the transient, stopping early at the first iterate outside
/// the domain.
pub fn iterate_orbit(params: &MapParams, x0: f64, n: usize, transient: usize) -> Result<Orbit> {
    params.validate()?;
    if n == 0 {
        return Err(Error::invalid("iteration count must be >= 1"));
    }
    check_start(params, x0)?;

    let mut samples = Vec::with_capacity(n.min(1 << 20));
    let mut status = OrbitStatus::Completed;
    let iterates = std::iter::once(Ok(x0)).chain(params.trajectory(x0));
    for (step, next) in iterates.take(n.saturating_add(transient)).enumerate() {
        match next {
            Ok(y) => {
                if step >= transient {
                    samples.push(y);
                }
            }
            Err(reason) => {
                status = OrbitStatus::Escaped { step, reason };
                break;
            }
        }
    }
    let transient_discarded = match status {
        OrbitStatus::Escaped { step, .. } => step.min(transient),
        OrbitStatus::Completed => transient,
    };
    Ok(Orbit {
        samples,
        status,
        x0,
        transient_discarded,
    })
}
