//! Error envelopes for `ψ(x; q, a) − x/φ(q)` and the zero-free region that
//! follows from `L(1, χ) > C₁ (log q)^{-A}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnvelopeRegime {
    /// `x e^{-c₀ √ln x}`
    Page,
    /// Same shape as Page with an ineffective constant.
    SiegelWalfisz,
    /// `x e^{-c₀ (ln x)^{1/(2A+4)}}`
    Zhang,
}

impl EnvelopeRegime {
    pub fn name(self) -> &'static str {
        match self {
            EnvelopeRegime::Page => "page",
            EnvelopeRegime::SiegelWalfisz => "siegel-walfisz",
            EnvelopeRegime::Zhang => "zhang",
        }
    }
}

impl FromStr for EnvelopeRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "page" => Ok(EnvelopeRegime::Page),
            "siegel-walfisz" | "siegelwalfisz" | "sw" => Ok(EnvelopeRegime::SiegelWalfisz),
            "zhang" => Ok(EnvelopeRegime::Zhang),
            other => Err(Error::invalid(format!("unknown envelope regime `{other}`"))),
        }
    }
}

impl fmt::Display for EnvelopeRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeConstants {
    pub c0: f64,
    /// Exponent `A` of the `L(1, χ)` lower bound.
    pub a: f64,
    pub epsilon: f64,
    pub a_eps: f64,
}

impl Default for EnvelopeConstants {
    fn default() -> Self {
        EnvelopeConstants {
            c0: 1.0,
            a: crate::defaults::ZHANG_A,
            epsilon: 0.5,
            a_eps: 1.0,
        }
    }
}

/// `1 / (2A + 4)`.
pub fn zhang_envelope_exponent(a: f64) -> f64 {
    1.0 / (2.0 * a + 4.0)
}

/// Magnitude of the error term for the given regime. Needs `x > 1`.
pub fn error_envelope(
    x: f64,
    regime: EnvelopeRegime,
    constants: &EnvelopeConstants,
) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::invalid(format!(
            "envelope needs finite x > 1, got {x}"
        )));
    }
    let ln_x = x.ln();
    let decay = match regime {
        EnvelopeRegime::Page | EnvelopeRegime::SiegelWalfisz => constants.c0 * ln_x.sqrt(),
        EnvelopeRegime::Zhang => constants.c0 * ln_x.powf(zhang_envelope_exponent(constants.a)),
    };
    Ok((ln_x - decay).exp())
}

/// Exceptional-zero contribution `x e^{-A_ε q^{-ε} ln x}` from Siegel's bound
/// `1 − β > A_ε q^{-ε}`.
pub fn siegel_term(x: f64, q: u64, constants: &EnvelopeConstants) -> Result<f64> {
    if !(x > 1.0) || q == 0 {
        return Err(Error::invalid("siegel term needs x > 1 and q >= 1"));
    }
    let ln_x = x.ln();
    let gap = constants.a_eps * (q as f64).powf(-constants.epsilon);
    Ok((ln_x - gap * ln_x).exp())
}

/// `1 − β > C₂ (ln q)^{-A-2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroFreeBound {
    pub q: u64,
    pub a: f64,
    pub c2: f64,
    /// `A + 2`.
    pub exponent: f64,
    /// `ln(C₂ (ln q)^{-A-2})`; the gap itself underflows for large `A`.
    pub ln_gap: f64,
    /// `1 − C₂ (ln q)^{-A-2}`. Rounds to `1.0` once the gap drops below
    /// half an ulp; `ln_gap` keeps the strict inequality visible.
    pub beta_upper: f64,
}

impl ZeroFreeBound {
    pub fn gap(&self) -> f64 {
        self.ln_gap.exp()
    }
}

pub fn zero_free_beta_bound(q: u64, a: f64, c2: f64) -> Result<ZeroFreeBound> {
    if q < 3 {
        return Err(Error::invalid(format!(
            "zero-free region needs q >= 3, got {q}"
        )));
    }
    if !(a >= 0.0) || !(c2 > 0.0) {
        return Err(Error::invalid("need A >= 0 and C2 > 0"));
    }
    let exponent = a + 2.0;
    let ln_gap = c2.ln() - exponent * (q as f64).ln().ln();
    Ok(ZeroFreeBound {
        q,
        a,
        c2,
        exponent,
        ln_gap,
        beta_upper: 1.0 - ln_gap.exp(),
    })
}
