//! Fundamental units of real quadratic fields from the continued fraction
//! of `ω`, with exact integer convergents.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

use super::is_fundamental;
use crate::error::{Error, Result};

/// `ε = (t + u√d) / 2` with `t² − d u² = 4 · norm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub d: i64,
    pub t: BigInt,
    pub u: BigInt,
    pub norm: i8,
}

impl FundamentalUnit {
    /// `t² − d u² = ±4`, recomputed from the stored integers.
    pub fn verify(&self) -> bool {
        let lhs = &self.t * &self.t - BigInt::from(self.d) * &self.u * &self.u;
        lhs == BigInt::from(4 * self.norm as i64)
    }

    pub fn ln(&self) -> f64 {
        // ln((t + u√d)/2) = ln u + ln(t/u + √d) − ln 2
        let ratio = big_ratio(&self.t, &self.u);
        big_ln(&self.u) + (ratio + (self.d as f64).sqrt()).ln() - std::f64::consts::LN_2
    }
}

fn big_ln(x: &BigInt) -> f64 {
    debug_assert!(x.sign() == Sign::Plus);
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("fits").ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// `a / b` for positive `a, b` of comparable size.
fn big_ratio(a: &BigInt, b: &BigInt) -> f64 {
    let scaled: BigInt = (a << 64u32) / b;
    let bits = scaled.bits();
    if bits <= 1000 {
        scaled.to_f64().expect("fits") / 2f64.powi(64)
    } else {
        (big_ln(&scaled) - 64.0 * std::f64::consts::LN_2).exp()
    }
}

/// Iteration cap for the continued-fraction loop.
const MAX_CF_STEPS: usize = 10_000_000;

/// Fundamental unit of `Q(√d)` for a positive fundamental discriminant `d`.
///
/// Expands `ω = (1 + √d)/2` (`d ≡ 1 mod 4`) or `ω = √(d/4)` as a continued
/// fraction and returns the first convergent `p/q` for which `p − qω̄` has
/// norm `±1`. Every unit of norm `±1` is such a convergent because
/// `|p/q − ω| < 1/(2q²)` once `d ≥ 5`.
pub fn fundamental_unit(d: i64) -> Result<FundamentalUnit> {
    if d <= 1 || !is_fundamental(d) {
        return Err(Error::invalid(format!(
            "{d} is not a positive fundamental discriminant"
        )));
    }
    // ω = (p0 + √radicand) / q0
    let (radicand, mut p, mut q, half) = if d % 4 == 1 {
        (d, 1i64, 2i64, true)
    } else {
        (d / 4, 0i64, 1i64, false)
    };
    let root = radicand.sqrt();
    let minus_norm_omega = BigInt::from((d - 1) / 4);
    let m = BigInt::from(radicand);

    let (mut p_prev, mut p_cur) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q_cur) = (BigInt::one(), BigInt::zero());
    for _ in 0..MAX_CF_STEPS {
        let a = if q > 0 {
            Integer::div_floor(&(p + root), &q)
        } else {
            Integer::div_floor(&(p + root + 1), &q)
        };
        let a_big = BigInt::from(a);
        let p_next = &a_big * &p_cur + &p_prev;
        let q_next = &a_big * &q_cur + &q_prev;
        (p_prev, p_cur) = (p_cur, p_next);
        (q_prev, q_cur) = (q_cur, q_next);

        let norm = if half {
            // N(x − yω) = x² − xy − ((d − 1)/4) y²
            &p_cur * &p_cur - &p_cur * &q_cur - &minus_norm_omega * &q_cur * &q_cur
        } else {
            &p_cur * &p_cur - &m * &q_cur * &q_cur
        };
        if norm.is_one() || norm == -BigInt::one() {
            let (t, u) = if half {
                (BigInt::from(2) * &p_cur - &q_cur, q_cur.clone())
            } else {
                (BigInt::from(2) * &p_cur, q_cur.clone())
            };
            let unit = FundamentalUnit {
                d,
                t,
                u,
                norm: if norm.is_one() { 1 } else { -1 },
            };
            debug_assert!(unit.verify());
            return Ok(unit);
        }

        p = a * q - p;
        q = (radicand - p * p) / q;
    }
    Err(Error::invalid(format!(
        "continued fraction of ω for d = {d} did not close"
    )))
}

pub fn fundamental_unit_log(d: i64) -> Result<f64> {
    fundamental_unit(d).map(|u| u.ln())
}
