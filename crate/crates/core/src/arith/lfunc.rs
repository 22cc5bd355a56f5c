//! `L(1, χ_d)` three ways: the class-number formula, exact finite character
//! sums, and a truncated Dirichlet series.

use std::f64::consts::PI;

use super::character::{character_table, is_fundamental};
use super::forms::class_number_imag;
use super::prime_divisors;
use super::unit::fundamental_unit_log;
use crate::error::{Error, Result};

fn check_discriminant(d: i64) -> Result<()> {
    if d.abs() < 3 || !is_fundamental(d) {
        return Err(Error::invalid(format!(
            "{d} is not a fundamental discriminant with |d| >= 3"
        )));
    }
    Ok(())
}

/// Roots of unity in `Q(√d)`.
pub fn roots_of_unity(d: i64) -> u32 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// Fundamental discriminants with `lo ≤ d ≤ hi` and `|d| ≥ 3`, ascending.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi)
        .filter(|&d| d.abs() >= 3 && is_fundamental(d))
        .collect()
}

/// Exact character sums:
///
/// ```text
/// d < 0:  L = −(π / |d|^{3/2}) Σ_{a<|d|} χ(a) a
/// d > 0:  L = −(1/√d) Σ_{a<d} χ(a) ln sin(πa/d)
/// ```
pub fn dirichlet_l1_finite_sum(d: i64) -> Result<f64> {
    check_discriminant(d)?;
    let chi = character_table(d);
    let m = d.unsigned_abs() as f64;
    if d < 0 {
        let s: i64 = chi
            .iter()
            .enumerate()
            .map(|(a, &c)| c as i64 * a as i64)
            .sum();
        Ok(-PI * s as f64 / m.powf(1.5))
    } else {
        let n = d as usize;
        let mut s = 0.0;
        // χ(d − a) = χ(a) for d > 0, so sum the lower half twice. The
        // middle term of even d has ln sin(π/2) = 0.
        for (a, &c) in chi.iter().enumerate().take(n.div_ceil(2)).skip(1) {
            if c != 0 {
                s += 2.0 * c as f64 * (PI * a as f64 / m).sin().ln();
            }
        }
        Ok(-s / m.sqrt())
    }
}

/// `Σ_{n ≤ N} χ(n)/n` with `N` rounded down to a whole number of periods.
pub fn dirichlet_l1_partial_series(d: i64, terms: u64) -> Result<f64> {
    check_discriminant(d)?;
    let chi = character_table(d);
    let period = chi.len() as u64;
    let n_max = (terms / period).max(1) * period;
    let mut total = 0.0;
    let mut start = 0u64;
    while start < n_max {
        let mut block = 0.0;
        for (r, &c) in chi.iter().enumerate() {
            if c != 0 {
                let n = start + r as u64;
                if n > 0 {
                    block += c as f64 / n as f64;
                }
            }
        }
        total += block;
        start += period;
    }
    Ok(total)
}

/// Class-number data of `Q(√d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadFieldData {
    pub d: i64,
    pub h: u64,
    pub w: u32,
    /// `log ε`, real fields only.
    pub log_eps: Option<f64>,
    /// Distinct primes dividing `|d|`.
    pub g: u32,
}

impl QuadFieldData {
    /// For `d < 0` the class number comes from reduced forms. For `d > 0` it
    /// is read back from the finite character sum, `h = L √d / (2 log ε)`,
    /// and must land within 0.01 of an integer.
    pub fn new(d: i64) -> Result<Self> {
        check_discriminant(d)?;
        let g = prime_divisors(d.unsigned_abs()).len() as u32;
        let w = roots_of_unity(d);
        if d < 0 {
            let h = class_number_imag(d)?.h;
            return Ok(QuadFieldData {
                d,
                h,
                w,
                log_eps: None,
                g,
            });
        }
        let log_eps = fundamental_unit_log(d)?;
        let l = dirichlet_l1_finite_sum(d)?;
        let h_real = l * (d as f64).sqrt() / (2.0 * log_eps);
        let h = h_real.round();
        if (h_real - h).abs() >= 0.01 || h < 1.0 {
            return Err(Error::invalid(format!(
                "class number of d = {d} recovered as {h_real}, not an integer"
            )));
        }
        Ok(QuadFieldData {
            d,
            h: h as u64,
            w,
            log_eps: Some(log_eps),
            g,
        })
    }

    /// `2πh / (w √|d|)` for `d < 0`, `2h log ε / √d` for `d > 0`.
    pub fn l1(&self) -> f64 {
        let root = (self.d.unsigned_abs() as f64).sqrt();
        match self.log_eps {
            None => 2.0 * PI * self.h as f64 / (self.w as f64 * root),
            Some(log_eps) => 2.0 * self.h as f64 * log_eps / root,
        }
    }
}

pub fn dirichlet_l1_class_number(d: i64) -> Result<f64> {
    QuadFieldData::new(d).map(|q| q.l1())
}

/// `L(1, χ)` against the lower bound `c₁ (ln|d|)^{-A}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZhangMargin {
    /// `L − c₁ (ln|d|)^{-A}`.
    pub margin: f64,
    /// `ln(L · (ln|d|)^A)`. The constant itself overflows a double for
    /// `A = 2022` as soon as `|d| ≥ 5`.
    pub ln_empirical_constant: f64,
}

impl ZhangMargin {
    pub fn from_l1(l1: f64, d: i64, c1: f64, a: f64) -> Self {
        let lnln = (d.unsigned_abs() as f64).ln().ln();
        let bound = if c1 == 0.0 {
            0.0
        } else {
            (c1.ln() - a * lnln).exp()
        };
        ZhangMargin {
            margin: l1 - bound,
            ln_empirical_constant: l1.ln() + a * lnln,
        }
    }

    /// May be `+∞` when not representable.
    pub fn empirical_constant(&self) -> f64 {
        self.ln_empirical_constant.exp()
    }
}

pub fn zhang_margin(d: i64, c1: f64, a: f64) -> Result<ZhangMargin> {
    if !(c1 >= 0.0) || !(a >= 0.0) {
        return Err(Error::invalid("c1 and A must be >= 0"));
    }
    let l1 = dirichlet_l1_class_number(d)?;
    Ok(ZhangMargin::from_l1(l1, d, c1, a))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LValueReport {
    pub field: QuadFieldData,
    pub l_class_number: f64,
    pub l_finite_sum: f64,
    /// `None` unless a series truncation was requested.
    pub l_partial_series: Option<f64>,
    pub zhang: ZhangMargin,
}

impl LValueReport {
    pub fn new(d: i64, c1: f64, a: f64, series_terms: Option<u64>) -> Result<Self> {
        if !(c1 >= 0.0) || !(a >= 0.0) {
            return Err(Error::invalid("c1 and A must be >= 0"));
        }
        let field = QuadFieldData::new(d)?;
        let l_class_number = field.l1();
        let l_finite_sum = dirichlet_l1_finite_sum(d)?;
        let l_partial_series = series_terms
            .map(|n| dirichlet_l1_partial_series(d, n))
            .transpose()?;
        Ok(LValueReport {
            field,
            l_class_number,
            l_finite_sum,
            l_partial_series,
            zhang: ZhangMargin::from_l1(l_class_number, d, c1, a),
        })
    }

    pub fn relative_disagreement(&self) -> f64 {
        (self.l_class_number - self.l_finite_sum).abs() / self.l_finite_sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let leibniz = PI / 4.0;
        assert!((dirichlet_l1_class_number(-4).unwrap() - leibniz).abs() < 1e-15);
        assert!((dirichlet_l1_finite_sum(-4).unwrap() - leibniz).abs() < 1e-15);

        let third = PI / (3.0 * 3f64.sqrt());
        assert!((dirichlet_l1_class_number(-3).unwrap() - third).abs() < 1e-15);
        assert!((dirichlet_l1_finite_sum(-3).unwrap() - third).abs() < 1e-15);
        assert!((third - 0.604600).abs() < 1e-6);

        let five = 2.0 / 5f64.sqrt() * ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((dirichlet_l1_class_number(5).unwrap() - five).abs() < 1e-14);
        assert!((dirichlet_l1_finite_sum(5).unwrap() - five).abs() < 1e-14);
        assert!((five - 0.430409).abs() < 1e-6);
    }

    #[test]
    fn field_data() {
        let f = QuadFieldData::new(-4).unwrap();
        assert_eq!((f.h, f.w, f.g), (1, 4, 1));
        let f = QuadFieldData::new(-3).unwrap();
        assert_eq!((f.h, f.w), (1, 6));
        let f = QuadFieldData::new(5).unwrap();
        assert_eq!((f.h, f.w), (1, 2));
        // Q(√10) and Q(√15) have class number 2, Q(√79) class number 3.
        assert_eq!(QuadFieldData::new(40).unwrap().h, 2);
        assert_eq!(QuadFieldData::new(60).unwrap().h, 2);
        assert_eq!(QuadFieldData::new(316).unwrap().h, 3);
        assert_eq!(QuadFieldData::new(-5460).unwrap().g, 5);
    }

    #[test]
    fn partial_series_approaches_l() {
        for d in [-4, -3, 5, 8, -23, 13, -163] {
            let exact = dirichlet_l1_finite_sum(d).unwrap();
            let series = dirichlet_l1_partial_series(d, 1_000_000).unwrap();
            assert!(
                (series - exact).abs() < 1e-4,
                "d = {d}: {series} vs {exact}"
            );
        }
    }

    #[test]
    fn zhang_margin_examples() {
        let m = zhang_margin(-4, 1.0, 2022.0).unwrap();
        assert!((m.margin - PI / 4.0).abs() < 1e-200);
        assert!(m.ln_empirical_constant.is_finite() && m.ln_empirical_constant > 0.0);

        // (ln 3)^{-2022} ≈ 1e-83, well inside the double range.
        let m3 = zhang_margin(-3, 1.0, 2022.0).unwrap();
        let l = PI / (3.0 * 3f64.sqrt());
        let bound = (-2022.0 * 3f64.ln().ln()).exp();
        assert!(bound > 0.0 && bound < 1e-80);
        assert!((m3.margin - (l - bound)).abs() < 1e-15);
        assert!(m3.empirical_constant().is_finite());

        let degenerate = zhang_margin(-23, 0.0, 0.0).unwrap();
        assert_eq!(degenerate.margin, dirichlet_l1_class_number(-23).unwrap());
        assert!((degenerate.empirical_constant() - degenerate.margin).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_discriminants() {
        assert!(dirichlet_l1_finite_sum(1).is_err());
        assert!(dirichlet_l1_finite_sum(-8 * 9).is_err());
        assert!(QuadFieldData::new(9).is_err());
        assert!(zhang_margin(-4, -1.0, 1.0).is_err());
    }
}
