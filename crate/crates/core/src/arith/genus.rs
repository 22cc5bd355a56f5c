//! One class per genus: `C(−d) ≅ (Z/2)^{g−1}`, and the growth of the
//! smallest discriminant with `g` prime divisors.

use rayon::prelude::*;

use super::character::is_fundamental;
use super::forms::class_number_imag;
use super::prime_divisors;
use crate::error::{Error, Result};

/// Largest `|d|` [`genus_scan`] accepts.
pub const GENUS_SCAN_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusRow {
    pub d: i64,
    pub h: u64,
    pub g: u32,
    /// `h = 2^{g−1}`.
    pub one_class_per_genus: bool,
    /// Every reduced form is ambiguous; must agree with `one_class_per_genus`.
    pub all_ambiguous: bool,
}

/// Every negative fundamental discriminant with `|d| ≤ limit`, in order of
/// increasing `|d|`.
pub fn genus_scan(limit: u64) -> Result<Vec<GenusRow>> {
    if limit > GENUS_SCAN_CAP {
        return Err(Error::CapExceeded {
            what: "genus scan limit",
            value: limit as f64,
            cap: GENUS_SCAN_CAP as f64,
        });
    }
    let ds: Vec<i64> = (3..=limit as i64)
        .map(|n| -n)
        .filter(|&d| is_fundamental(d))
        .collect();
    ds.into_par_iter()
        .map(|d| {
            let count = class_number_imag(d)?;
            let g = prime_divisors(d.unsigned_abs()).len() as u32;
            Ok(GenusRow {
                d,
                h: count.h,
                g,
                one_class_per_genus: count.h == 1u64 << (g - 1),
                all_ambiguous: count.ambiguous == count.h,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DgRow {
    pub g: u32,
    pub log_dg: f64,
    pub g_log_g: f64,
    pub holds: bool,
}

/// Largest `g` [`d_g_check`] accepts.
pub const DG_MAX: u32 = 50;

/// `d_g = 3 · 4 · 5 · 7 · 11 ⋯ p_g` against `g^g`, compared as logs.
pub fn d_g_check(g_max: u32) -> Result<Vec<DgRow>> {
    if g_max > DG_MAX {
        return Err(Error::CapExceeded {
            what: "g_max",
            value: g_max as f64,
            cap: DG_MAX as f64,
        });
    }
    let factors = dg_factors(g_max as usize);
    let mut log_dg = 0.0;
    Ok(factors
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let g = i as u32 + 1;
            log_dg += (f as f64).ln();
            let g_log_g = g as f64 * (g as f64).ln();
            DgRow {
                g,
                log_dg,
                g_log_g,
                holds: log_dg > g_log_g,
            }
        })
        .collect())
}

/// `3, 4, 5, 7, 11, 13, …`: the odd primes with 4 standing in for 2.
fn dg_factors(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut k = 3u64;
    while out.len() < n {
        if prime_divisors(k) == [k] {
            out.push(k);
            if k == 3 && out.len() < n {
                out.push(4);
            }
        }
        k += 1;
    }
    out
}
