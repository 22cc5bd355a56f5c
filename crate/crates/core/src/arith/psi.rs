//! Chebyshev `ψ(x; q, a) = Σ_{n ≤ x, n ≡ a (q)} Λ(n)`.
//!
//! Every `Λ(n) = ln p ≥ ln 2` is a double in `[0.5, 32)`, hence an exact
//! multiple of `2^-53`. Sums are accumulated as exact integers in that unit,
//! so `ψ` over residue classes adds up to `ψ(x)` with no rounding at all and
//! only the final conversion to `f64` rounds.

use super::{euler_phi, gcd};
use crate::error::{Error, Result};

/// Largest `x` the sieve accepts.
pub const PSI_SIEVE_CAP: u64 = 100_000_000;

/// Largest modulus for which all residue classes are tabulated at once.
pub const PSI_RESIDUE_CAP: u64 = 1_000_000;

const FIXED_SCALE: f64 = 9_007_199_254_740_992.0; // 2^53

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiResult {
    pub x: f64,
    pub q: u64,
    pub a: u64,
    pub psi: f64,
    /// `ψ` in units of `2^-53`, exact.
    pub psi_fixed: i128,
    /// `x / φ(q)` when `gcd(a, q) = 1`, otherwise `0`.
    pub main_term: f64,
    pub error: f64,
    pub phi_q: u64,
}

/// Prime powers up to a limit with their `Λ` values.
#[derive(Debug, Clone)]
pub struct VonMangoldtTable {
    limit: u64,
    /// `(p^k, Λ(p^k) · 2^53)` sorted by `p^k`.
    entries: Vec<(u32, i64)>,
}

impl VonMangoldtTable {
    /// Linear sieve up to `limit` with one byte per integer.
    pub fn new(limit: u64) -> Result<Self> {
        if limit > PSI_SIEVE_CAP {
            return Err(Error::CapExceeded {
                what: "x",
                value: limit as f64,
                cap: PSI_SIEVE_CAP as f64,
            });
        }
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
            }
            for &p in &primes {
                let m = i * p as usize;
                if m > n {
                    break;
                }
                composite[m] = true;
                if i % p as usize == 0 {
                    break;
                }
            }
        }
        drop(composite);

        let mut entries = Vec::with_capacity(primes.len() + primes.len() / 8);
        for &p in &primes {
            let ln_p = (p as f64).ln();
            let fixed = (ln_p * FIXED_SCALE) as i64;
            debug_assert_eq!(fixed as f64 / FIXED_SCALE, ln_p);
            let mut pk = p as u64;
            while pk <= limit {
                entries.push((pk as u32, fixed));
                pk *= p as u64;
            }
        }
        entries.sort_unstable_by_key(|e| e.0);
        Ok(VonMangoldtTable { limit, entries })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `Λ(n)` for `n ≤ limit`.
    pub fn lambda(&self, n: u64) -> f64 {
        match self.entries.binary_search_by_key(&n, |e| e.0 as u64) {
            Ok(i) => self.entries[i].1 as f64 / FIXED_SCALE,
            Err(_) => 0.0,
        }
    }

    fn prefix(&self, x: f64) -> Result<&[(u32, i64)]> {
        if !(x >= 1.0) {
            return Err(Error::invalid(format!("psi needs x >= 1, got {x}")));
        }
        let n = x.floor();
        if n > self.limit as f64 {
            return Err(Error::invalid(format!(
                "x = {x} is beyond the table limit {}",
                self.limit
            )));
        }
        let n = n as u64;
        let end = self.entries.partition_point(|e| e.0 as u64 <= n);
        Ok(&self.entries[..end])
    }

    pub fn psi(&self, x: f64, q: u64, a: u64) -> Result<PsiResult> {
        check_modulus(q, a)?;
        let fixed: i128 = self
            .prefix(x)?
            .iter()
            .filter(|e| e.0 as u64 % q == a)
            .map(|e| e.1 as i128)
            .sum();
        Ok(make_result(x, q, a, fixed))
    }

    /// `ψ(x; q, a)` for every `a = 0, …, q − 1` in one pass.
    pub fn psi_residues(&self, x: f64, q: u64) -> Result<Vec<PsiResult>> {
        check_modulus(q, 0)?;
        if q > PSI_RESIDUE_CAP {
            return Err(Error::CapExceeded {
                what: "q",
                value: q as f64,
                cap: PSI_RESIDUE_CAP as f64,
            });
        }
        let mut sums = vec![0i128; q as usize];
        for e in self.prefix(x)? {
            sums[(e.0 as u64 % q) as usize] += e.1 as i128;
        }
        Ok(sums
            .into_iter()
            .enumerate()
            .map(|(a, s)| make_result(x, q, a as u64, s))
            .collect())
    }
}

fn check_modulus(q: u64, a: u64) -> Result<()> {
    if q == 0 || a >= q {
        return Err(Error::invalid(format!(
            "need 0 <= a < q, got a = {a}, q = {q}"
        )));
    }
    Ok(())
}

fn make_result(x: f64, q: u64, a: u64, fixed: i128) -> PsiResult {
    let psi = fixed as f64 / FIXED_SCALE;
    let phi_q = euler_phi(q);
    let main_term = if gcd(a % q, q) == 1 {
        x / phi_q as f64
    } else {
        0.0
    };
    PsiResult {
        x,
        q,
        a,
        psi,
        psi_fixed: fixed,
        main_term,
        error: psi - main_term,
        phi_q,
    }
}

pub fn chebyshev_psi(x: f64, q: u64, a: u64) -> Result<PsiResult> {
    if x > PSI_SIEVE_CAP as f64 {
        return Err(Error::CapExceeded {
            what: "x",
            value: x,
            cap: PSI_SIEVE_CAP as f64,
        });
    }
    check_modulus(q, a)?;
    let limit = if x >= 1.0 { x.floor() as u64 } else { 1 };
    VonMangoldtTable::new(limit)?.psi(x, q, a)
}
