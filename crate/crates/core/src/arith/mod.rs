//! Computational number theory: real characters, quadratic fields,
//! `L(1, χ)`, Chebyshev `ψ`, error envelopes and genus theory.

mod bounds;
mod character;
mod forms;
mod genus;
mod lfunc;
mod psi;
mod unit;

pub use bounds::{
    error_envelope, siegel_term, zero_free_beta_bound, zhang_envelope_exponent, EnvelopeConstants,
    EnvelopeRegime, ZeroFreeBound,
};
pub use character::{character_table, is_fundamental, kronecker};
pub use forms::{class_number_imag, reduced_forms, ClassCount, ReducedForm};
pub use genus::{d_g_check, genus_scan, DgRow, GenusRow, GENUS_SCAN_CAP};
pub use lfunc::{
    dirichlet_l1_class_number, dirichlet_l1_finite_sum, dirichlet_l1_partial_series,
    fundamental_discriminants, roots_of_unity, zhang_margin, LValueReport, QuadFieldData,
    ZhangMargin,
};
pub use psi::{chebyshev_psi, PsiResult, VonMangoldtTable, PSI_RESIDUE_CAP, PSI_SIEVE_CAP};
pub use unit::{fundamental_unit, fundamental_unit_log, FundamentalUnit};

/// Euler's totient by trial factorisation.
pub fn euler_phi(q: u64) -> u64 {
    let mut n = q;
    let mut phi = q;
    let mut p = 2;
    while p <= n / p {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Distinct prime divisors of `n > 0`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p <= n / p {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    let mut n = n;
    let mut p = 2;
    while p <= n / p {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
