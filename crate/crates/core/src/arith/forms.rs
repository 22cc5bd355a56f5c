//! Reduced positive definite binary quadratic forms `a x² + b xy + c y²`.

use super::{gcd, is_fundamental};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Reduced forms of order at most two in the class group.
    pub fn is_ambiguous(&self) -> bool {
        self.b == 0 || self.a == self.b || self.a == self.c
    }
}

/// Primitive reduced forms of discriminant `d < 0`: `|b| ≤ a ≤ c`, with
/// `b ≥ 0` whenever `|b| = a` or `a = c`.
pub fn reduced_forms(d: i64) -> Vec<ReducedForm> {
    assert!(d < 0);
    let n = -d;
    let mut out = Vec::new();
    let mut a = 1i64;
    // a ≤ √(|d|/3)
    while 3 * a * a <= n {
        // b ≡ d (mod 2); b = -a is never reduced
        let mut b = -a + 1;
        if (b - d).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let boundary = b < 0 && (a == c || -b == a);
                if c >= a && !boundary && gcd(gcd(a as u64, b.unsigned_abs()), c as u64) == 1 {
                    out.push(ReducedForm { a, b, c });
                }
            }
            b += 2;
        }
        a += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassCount {
    pub h: u64,
    pub ambiguous: u64,
}

/// Class number of the negative fundamental discriminant `d` and the number
/// of ambiguous reduced forms.
pub fn class_number_imag(d: i64) -> Result<ClassCount> {
    if d >= 0 || !is_fundamental(d) {
        return Err(Error::invalid(format!(
            "{d} is not a negative fundamental discriminant"
        )));
    }
    let forms = reduced_forms(d);
    Ok(ClassCount {
        h: forms.len() as u64,
        ambiguous: forms.iter().filter(|f| f.is_ambiguous()).count() as u64,
    })
}
