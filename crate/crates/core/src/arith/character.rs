use super::is_squarefree;

/// Jacobi symbol `(a / n)` for odd `n > 0` and `0 ≤ a`.
fn jacobi(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut result = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        (a, n) = (n, a);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(d / n)`.
pub fn kronecker(d: i64, n: i64) -> i32 {
    if n == 0 {
        return i32::from(d.unsigned_abs() == 1);
    }
    let mut result = 1;
    if n < 0 && d < 0 {
        result = -result;
    }
    let mut m = n.unsigned_abs();
    let twos = m.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        m >>= twos;
    }
    if m == 1 {
        return result;
    }
    let a = d.rem_euclid(m as i64) as u64;
    result * jacobi(a, m)
}

/// `χ_d(a)` for `a = 0, 1, …, |d| − 1`.
pub fn character_table(d: i64) -> Vec<i8> {
    (0..d.abs()).map(|a| kronecker(d, a) as i8).collect()
}

/// Discriminant of a quadratic field: `d ≡ 1 (mod 4)` squarefree, or
/// `d = 4m` with `m ≡ 2, 3 (mod 4)` squarefree.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}
