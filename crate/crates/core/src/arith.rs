//! Small integer helpers: gcd over signed values, divisors, Euler phi, p-adic valuation.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Non-negative gcd of two signed integers; `gcd(0, 0) == 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Gcd of all values in the slice.
pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0, |acc, &v| gcd(acc, v))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `e` with `p^e | x`.
pub fn vp(p: u64, x: i64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime { p });
    }
    if x == 0 {
        return Err(Error::ZeroValuation);
    }
    let p = p as i64;
    let mut x = x;
    let mut e = 0;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    Ok(e)
}

/// 2-adic valuation of a nonzero integer.
pub(crate) fn v2(x: i64) -> u32 {
    debug_assert!(x != 0);
    x.trailing_zeros()
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Distinct prime factors of `n` in ascending order.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}
