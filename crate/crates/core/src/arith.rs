//! Small integer helpers shared by the lattice and bound code.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let mut a = a.unsigned_abs();
    let mut b = b.unsigned_abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

pub fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0, |acc, &v| gcd(acc, v))
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow)
}

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
pub fn ext_gcd(a: i128, b: i128) -> Result<(i128, i128, i128)> {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        let next_r = old_r - q * r;
        old_r = r;
        r = next_r;
        let next_x = checked_sub(old_x, checked_mul(q, x)?)?;
        old_x = x;
        x = next_x;
        let next_y = checked_sub(old_y, checked_mul(q, y)?)?;
        old_y = y;
        y = next_y;
    }
    if old_r < 0 {
        Ok((old_r.checked_neg().ok_or(Error::Overflow)?, -old_x, -old_y))
    } else {
        Ok((old_r, old_x, old_y))
    }
}

pub fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub fn checked_sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

pub fn to_u64(v: i128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow)
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn determinant(matrix: &[Vec<i128>]) -> Result<i128> {
    let n = matrix.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = checked_sub(
                    checked_mul(a[i][j], a[k][k])?,
                    checked_mul(a[i][k], a[k][j])?,
                )?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    checked_mul(sign, a[n - 1][n - 1])
}
