//! Exact rationals over `i128` with checked arithmetic.
//!
//! Values are always kept in lowest terms with a positive denominator, so
//! derived equality is structural equality.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::{checked_add, checked_mul, gcd_i128};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let g = gcd_i128(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().ok_or(Error::Overflow)?;
            den = den.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(Rational { num, den })
    }

    pub fn from_int(v: i128) -> Self {
        Rational { num: v, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn try_add(self, rhs: Rational) -> Result<Rational> {
        let g = gcd_i128(self.den, rhs.den);
        let l = self.den / g;
        let num = checked_add(
            checked_mul(self.num, rhs.den / g)?,
            checked_mul(rhs.num, l)?,
        )?;
        Rational::new(num, checked_mul(l, rhs.den)?)
    }

    pub fn try_sub(self, rhs: Rational) -> Result<Rational> {
        self.try_add(rhs.try_neg()?)
    }

    pub fn try_neg(self) -> Result<Rational> {
        Ok(Rational {
            num: self.num.checked_neg().ok_or(Error::Overflow)?,
            den: self.den,
        })
    }

    pub fn try_mul(self, rhs: Rational) -> Result<Rational> {
        // cross-cancel first to keep intermediates small
        let g1 = gcd_i128(self.num, rhs.den);
        let g2 = gcd_i128(rhs.num, self.den);
        let (g1, g2) = (g1.max(1), g2.max(1));
        Rational::new(
            checked_mul(self.num / g1, rhs.num / g2)?,
            checked_mul(self.den / g2, rhs.den / g1)?,
        )
    }

    pub fn try_div(self, rhs: Rational) -> Result<Rational> {
        if rhs.num == 0 {
            return Err(Error::DivisionByZero);
        }
        self.try_mul(
            Rational {
                num: rhs.den,
                den: rhs.num,
            }
            .normalized_sign()?,
        )
    }

    pub fn try_mul_int(self, k: i128) -> Result<Rational> {
        self.try_mul(Rational::from_int(k))
    }

    fn normalized_sign(self) -> Result<Rational> {
        Rational::new(self.num, self.den)
    }

    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn ceil(&self) -> i128 {
        let q = self.num.div_euclid(self.den);
        if self.num.rem_euclid(self.den) == 0 {
            q
        } else {
            q + 1
        }
    }
}

/// Compares `a/b` with `c/d` for positive `b`, `d` without forming cross products.
fn cmp_fractions(a: i128, b: i128, c: i128, d: i128) -> Ordering {
    let (qa, ra) = (a.div_euclid(b), a.rem_euclid(b));
    let (qc, rc) = (c.div_euclid(d), c.rem_euclid(d));
    if qa != qc {
        return qa.cmp(&qc);
    }
    match (ra == 0, rc == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        // ra/b < rc/d  <=>  d/rc < b/ra
        (false, false) => cmp_fractions(d, rc, b, ra),
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_fractions(self.num, self.den, other.num, other.den)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v as i128)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational::from_int(v as i128)
    }
}

/// Integers print bare; everything else prints as `num/den`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<i128>().map_err(|e| format!("{t:?}: {e}"));
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?).map_err(|e| e.to_string()),
            None => Ok(Rational::from_int(parse(s)?)),
        }
    }
}

/// A point of Q^p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zero(dim: usize) -> Self {
        RationalVector(vec![Rational::ZERO; dim])
    }

    /// `value * e_index` in dimension `dim`.
    pub fn axis(dim: usize, index: usize, value: Rational) -> Self {
        let mut v = Self::zero(dim);
        v.0[index] = value;
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn try_add(&self, rhs: &RationalVector) -> Result<RationalVector> {
        debug_assert_eq!(self.dim(), rhs.dim());
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.try_add(*b))
            .collect::<Result<_>>()
            .map(RationalVector)
    }

    pub fn try_sub(&self, rhs: &RationalVector) -> Result<RationalVector> {
        debug_assert_eq!(self.dim(), rhs.dim());
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.try_sub(*b))
            .collect::<Result<_>>()
            .map(RationalVector)
    }

    pub fn try_scale(&self, k: Rational) -> Result<RationalVector> {
        self.0
            .iter()
            .map(|a| a.try_mul(k))
            .collect::<Result<_>>()
            .map(RationalVector)
    }

    /// Coordinate sum.
    pub fn ell(&self) -> Result<Rational> {
        self.0
            .iter()
            .try_fold(Rational::ZERO, |acc, c| acc.try_add(*c))
    }

    /// `Σ weights_i * x_i`.
    pub fn dot_int(&self, weights: &[u64]) -> Result<Rational> {
        self.0
            .iter()
            .zip(weights)
            .try_fold(Rational::ZERO, |acc, (c, &w)| {
                acc.try_add(c.try_mul_int(w as i128)?)
            })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
