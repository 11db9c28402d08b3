//! The bound `N_S` beyond which the Delta set of a monoid stops changing,
//! and the older comparison bound it improves on.
//!
//! For each middle index `i = 2..p-1` two rational thresholds are solved: `S_i`
//! makes the last coordinate of `R(s) + (p-2) q_i` vanish and `S'_i` makes
//! the first coordinate of `R'(s) + (p-2) q_i` vanish. `N_S` is the ceiling
//! of the largest of them.

use crate::arith::{checked_add, checked_mul, gcd_i128, to_u64};
use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, min_delta};
use crate::monoid::Monoid;
use crate::rational::Rational;

/// Which form of the comparison bound `2 p a_2 a_p^2 + c` to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChapmanVariant {
    /// `c = a_1 a_2`; agrees with every tabulated value.
    #[default]
    Table,
    /// `c = a_1 a_p`, as the bound is usually stated.
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub d: u64,
    pub s_lower: Vec<(usize, Rational)>,
    pub s_upper: Vec<(usize, Rational)>,
    pub n_s: u64,
    /// `N_S + a_p - 1`: every Delta value is realized at or below this element.
    pub window_top: u64,
    pub chapman: u64,
}

fn check_index(m: &Monoid, i: usize) -> Result<()> {
    let p = m.embedding_dimension();
    if p < 3 {
        return Err(Error::NotApplicable("the N_S bound"));
    }
    if !(2..p).contains(&i) {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: p - 1,
        });
    }
    Ok(())
}

/// `gcd(|a_i - a_1|, |a_1 - a_p|, |a_p - a_i|)` (1-based `i`).
fn triple_gcd(a: &[u64], i: usize) -> i128 {
    let (a1, ai, ap) = (a[0] as i128, a[i - 1] as i128, a[a.len() - 1] as i128);
    gcd_i128(gcd_i128(ai - a1, a1 - ap), ap - ai)
}

/// `S_i = -a_2 (a_1 d g + (p-2)(a_1 - a_i)(a_1 - a_p)) / ((a_1 - a_2) g)`.
pub fn s_lower(m: &Monoid, d: u64, i: usize) -> Result<Rational> {
    check_index(m, i)?;
    let a = m.generators();
    let p = a.len() as i128;
    let (a1, a2, ai, ap) = (
        a[0] as i128,
        a[1] as i128,
        a[i - 1] as i128,
        a[a.len() - 1] as i128,
    );
    let g = triple_gcd(a, i);
    let d = d as i128;
    let inner = checked_add(
        checked_mul(checked_mul(a1, d)?, g)?,
        checked_mul(checked_mul(p - 2, a1 - ai)?, a1 - ap)?,
    )?;
    let num = checked_mul(-a2, inner)?;
    let den = checked_mul(a1 - a2, g)?;
    Rational::new(num, den)
}

/// `S'_i = a_{p-1} ((p-2)(a_1 - a_p)(a_p - a_i) - d a_p g) / ((a_{p-1} - a_p) g)`.
pub fn s_upper(m: &Monoid, d: u64, i: usize) -> Result<Rational> {
    check_index(m, i)?;
    let a = m.generators();
    let n = a.len();
    let p = n as i128;
    let (a1, ai, apm1, ap) = (
        a[0] as i128,
        a[i - 1] as i128,
        a[n - 2] as i128,
        a[n - 1] as i128,
    );
    let g = triple_gcd(a, i);
    let d = d as i128;
    let inner = checked_add(
        checked_mul(checked_mul(p - 2, a1 - ap)?, ap - ai)?,
        -checked_mul(checked_mul(d, ap)?, g)?,
    )?;
    let num = checked_mul(apm1, inner)?;
    let den = checked_mul(apm1 - ap, g)?;
    Rational::new(num, den)
}

/// Ceiling of the largest `S_i`, `S'_i`, clamped below at 1.
pub fn n_s(m: &Monoid, d: u64) -> Result<u64> {
    let p = m.embedding_dimension();
    if p < 3 {
        return Err(Error::NotApplicable("the N_S bound"));
    }
    let mut best: Option<Rational> = None;
    for i in 2..p {
        for v in [s_lower(m, d, i)?, s_upper(m, d, i)?] {
            best = Some(best.map_or(v, |b| b.max(v)));
        }
    }
    let ceiling = best.expect("p >= 3 gives at least one candidate").ceil();
    to_u64(ceiling.max(1))
}

/// `2 p a_2 a_p^2 + a_1 a_2` (or `+ a_1 a_p` for [`ChapmanVariant::Text`]).
pub fn chapman_bound(m: &Monoid, variant: ChapmanVariant) -> Result<u64> {
    chapman_bound_of_generators(m.generators(), variant)
}

/// The comparison bound evaluated on a generator list exactly as given
/// (sorted, but without reducing to a minimal generating set). Published
/// tables sometimes list redundant generators; this reproduces them.
pub fn chapman_bound_of_generators(generators: &[u64], variant: ChapmanVariant) -> Result<u64> {
    let mut a = generators.to_vec();
    a.sort_unstable();
    if a.len() < 2 {
        return Err(Error::NotApplicable("the comparison bound"));
    }
    let (a1, a2, ap) = (a[0] as u128, a[1] as u128, a[a.len() - 1] as u128);
    let p = a.len() as u128;
    let main = [2, p, a2, ap, ap]
        .into_iter()
        .try_fold(1u128, |acc, f| acc.checked_mul(f))
        .ok_or(Error::Overflow)?;
    let tail = match variant {
        ChapmanVariant::Table => a1 * a2,
        ChapmanVariant::Text => a1 * ap,
    };
    let total = main.checked_add(tail).ok_or(Error::Overflow)?;
    u64::try_from(total).map_err(|_| Error::Overflow)
}

pub fn bound_report(m: &Monoid, variant: ChapmanVariant) -> Result<BoundReport> {
    let p = m.embedding_dimension();
    if p < 3 {
        return Err(Error::NotApplicable("the N_S bound"));
    }
    let d = min_delta(&kernel_basis(m)?)?;
    let s_lower = (2..p)
        .map(|i| Ok((i, s_lower(m, d, i)?)))
        .collect::<Result<Vec<_>>>()?;
    let s_upper = (2..p)
        .map(|i| Ok((i, s_upper(m, d, i)?)))
        .collect::<Result<Vec<_>>>()?;
    let n_s = n_s(m, d)?;
    let window_top = n_s.checked_add(m.largest() - 1).ok_or(Error::Overflow)?;
    Ok(BoundReport {
        d,
        s_lower,
        s_upper,
        n_s,
        window_top,
        chapman: chapman_bound(m, variant)?,
    })
}
