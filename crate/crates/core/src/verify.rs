//! Checks of the structural facts behind the algorithm, evaluated directly
//! on enumerated factorizations and in exact rationals.

use crate::arith::lcm;
use crate::bound::n_s as compute_n_s;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

use crate::delta::element_delta;
use crate::factor::{
    enumerate_factorizations, for_each_factorization, length_set, DeltaSet, Factorization,
    FactorizationSet,
};
use crate::lattice::{kernel_basis, min_delta, Geometry};
use crate::monoid::Monoid;
use crate::rational::{Rational, RationalVector};

/// Length cut points for an element `s >= N_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thresholds {
    /// `s/a_1`
    pub top: Rational,
    /// `s/a_1 + ℓ(w)`, exclusive lower end of the first band.
    pub first_low: Rational,
    /// `s/a_1 + ℓ(w) + d`, upper end of the middle band.
    pub middle_high: Rational,
    /// `s/a_p + ℓ(w') - d`, lower end of the middle band.
    pub middle_low: Rational,
    /// `s/a_p + ℓ(w')`, exclusive upper end of the last band.
    pub last_high: Rational,
    /// `s/a_p`
    pub bottom: Rational,
}

impl Thresholds {
    pub fn in_first(&self, len: Rational) -> bool {
        self.first_low < len && len <= self.top
    }

    pub fn in_middle(&self, len: Rational) -> bool {
        self.middle_low <= len && len <= self.middle_high
    }

    pub fn in_last(&self, len: Rational) -> bool {
        self.bottom <= len && len < self.last_high
    }
}

/// `E(s)` split into the long, middle and short length bands.
#[derive(Debug, Clone)]
pub struct Partition {
    pub element: u64,
    pub e1: FactorizationSet,
    pub e2: FactorizationSet,
    pub e3: FactorizationSet,
    pub thresholds: Thresholds,
}

fn sorted_lengths(fs: &FactorizationSet) -> Vec<u64> {
    if fs.is_empty() {
        Vec::new()
    } else {
        length_set(fs).map(|ls| ls.lengths).unwrap_or_default()
    }
}

/// Sorted distinct lengths per band; implemented by both partition forms.
pub trait LengthBands {
    fn e1_lengths(&self) -> Vec<u64>;
    fn e2_lengths(&self) -> Vec<u64>;
    fn e3_lengths(&self) -> Vec<u64>;

    /// `Δ(E_1) ∪ {d} ∪ Δ(E_3)`.
    fn recombined_delta(&self, d: u64) -> DeltaSet {
        let mut out = DeltaSet::from_sorted_lengths(&self.e1_lengths());
        out.union_with(&DeltaSet::from_sorted_lengths(&self.e3_lengths()));
        out.insert(d);
        out
    }
}

impl LengthBands for Partition {
    fn e1_lengths(&self) -> Vec<u64> {
        sorted_lengths(&self.e1)
    }

    fn e2_lengths(&self) -> Vec<u64> {
        sorted_lengths(&self.e2)
    }

    fn e3_lengths(&self) -> Vec<u64> {
        sorted_lengths(&self.e3)
    }
}

impl Partition {
    /// Factorizations lying in both the first and the middle band.
    pub fn first_middle_overlap(&self) -> usize {
        self.e1
            .iter()
            .filter(|x| self.thresholds.in_middle(Rational::from(x.length())))
            .count()
    }

    /// Factorizations lying in both the middle and the last band.
    pub fn middle_last_overlap(&self) -> usize {
        self.e3
            .iter()
            .filter(|x| self.thresholds.in_middle(Rational::from(x.length())))
            .count()
    }
}

/// The same classification as [`Partition`] but streamed: only the number of
/// factorizations of each length is kept per band, so memory stays
/// proportional to the number of lengths rather than factorizations.
#[derive(Debug, Clone)]
pub struct LengthPartition {
    pub element: u64,
    /// length -> number of factorizations, per band
    pub e1: BTreeMap<u64, u64>,
    pub e2: BTreeMap<u64, u64>,
    pub e3: BTreeMap<u64, u64>,
    /// Lengths of the whole element, for comparison with the bands.
    pub all: BTreeMap<u64, u64>,
    pub thresholds: Thresholds,
}

impl LengthBands for LengthPartition {
    fn e1_lengths(&self) -> Vec<u64> {
        self.e1.keys().copied().collect()
    }

    fn e2_lengths(&self) -> Vec<u64> {
        self.e2.keys().copied().collect()
    }

    fn e3_lengths(&self) -> Vec<u64> {
        self.e3.keys().copied().collect()
    }
}

impl LengthPartition {
    pub fn delta(&self) -> DeltaSet {
        DeltaSet::from_sorted_lengths(self.all.keys())
    }
}

pub fn partition_lengths(m: &Monoid, s: u64, n_s: u64, d: u64) -> Result<LengthPartition> {
    if s < n_s {
        return Err(Error::NotApplicable("the length partition below N_S"));
    }
    let th = thresholds(m, s, n_s, d)?;
    let mut all = BTreeMap::new();
    for_each_factorization(m, s, |x| {
        *all.entry(x.iter().sum::<u64>()).or_insert(0u64) += 1
    });
    let band = |pred: &dyn Fn(Rational) -> bool| -> BTreeMap<u64, u64> {
        all.iter()
            .filter(|(&l, _)| pred(Rational::from(l)))
            .map(|(&l, &c)| (l, c))
            .collect()
    };
    Ok(LengthPartition {
        element: s,
        e1: band(&|l| th.in_first(l)),
        e2: band(&|l| th.in_middle(l)),
        e3: band(&|l| th.in_last(l)),
        all,
        thresholds: th,
    })
}

pub fn thresholds(m: &Monoid, s: u64, n_s: u64, d: u64) -> Result<Thresholds> {
    let a = m.generators();
    let p = a.len();
    if p < 3 {
        return Err(Error::NotApplicable("the length partition"));
    }
    let frac = |num: u64, den: u64| Rational::new(num as i128, den as i128);
    let ell_w = frac(n_s, a[1])?.try_sub(frac(n_s, a[0])?)?;
    let ell_w_prime = frac(n_s, a[p - 2])?.try_sub(frac(n_s, a[p - 1])?)?;
    let d = Rational::from(d);
    let top = frac(s, a[0])?;
    let bottom = frac(s, a[p - 1])?;
    let first_low = top.try_add(ell_w)?;
    let last_high = bottom.try_add(ell_w_prime)?;
    Ok(Thresholds {
        top,
        first_low,
        middle_high: first_low.try_add(d)?,
        middle_low: last_high.try_sub(d)?,
        last_high,
        bottom,
    })
}

pub fn partition_factorizations(m: &Monoid, s: u64, n_s: u64, d: u64) -> Result<Partition> {
    if s < n_s {
        return Err(Error::NotApplicable("the length partition below N_S"));
    }
    let th = thresholds(m, s, n_s, d)?;
    let all = enumerate_factorizations(m, s);
    let pick = |pred: &dyn Fn(Rational) -> bool| FactorizationSet {
        element: s,
        factorizations: all
            .iter()
            .filter(|x| pred(Rational::from(x.length())))
            .cloned()
            .collect::<Vec<Factorization>>(),
    };
    Ok(Partition {
        element: s,
        e1: pick(&|l| th.in_first(l)),
        e2: pick(&|l| th.in_middle(l)),
        e3: pick(&|l| th.in_last(l)),
        thresholds: th,
    })
}

/// Whether the lengths in the middle band form a progression of step exactly
/// `d` with at least two terms. A single length is reported as a failure.
pub fn verify_delta_e2<B: LengthBands>(partition: &B, d: u64) -> bool {
    let lengths = partition.e2_lengths();
    lengths.len() >= 2 && lengths.windows(2).all(|w| w[1] - w[0] == d)
}

/// Checks `Δ(s) = Δ(s + lcm(a_1, a_p))` for `s = N_S, ..., N_S + repetitions - 1`.
pub fn verify_periodicity(m: &Monoid, repetitions: u64) -> Result<bool> {
    if m.embedding_dimension() < 3 {
        return Err(Error::NotApplicable("the periodicity check"));
    }
    if repetitions == 0 {
        return Ok(true);
    }
    let d = min_delta(&kernel_basis(m)?)?;
    let start = compute_n_s(m, d)?;
    let period = lcm(m.multiplicity(), m.largest())?;
    for s in start..start + repetitions {
        let later = s.checked_add(period).ok_or(Error::Overflow)?;
        if element_delta(m, s) != element_delta(m, later) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks in exact rationals that `R(n_s)`, `R'(n_s)` and their translates
/// by `(p-2) q_i` all lie in the nonnegative orthant.
pub fn verify_geometry(m: &Monoid, d: u64, n_s: u64) -> Result<bool> {
    let p = m.embedding_dimension();
    if p < 3 {
        return Err(Error::NotApplicable("the geometric check"));
    }
    let g = Geometry::new(m, d, n_s);
    let r = g.r(n_s)?;
    let r_prime = g.r_prime(n_s)?;
    if !r.is_nonnegative() || !r_prime.is_nonnegative() {
        return Ok(false);
    }
    let k = Rational::from((p - 2) as u64);
    for i in 2..p {
        let step = RationalVector::from_ints(&g.q(i)?).try_scale(k)?;
        if !r.try_add(&step)?.is_nonnegative() || !r_prime.try_add(&step)?.is_nonnegative() {
            return Ok(false);
        }
    }
    Ok(true)
}
