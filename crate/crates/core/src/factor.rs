//! Factorizations of single elements and what is derived from them:
//! length sets, per-element Delta sets and first-coordinate length tables.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::monoid::Monoid;

/// One expression `s = Σ x_i a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    pub counts: Vec<u64>,
    pub element: u64,
}

impl Factorization {
    pub fn length(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// All factorizations of one element, sorted lexicographically decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    pub element: u64,
    pub factorizations: Vec<Factorization>,
}

impl FactorizationSet {
    pub fn is_empty(&self) -> bool {
        self.factorizations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factorizations.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Factorization> {
        self.factorizations.iter()
    }
}

/// Calls `visit` once per factorization of `s` and returns how many there were.
///
/// Depth first from the largest generator down, each coordinate bounded by
/// the remaining budget. The last two coordinates are solved together:
/// `a_1 x_1 + a_2 x_2 = r` has its solutions on an arithmetic progression
/// in `x_2`, so only actual solutions are visited.
pub fn for_each_factorization<F>(m: &Monoid, s: u64, mut visit: F) -> u64
where
    F: FnMut(&[u64]),
{
    let a = m.generators();
    let mut counts = vec![0u64; a.len()];
    if a.len() == 1 {
        if s.is_multiple_of(a[0]) {
            counts[0] = s / a[0];
            visit(&counts);
            return 1;
        }
        return 0;
    }
    let pair = PairSolver::new(a[0], a[1]);
    let mut found = 0u64;
    descend(
        a,
        &pair,
        a.len() - 1,
        s,
        &mut counts,
        &mut visit,
        &mut found,
    );
    found
}

/// Solutions of `a x + b y = r` with `x, y >= 0`.
struct PairSolver {
    a: u64,
    b: u64,
    g: u64,
    /// `a / g`: step of `y` between consecutive solutions
    step: u64,
    /// inverse of `b / g` modulo `a / g`
    inv: u64,
}

impl PairSolver {
    fn new(a: u64, b: u64) -> Self {
        let g = crate::arith::gcd(a, b);
        let step = a / g;
        let inv = if step == 1 {
            0
        } else {
            let (_, x, _) = crate::arith::ext_gcd(((b / g) % step) as i128, step as i128)
                .expect("small operands");
            x.rem_euclid(step as i128) as u64
        };
        PairSolver { a, b, g, step, inv }
    }

    fn solve<F: FnMut(u64, u64)>(&self, r: u64, mut each: F) {
        if !r.is_multiple_of(self.g) {
            return;
        }
        let rg = r / self.g;
        let mut y = ((rg % self.step) as u128 * self.inv as u128 % self.step as u128) as u64;
        while y.checked_mul(self.b).is_some_and(|by| by <= r) {
            each((r - y * self.b) / self.a, y);
            y += self.step;
        }
    }
}

fn descend<F>(
    a: &[u64],
    pair: &PairSolver,
    idx: usize,
    residual: u64,
    counts: &mut [u64],
    visit: &mut F,
    found: &mut u64,
) where
    F: FnMut(&[u64]),
{
    if idx == 1 {
        pair.solve(residual, |x0, x1| {
            counts[0] = x0;
            counts[1] = x1;
            *found += 1;
            visit(counts);
        });
        counts[0] = 0;
        counts[1] = 0;
        return;
    }
    let g = a[idx];
    for x in 0..=residual / g {
        counts[idx] = x;
        descend(a, pair, idx - 1, residual - x * g, counts, visit, found);
    }
    counts[idx] = 0;
}

pub fn enumerate_factorizations(m: &Monoid, s: u64) -> FactorizationSet {
    let mut factorizations = Vec::new();
    for_each_factorization(m, s, |x| {
        factorizations.push(Factorization {
            counts: x.to_vec(),
            element: s,
        })
    });
    factorizations.sort_unstable_by(|x, y| y.counts.cmp(&x.counts));
    FactorizationSet {
        element: s,
        factorizations,
    }
}

/// The distinct lengths `l_1 < ... < l_k` of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSet {
    pub element: u64,
    pub lengths: Vec<u64>,
}

impl LengthSet {
    pub fn delta(&self) -> DeltaSet {
        delta_of_element(self)
    }
}

pub fn length_set(fs: &FactorizationSet) -> Result<LengthSet> {
    if fs.is_empty() {
        return Err(Error::EmptyFactorizationSet);
    }
    let lengths: BTreeSet<u64> = fs.iter().map(Factorization::length).collect();
    Ok(LengthSet {
        element: fs.element,
        lengths: lengths.into_iter().collect(),
    })
}

/// A sorted set of positive gaps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DeltaSet {
    values: BTreeSet<u64>,
}

impl DeltaSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Consecutive differences of a strictly increasing sequence.
    pub fn from_sorted_lengths<'a, I>(lengths: I) -> Self
    where
        I: IntoIterator<Item = &'a u64>,
    {
        let mut values = BTreeSet::new();
        let mut prev: Option<u64> = None;
        for &l in lengths {
            if let Some(p) = prev {
                values.insert(l - p);
            }
            prev = Some(l);
        }
        DeltaSet { values }
    }

    pub fn insert(&mut self, v: u64) {
        self.values.insert(v);
    }

    pub fn union_with(&mut self, other: &DeltaSet) {
        self.values.extend(other.values.iter().copied());
    }

    pub fn contains(&self, v: u64) -> bool {
        self.values.contains(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn min(&self) -> Option<u64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.values.last().copied()
    }

    pub fn gcd(&self) -> u64 {
        self.values
            .iter()
            .fold(0, |acc, &v| crate::arith::gcd(acc, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

impl FromIterator<u64> for DeltaSet {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        DeltaSet {
            values: iter.into_iter().collect(),
        }
    }
}

impl std::fmt::Display for DeltaSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub fn delta_of_element(ls: &LengthSet) -> DeltaSet {
    DeltaSet::from_sorted_lengths(&ls.lengths)
}

/// For each length of an element, the largest first coordinate among its
/// factorizations of that length.
///
/// This is all that is needed to walk down by `a_1`: removing one copy of
/// `a_1` maps `E(s)` onto `E(s - a_1)` bijectively, so the table of
/// `s - a_1` is a shifted copy of this one with the zero entries removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTable {
    pub element: u64,
    pub entries: BTreeMap<u64, u64>,
}

impl OmegaTable {
    fn record(&mut self, length: u64, first: u64) {
        self.entries
            .entry(length)
            .and_modify(|v| *v = (*v).max(first))
            .or_insert(first);
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lengths(&self) -> impl Iterator<Item = &u64> {
        self.entries.keys()
    }

    pub fn length_set(&self) -> LengthSet {
        LengthSet {
            element: self.element,
            lengths: self.entries.keys().copied().collect(),
        }
    }

    pub fn delta(&self) -> DeltaSet {
        DeltaSet::from_sorted_lengths(self.entries.keys())
    }
}

pub fn omega_of(fs: &FactorizationSet) -> OmegaTable {
    let mut table = OmegaTable {
        element: fs.element,
        entries: BTreeMap::new(),
    };
    for x in fs.iter() {
        table.record(x.length(), x.counts[0]);
    }
    table
}

/// Builds the table of `s` straight from the enumeration without keeping
/// the factorizations. Returns the table and the number of factorizations seen.
pub fn omega_for(m: &Monoid, s: u64) -> (OmegaTable, u64) {
    // lengths never exceed s / a_1, so a dense scratch row suffices
    let mut best: Vec<Option<u64>> = vec![None; (s / m.multiplicity()) as usize + 1];
    let count = for_each_factorization(m, s, |x| {
        let slot = &mut best[x.iter().sum::<u64>() as usize];
        *slot = Some(slot.map_or(x[0], |v| v.max(x[0])));
    });
    let entries = best
        .into_iter()
        .enumerate()
        .filter_map(|(len, first)| first.map(|f| (len as u64, f)))
        .collect();
    (
        OmegaTable {
            element: s,
            entries,
        },
        count,
    )
}

/// The table of `s - a_1` from the table of `s`.
pub fn omega_shift(t: &OmegaTable, m: &Monoid) -> Result<OmegaTable> {
    let a1 = m.multiplicity();
    if t.element < a1 {
        return Err(Error::ShiftUnderflow {
            element: t.element,
            step: a1,
        });
    }
    let entries = t
        .entries
        .iter()
        .filter(|&(_, &first)| first > 0)
        .map(|(&len, &first)| (len - 1, first - 1))
        .collect();
    Ok(OmegaTable {
        element: t.element - a1,
        entries,
    })
}
