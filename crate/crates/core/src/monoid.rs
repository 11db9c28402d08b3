//! Validated numerical monoids.

use std::fmt;

use crate::arith::gcd_all;
use crate::error::{Error, Result};

/// Largest supported multiplicity; per-residue tables hold `a_1` entries.
pub const MAX_MULTIPLICITY: u64 = 1 << 28;

/// A primitive numerical monoid given by its minimal generating set
/// `a_1 < ... < a_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monoid {
    generators: Vec<u64>,
    /// `apery[r]`: least member congruent to `r` mod `a_1`.
    apery: Vec<u64>,
}

/// Folds generator `g` into the table of least members per residue class.
///
/// Adding `g` links residues into `gcd(a_1, g)` cycles. On each cycle the
/// current minimum cannot improve, so one pass around the cycle starting
/// from it settles every entry.
fn add_to_apery(apery: &mut [u64], g: u64) {
    let a1 = apery.len() as u64;
    let cycles = crate::arith::gcd(a1, g);
    let step = (g % a1) as usize;
    let len = (a1 / cycles) as usize;
    for r in 0..cycles as usize {
        let mut start = r;
        let mut cur = r;
        for _ in 0..len {
            if apery[cur] < apery[start] {
                start = cur;
            }
            cur = (cur + step) % apery.len();
        }
        if apery[start] == u64::MAX {
            continue;
        }
        cur = start;
        for _ in 0..len {
            let next = (cur + step) % apery.len();
            apery[next] = apery[next].min(apery[cur].saturating_add(g));
            cur = next;
        }
    }
}

impl Monoid {
    /// Sorts, deduplicates and drops every generator that is a nonnegative
    /// combination of the smaller ones.
    ///
    /// Rejects (rather than rescales) inputs whose gcd exceeds one.
    pub fn new(raw: &[u64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(position) = raw.iter().position(|&g| g == 0) {
            return Err(Error::NonPositiveGenerator { position });
        }
        let mut sorted = raw.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let g = gcd_all(&sorted);
        if g != 1 {
            return Err(Error::NonPrimitive { gcd: g });
        }

        let a1 = sorted[0];
        if a1 > MAX_MULTIPLICITY {
            return Err(Error::TooLarge {
                multiplicity: a1,
                limit: MAX_MULTIPLICITY,
            });
        }
        let mut apery = vec![u64::MAX; a1 as usize];
        apery[0] = 0;
        let mut generators = vec![a1];
        for &g in &sorted[1..] {
            if g >= apery[(g % a1) as usize] {
                continue;
            }
            generators.push(g);
            add_to_apery(&mut apery, g);
        }
        Ok(Monoid { generators, apery })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Number of minimal generators, `p`.
    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    /// The smallest generator `a_1`.
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    /// The largest generator `a_p`.
    pub fn largest(&self) -> u64 {
        *self.generators.last().unwrap()
    }

    /// Whether `s` is a nonnegative combination of the generators: `s` is a
    /// member exactly when it is at least the least member of its residue
    /// class mod `a_1`.
    pub fn is_member(&self, s: u64) -> bool {
        s >= self.apery[(s % self.multiplicity()) as usize]
    }

    /// Largest integer outside the monoid, or `None` when every integer is a
    /// member (`a_1 = 1`).
    pub fn frobenius_number(&self) -> Option<u64> {
        let max = *self.apery.iter().max().unwrap();
        max.checked_sub(self.multiplicity())
    }
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Monoid").field(&self.generators).finish()
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}
