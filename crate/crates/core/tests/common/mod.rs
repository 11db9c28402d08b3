//! Reference computations that share no code path with the library's
//! enumeration or table shifting.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// `L(s)` for every `s <= limit` via `L(s) = ⋃_i (L(s - a_i) + 1)`.
pub fn length_sets_by_recurrence(gens: &[u64], limit: u64) -> Vec<BTreeSet<u64>> {
    let mut sets: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); limit as usize + 1];
    sets[0].insert(0);
    for s in 1..=limit as usize {
        let mut here = BTreeSet::new();
        for &g in gens {
            let g = g as usize;
            if g <= s {
                here.extend(sets[s - g].iter().map(|l| l + 1));
            }
        }
        sets[s] = here;
    }
    sets
}

pub fn gaps(lengths: &BTreeSet<u64>) -> BTreeSet<u64> {
    let v: Vec<u64> = lengths.iter().copied().collect();
    v.windows(2).map(|w| w[1] - w[0]).collect()
}

/// `⋃_{s <= limit} Δ(s)` from the recurrence.
pub fn delta_by_recurrence(gens: &[u64], limit: u64) -> BTreeSet<u64> {
    length_sets_by_recurrence(gens, limit)
        .iter()
        .flat_map(gaps)
        .collect()
}

/// Number of factorizations of `s`, counted with plain nested loops from
/// the first coordinate up, testing the full sum at the leaves.
pub fn count_factorizations_naive(gens: &[u64], s: u64) -> u64 {
    fn go(gens: &[u64], s: u64, acc: u64) -> u64 {
        match gens.split_first() {
            None => u64::from(acc == s),
            Some((&g, rest)) => (0..=(s - acc) / g).map(|x| go(rest, s, acc + x * g)).sum(),
        }
    }
    go(gens, s, 0)
}

/// Minimality of a generating set by plain representability DP.
pub fn is_minimal_generating_set(gens: &[u64]) -> bool {
    gens.iter().enumerate().all(|(i, &g)| {
        let rest: Vec<u64> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        let mut r = vec![false; g as usize + 1];
        r[0] = true;
        for t in 1..=g as usize {
            r[t] = rest.iter().any(|&h| h as usize <= t && r[t - h as usize]);
        }
        !r[g as usize]
    })
}
