//! Delta set of a whole monoid.
//!
//! For `p >= 3` only the `a_1` elements `T, T-1, ..., T-a_1+1` below
//! `T = N_S + a_p - 1` are factored. Each is compressed to its
//! [`OmegaTable`] and walked down in steps of `a_1` to element 0, which
//! visits every element `<= T` exactly once. The chains are independent and
//! run on a rayon pool; their results are merged by set union in residue
//! order, so the output does not depend on the schedule.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bound::{bound_report, BoundReport, ChapmanVariant};
use crate::error::{Error, Result};
use crate::factor::{for_each_factorization, omega_for, omega_shift, DeltaSet};
use crate::monoid::Monoid;

#[derive(Debug, Clone, Default)]
pub struct DeltaOptions {
    /// Worker threads; `None` uses the logical CPU count. Always capped at `a_1`.
    pub threads: Option<usize>,
    pub retain_per_element: bool,
    pub chapman_variant: ChapmanVariant,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DeltaStats {
    /// Factorizations enumerated for the top window.
    pub factorizations: u64,
    pub elements_enumerated: u64,
    pub threads: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct DeltaComputation {
    pub monoid: Monoid,
    /// Absent for `p <= 2`, where the answer is closed form.
    pub bound_report: Option<BoundReport>,
    pub delta: DeltaSet,
    /// `Δ(s)` for every member `s <= window_top`, when requested.
    pub per_element: Option<BTreeMap<u64, DeltaSet>>,
    pub stats: DeltaStats,
}

struct Chain {
    delta: DeltaSet,
    per_element: Vec<(u64, DeltaSet)>,
    factorizations: u64,
}

fn run_chain(m: &Monoid, top: u64, retain: bool) -> Result<Chain> {
    let (mut table, factorizations) = omega_for(m, top);
    let mut delta = DeltaSet::new();
    let mut per_element = Vec::new();
    loop {
        if !table.is_empty() {
            let local = table.delta();
            delta.union_with(&local);
            if retain {
                per_element.push((table.element, local));
            }
        }
        if table.element < m.multiplicity() {
            break;
        }
        table = omega_shift(&table, m)?;
    }
    Ok(Chain {
        delta,
        per_element,
        factorizations,
    })
}

pub fn default_threads(m: &Monoid) -> usize {
    let cpus = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    cpus.min(m.multiplicity() as usize).max(1)
}

pub fn delta_set(m: &Monoid, options: &DeltaOptions) -> Result<DeltaComputation> {
    let start = Instant::now();
    let p = m.embedding_dimension();
    if p <= 2 {
        let delta = if p == 2 {
            let a = m.generators();
            std::iter::once(a[1] - a[0]).collect()
        } else {
            DeltaSet::new()
        };
        return Ok(DeltaComputation {
            monoid: m.clone(),
            bound_report: None,
            delta,
            per_element: None,
            stats: DeltaStats {
                threads: 1,
                elapsed: start.elapsed(),
                ..Default::default()
            },
        });
    }

    let report = bound_report(m, options.chapman_variant)?;
    let top = report.window_top;
    let a1 = m.multiplicity();
    let tops: Vec<u64> = (0..a1).filter(|&r| r <= top).map(|r| top - r).collect();
    let threads = options
        .threads
        .unwrap_or_else(|| default_threads(m))
        .clamp(1, a1 as usize);

    let retain = options.retain_per_element;
    let chains: Vec<Chain> = if threads == 1 {
        tops.iter()
            .map(|&t| run_chain(m, t, retain))
            .collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?;
        pool.install(|| {
            tops.par_iter()
                .map(|&t| run_chain(m, t, retain))
                .collect::<Result<_>>()
        })?
    };

    let mut delta = DeltaSet::new();
    let mut per_element = retain.then(BTreeMap::new);
    let mut factorizations = 0u64;
    for chain in chains {
        delta.union_with(&chain.delta);
        factorizations += chain.factorizations;
        if let Some(map) = per_element.as_mut() {
            map.extend(chain.per_element);
        }
    }

    Ok(DeltaComputation {
        monoid: m.clone(),
        bound_report: Some(report),
        delta,
        per_element,
        stats: DeltaStats {
            factorizations,
            elements_enumerated: tops.len() as u64,
            threads,
            elapsed: start.elapsed(),
        },
    })
}

/// `⋃_{s <= limit} Δ(s)` by factoring every element separately. Only the
/// distinct lengths of each element are kept, never the factorizations.
pub fn brute_force_delta(m: &Monoid, limit: u64) -> Result<DeltaSet> {
    let mut delta = DeltaSet::new();
    let mut lengths = BTreeSet::new();
    for s in 0..=limit {
        lengths.clear();
        for_each_factorization(m, s, |x| {
            lengths.insert(x.iter().sum::<u64>());
        });
        delta.union_with(&DeltaSet::from_sorted_lengths(&lengths));
    }
    Ok(delta)
}

/// `Δ(s)` of one element; empty when `s` is not a member.
pub fn element_delta(m: &Monoid, s: u64) -> DeltaSet {
    omega_for(m, s).0.delta()
}
