//! Recomputes the larger published Delta sets, which take seconds rather
//! than milliseconds. Not part of the test suite.
//!
//! ```text
//! cargo run --release -p delta-core --example table_rows            # every row
//! cargo run --release -p delta-core --example table_rows -- 7 15 17 18 20
//! ```

use std::process::ExitCode;

use delta_core::{chapman_bound, delta_set, ChapmanVariant, DeltaOptions, Monoid};

struct Row {
    generators: &'static [u64],
    chapman: u64,
    delta: &'static [u64],
}

const ROWS: &[Row] = &[
    Row {
        generators: &[4, 6, 15],
        chapman: 8124,
        delta: &[1, 2, 3],
    },
    Row {
        generators: &[4, 6, 199],
        chapman: 1425660,
        delta: &[],
    },
    Row {
        generators: &[11, 37, 52, 93],
        chapman: 2560511,
        delta: &[],
    },
    Row {
        generators: &[51, 53, 55, 117],
        chapman: 5806839,
        delta: &[2, 4, 6],
    },
    Row {
        generators: &[11, 53, 73, 87],
        chapman: 3209839,
        delta: &[2, 4, 6, 8, 10, 22],
    },
    Row {
        generators: &[11, 53, 73, 81],
        chapman: 2782447,
        delta: &[2, 4, 6, 8, 10, 12],
    },
    Row {
        generators: &[7, 15, 17, 18, 20],
        chapman: 60105,
        delta: &[1, 2, 3],
    },
    Row {
        generators: &[10, 17, 19, 25, 31],
        chapman: 163540,
        delta: &[1, 2, 3],
    },
    Row {
        generators: &[10, 17, 19, 21, 25],
        chapman: 106420,
        delta: &[1, 2],
    },
    Row {
        generators: &[7, 19, 20, 25, 29],
        chapman: 159923,
        delta: &[1, 2, 3, 5],
    },
    Row {
        generators: &[31, 73, 77, 87, 91],
        chapman: 6047393,
        delta: &[2, 4, 6],
    },
];

/// Ranges are written out here rather than in the table.
fn expected(row: &Row) -> Vec<u64> {
    match row.generators {
        [4, 6, 199] => (1..=65).collect(),
        [11, 37, 52, 93] => (1..=21).collect(),
        _ => row.delta.to_vec(),
    }
}

fn main() -> ExitCode {
    let wanted: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failures = 0;
    for row in ROWS
        .iter()
        .filter(|r| wanted.is_empty() || r.generators == wanted.as_slice())
    {
        let m = Monoid::new(row.generators).expect("published generators are valid");
        let c = delta_set(&m, &DeltaOptions::default()).expect("computation succeeds");
        let bound = chapman_bound(&m, ChapmanVariant::Table).expect("bound fits in u64");
        let ok = c.delta.to_vec() == expected(row) && bound == row.chapman;
        failures += usize::from(!ok);
        println!(
            "[{}] {m}: Δ = {} (bound {bound}, N_S = {}, {} factorizations, {} threads, {:.2?})",
            if ok { "PASS" } else { "FAIL" },
            c.delta,
            c.bound_report.as_ref().map_or(0, |r| r.n_s),
            c.stats.factorizations,
            c.stats.threads,
            c.stats.elapsed,
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
