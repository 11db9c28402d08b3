//! Delta sets of numerical monoids.
//!
//! A monoid `S = <a_1, ..., a_p>` has, for every element `s`, a set of
//! factorization lengths `l_1 < ... < l_k`; `Δ(s)` collects their
//! consecutive gaps and `Δ(S)` is the union over all `s`. This crate bounds
//! the region of elements that matter by an explicit `N_S`, factors only
//! `a_1` elements at the top of that region and derives everything below
//! by shifting per-length tables of maximal first coordinates.
//!
//! ```
//! use delta_core::{delta_set, DeltaOptions, Monoid};
//!
//! let s = Monoid::new(&[4, 6, 15]).unwrap();
//! let result = delta_set(&s, &DeltaOptions::default()).unwrap();
//! assert_eq!(result.delta.to_vec(), vec![1, 2, 3]);
//! ```

pub mod arith;
pub mod bound;
pub mod delta;
pub mod error;
pub mod factor;
pub mod lattice;
pub mod monoid;
pub mod rational;
pub mod verify;

pub use bound::{
    bound_report, chapman_bound, chapman_bound_of_generators, n_s, s_lower, s_upper, BoundReport,
    ChapmanVariant,
};
pub use delta::{
    brute_force_delta, delta_set, element_delta, DeltaComputation, DeltaOptions, DeltaStats,
};
pub use error::{Error, Result};
pub use factor::{
    delta_of_element, enumerate_factorizations, for_each_factorization, length_set, omega_for,
    omega_of, omega_shift, DeltaSet, Factorization, FactorizationSet, LengthSet, OmegaTable,
};
pub use lattice::{
    ell, geometry, kernel_basis, length_increase_vector, min_delta, Geometry, KernelBasis,
    LengthIncreaseVector,
};
pub use monoid::Monoid;
pub use rational::{Rational, RationalVector};
pub use verify::{
    partition_factorizations, partition_lengths, verify_delta_e2, verify_geometry,
    verify_periodicity, LengthBands, LengthPartition, Partition,
};
