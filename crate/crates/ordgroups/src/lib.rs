//! Exact computations with left- and bi-orderable groups.
//!
//! The crate ships a family of concrete orders, each exposed through the
//! same comparison-oracle interface so that one property harness exercises
//! them all:
//!
//! - [`braid`]: braid groups on Artin generators, handle reduction, the
//!   left order it decides, and the prime-knot test on closures;
//! - [`magnus`]: free groups bi-ordered through the expansion
//!   `x -> 1 + X` into noncommutative power series;
//! - [`lattice`]: weight-vector orders on `Z^n` with a perturbation
//!   construction, the Klein bottle group, and a germ group of linear maps;
//! - [`pl`]: piecewise linear homeomorphisms of the unit interval with a
//!   first-departure bi-order and a test-point left order;
//! - [`presentation`]: finite presentations with abelianization, bounded
//!   rewriting, orderability refutations and checkable certificates.
//!
//! All arithmetic is exact; all sampling is deterministic from 64-bit seeds.

pub mod braid;
pub mod lattice;
pub mod magnus;
pub mod order;
pub mod pl;
pub mod presentation;
pub mod snf;
pub mod words;

pub use order::{
    check_cone_axioms, check_order_laws, conradian_check, rank_embedding_monotone,
    verify_bi_invariance, verify_left_invariance, CheckBudget, CheckReport, ConradianOutcome,
    OrderOracle, SampleSet, Sign, Violation,
};
