//! Symbolic computation engine for quantum isometry groups of discrete group
//! duals.
//!
//! Given a finitely presented group with a symmetric generating set, the
//! engine builds the fundamental unitary of the quantum isometry group,
//! derives the two-sided *-ideal of relations among its entries by
//! coefficient comparison and closure rules, and recognizes doubling,
//! double-doubling and free wreath product structure.
//!
//! The crate is organized to follow the data flow:
//!
//! * [`presentation`] - the presentation DSL, free words, symmetric index
//! * [`word`] - exact word-problem backends and canonical normal forms
//! * [`algebra`] - the free *-algebra on matrix entries, reduction and
//!   bounded-degree saturation
//! * [`engine`] - fundamental matrix, action expansion, relation extraction
//! * [`recognize`] - doubling / double-doubling recognizers
//! * [`wreath`] - free wreath product presentations and the isomorphism
//!   checks for quotients of free cyclic groups
//! * [`report`] - run configuration and reproducible reports

pub mod algebra;
pub mod engine;
pub mod presentation;
pub mod recognize;
pub mod report;
pub mod scalar;
pub mod word;
pub mod wreath;

/// Exact rational scalar used by the engine proper.
///
/// The polynomial layer is generic over [`scalar::Scalar`]; everything the
/// pipeline derives is exactness-critical, so the concrete instantiation is
/// arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;

/// Noncommutative polynomial over the engine's exact scalar.
pub type Poly = algebra::NcPoly<Rat>;

pub use presentation::{FreeWord, GeneratorSymbol, GroupPresentation};
pub use word::{Backend, GroupElement};
