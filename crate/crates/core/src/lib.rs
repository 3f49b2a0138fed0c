//! Exact-arithmetic toolkit for ramification invariants of valued field
//! extensions.
//!
//! The crate computes with the objects that appear when a valuation is
//! extended along a field compositum: finitely generated subgroups of ℚⁿ
//! (value groups) in a canonical lattice form, finite residue fields 𝔽_{p^k},
//! truncated Laurent–Puiseux series with exact rational exponents, Gauss
//! valuations on rational function fields, and Newton–Hensel lifting of
//! simple residue roots.  On top of these sit predictors for compositum
//! invariants (value group sums, lcm of ramification indices, p′-part
//! bounds) and brute-force oracles that verify each prediction by direct
//! enumeration, reporting every comparison as a verified/refuted claim.
//!
//! All arithmetic is exact: group coordinates and series exponents are
//! `BigRational`, residue coefficients live in explicitly constructed
//! 𝔽_{p^k}.  Randomized verifiers draw from seeded ChaCha streams, so a
//! fixed configuration always reproduces the same report bytes.

pub mod arith;
pub mod compositum;
pub mod extension;
pub mod funcfield;
pub mod hensel;
pub mod ordgroup;
pub mod report;
pub mod resfield;
pub mod runners;
pub mod series;

/// Exact rational scalar used for group coordinates, series exponents and
/// precision cutoffs throughout the crate.
pub type Rat = num::BigRational;
