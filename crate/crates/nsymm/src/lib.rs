//! Exact integer arithmetic for the Hopf algebra `NSymm` of noncommutative
//! symmetric functions and its graded dual `QSymm` of quasisymmetric functions.
//!
//! The crate builds, over the integers and without any floating point:
//!
//! - compositions (words over the positive integers), Lyndon words and the
//!   weight/length/lexicographic orderings ([`words`]);
//! - the free algebras `NSymm = Z<Z_1, Z_2, ...>` and `2NSymm = Z<X_i, Y_j>`
//!   with their comultiplication, antipode, Verschiebung operators and word
//!   reversal ([`ncpoly`]);
//! - truncated power series in one and two central variables with polynomial
//!   coefficients ([`series`]);
//! - the two bi-isobaric decompositions of the curve commutator
//!   `X(s)^-1 Y(t)^-1 X(s) Y(t)` and of `Z(s)^-1 Z(t)^-1 Z(s+t)`, in both the
//!   wl and swl factor orderings ([`isobaric`]);
//! - divided power series (curves), V-curves and curve substitution
//!   ([`curves`]);
//! - the recursive basis of primitives indexed by Lyndon words, with the
//!   free-Lie-algebra index table ([`primitives`]);
//! - the overlapping shuffle algebra and the duality pairing ([`qsymm`]);
//! - ordered power products and the per-weight integral basis and rank
//!   checks behind the freeness of `QSymm` ([`freeness`]);
//! - Smith/Hermite normal forms and lattice indices over `Z` ([`zlattice`]).
//!
//! Every identity the construction rests on is re-verified mechanically;
//! the [`verify`] module packages those checks into named suites for the
//! CLI.
//!
//! With the default `parallel` feature the embarrassingly parallel parts
//! (table levels, large term maps, verification suites) run on rayon; the
//! same code builds without it and runs sequentially.

pub mod curves;
pub mod exec;
pub mod freeness;
pub mod isobaric;
pub mod json;
pub mod ncpoly;
pub mod primitives;
pub mod qsymm;
pub mod rng;
pub mod series;
pub mod verify;
pub mod words;
pub mod zlattice;

pub use ncpoly::{Host, Int, Letter, MultiTensor, NcPoly, Tag, TensorPoly, Word};
pub use words::Composition;

/// Convenience constructor for `BigInt` values in tests and call sites.
pub fn int(v: i64) -> Int {
    Int::from(v)
}
