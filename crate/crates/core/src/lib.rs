//! Exact combinatorics of spherical Hecke algebras for unramified group data.
//!
//! Everything here is computed over a based root datum `(X^*, Δ, X_*, Δ^∨)`
//! carrying a finite-order automorphism σ (the Frobenius of an unramified
//! group). The crate provides, in exact arithmetic throughout:
//!
//! * integer lattice quotients and Smith normal form ([`lattice_toolkit`]),
//! * Weyl orbits, dominance, and pairings ([`root_datum`]),
//! * the torus Hecke algebra `Q[p, p^{-1}][X_*(T)^σ]` with its twisted
//!   ("dot") Weyl action ([`torus_algebra`]),
//! * the Hecke polynomial of a minuscule cocharacter and its Galois-orbit
//!   factorization ([`hecke_engine`]),
//! * unramified σ-conjugacy classes, Newton points, Kottwitz invariants and
//!   dimension formulas ([`isocrystal_engine`]),
//! * Mirković–Vilonen label combinatorics for minuscule weights
//!   ([`mv_engine`]),
//! * the per-class congruence factors and the induction ledger that ties the
//!   above together ([`congruence_engine`]).
//!
//! Coefficients are Laurent polynomials in a formal symbol `p` over exact
//! rationals, so a single computation is valid for every prime; the CLI crate
//! offers specialization. All containers are ordered (`BTreeMap`/`BTreeSet`)
//! and all representative choices are pinned, so results are deterministic.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization to files, and the
//! command line live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod congruence_engine;
pub mod hecke_engine;
pub mod isocrystal_engine;
pub mod lattice_toolkit;
pub mod mv_engine;
pub mod presets;
pub mod root_datum;
pub mod torus_algebra;

pub use root_datum::{BasedRootDatum, Cocharacter, LeviDatum, RationalCocharacter};
pub use torus_algebra::{HeckePolynomial, LaurentPolynomial, TorusAlgebraElement};
