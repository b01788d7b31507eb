//! Exact-arithmetic toolkit for positivity problems over rational group algebras.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! group backends -> group-algebra matrices -> equivariant complexes
//!               -> finite-dimensional evaluation -> SOS certificates
//! ```
//!
//! * [`group`] — group elements with canonical normal forms (free words,
//!   string rewriting, finite permutations), ball enumeration and finite
//!   quotient homomorphisms.
//! * [`algebra`] — sparse elements of the rational group algebra, rectangular
//!   matrices over it, and the star anti-involution.
//! * [`complex`] — compiles orbit/face descriptions of an equivariant
//!   simplicial complex into boundary matrices and Laplacians.
//! * [`rep`] — orthogonal representations, exact evaluation of group-algebra
//!   matrices, cohomology dimensions, Hodge decompositions and exact PSD
//!   certification.
//! * [`cert`] — Gram-matrix constraint systems, a deterministic alternating
//!   projection solver, exact rational rounding, and certificate
//!   verification.
//!
//! All decision procedures use arbitrary-precision rationals; floating point
//! appears only inside the numeric feasibility search, whose output is always
//! re-verified exactly.

pub mod algebra;
pub mod cert;
pub mod complex;
pub mod error;
pub mod group;
pub mod linalg;
pub mod rat;
pub mod rep;

pub use error::{Error, Result};
pub use rat::Rat;

#[cfg(test)]
pub(crate) mod testutil;
