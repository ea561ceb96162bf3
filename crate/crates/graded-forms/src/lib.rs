//! Exact-arithmetic engine for quasimodular forms, Jacobi-like forms and
//! automorphic pseudodifferential operators.
//!
//! Everything is computed over Q with arbitrary-precision rationals; the formal
//! derivative is realized as D = q·d/dq on truncated q-expansions, under which
//! every structure constant of the implemented operator calculus is rational
//! (the E2 cocycle constant becomes 12).  Transformation laws are replaced by
//! structural certification: membership in a graded space is decided by exact
//! linear algebra against the level-one monomial basis together with the
//! E2-decomposition of quasimodular data.

pub mod rat;
pub mod qseries;
pub mod error;
pub mod modforms;
pub mod quasipoly;
pub mod jacobilike;
pub mod psido;
pub mod brackets;
pub mod halfint;
pub mod certificate;
pub mod json;
pub mod selftest;

pub use error::Error;
pub use qseries::QSeries;
pub use rat::Rat;
