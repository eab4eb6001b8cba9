//! Resummation of superfactorially divergent Stieltjes series.
//!
//! This crate sums divergent asymptotic series whose coefficients are
//! Stieltjes moments growing as fast as (2m)!, a regime where Padé
//! approximants converge only logarithmically. The main tool is a
//! Levin-type nonlinear sequence transformation built from weighted finite
//! differences of partial sums; Wynn's epsilon algorithm (and with it the
//! Padé table) is provided for comparison, together with high-precision
//! quadrature reference values, the exact hypergeometric representation of
//! the transformation error, and its large-order asymptotic envelopes.
//!
//! Everything runs at user-selected decimal precision (default 150 digits)
//! on top of MPFR via the `rug` crate.

pub mod complex;
pub mod error;
pub mod precision;
pub mod quadrature;
pub mod reference;
pub mod series;
pub mod special;
pub mod transforms;

pub use complex::BigComplex;
pub use error::{Error, Result};
pub use precision::PrecisionContext;

/// Arbitrary-precision real number (MPFR float).
pub type BigReal = rug::Float;
