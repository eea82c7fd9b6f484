//! Exact height machinery over the rationals.
//!
//! Everything in this crate is pure and allocation-only: places and absolute
//! values of ℚ, sparse multivariate polynomials, projective heights and local
//! Weil functions, generalized gcds along finitely generated subgroups of
//! 𝔾ₘⁿ(ℚ), a detector for the exceptional subgroup translates, and exact
//! lattice-point counts for the γ-invariant of linear blowups of ℙⁿ.
//!
//! Real-valued outputs are carried as [`LogQ`], the logarithm of a positive
//! rational, so identities such as the product formula or `h = m + N` are
//! checked exactly and only converted to `f64` for reporting.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod arith;
pub mod detect;
mod error;
pub mod exec;
pub mod gamma;
pub mod gcd;
pub mod heights;
mod math;
pub mod poly;

pub use arith::{factor, log_abs, ord_p, support, Factorization, LogQ, Place, Prime, Rational};
pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
