//! Exact rationals, primes and the places of ℚ.

mod logq;
mod place;
mod prime;
mod rational;

pub use logq::LogQ;
pub use place::{abs_at, log_abs, ord_p, support, valuations, Place};
pub(crate) use place::{ord_int, split_off_primes};
pub use prime::{factor, is_prime, Factorization, Prime};
pub use rational::Rational;
