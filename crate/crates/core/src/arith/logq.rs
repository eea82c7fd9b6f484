use core::fmt;
use core::iter::Sum;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigUint;
use num_traits::One;

use super::prime::ln_biguint;
use super::{Prime, Rational};
use crate::error::{Error, Result};

/// The real number `log q` for a positive rational `q`, kept exactly.
///
/// Sums of logarithms are products of arguments and minima are minima of
/// arguments, so every height, Weil value and gcd quantity over ℚ stays in
/// this form. Only [`LogQ::value`] leaves exact arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogQ(Rational);

impl LogQ {
    /// `log 1 = 0`.
    pub fn zero() -> Self {
        LogQ(Rational::one())
    }

    /// `log q`; errors unless `q > 0`.
    pub fn of(q: Rational) -> Result<Self> {
        if q.is_positive() {
            Ok(LogQ(q))
        } else {
            Err(Error::Invalid(alloc::format!("log of non-positive {q}")))
        }
    }

    pub fn of_integer(n: BigUint) -> Result<Self> {
        Self::of(Rational::from_integer(num_bigint::BigInt::from(n)))
    }

    /// `k · log p`.
    pub fn prime_power(p: &Prime, k: i64) -> Self {
        let base = Rational::from_integer(num_bigint::BigInt::from(p.value().clone()));
        LogQ(base.pow(k).expect("prime is nonzero"))
    }

    /// The positive rational whose logarithm this is.
    pub fn argument(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Rational::one()
    }

    /// `k · self`.
    pub fn times(&self, k: i64) -> Self {
        LogQ(self.0.pow(k).expect("positive argument"))
    }

    /// Natural-log value as a float.
    pub fn value(&self) -> f64 {
        if self.0.is_one() {
            return 0.0;
        }
        let num = ln_biguint(&self.0.numer_abs());
        let den = self.0.denom_abs();
        if den.is_one() {
            num
        } else {
            num - ln_biguint(&den)
        }
    }
}

impl Default for LogQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for LogQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log({})", self.0)
    }
}

impl fmt::Display for LogQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for LogQ {
    type Output = LogQ;
    fn add(self, rhs: LogQ) -> LogQ {
        LogQ(self.0 * rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Add<&'a LogQ> for &'a LogQ {
    type Output = LogQ;
    fn add(self, rhs: &'a LogQ) -> LogQ {
        LogQ(&self.0 * &rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for LogQ {
    type Output = LogQ;
    fn sub(self, rhs: LogQ) -> LogQ {
        LogQ(self.0 / rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Sub<&'a LogQ> for &'a LogQ {
    type Output = LogQ;
    fn sub(self, rhs: &'a LogQ) -> LogQ {
        LogQ(&self.0 / &rhs.0)
    }
}

impl Neg for LogQ {
    type Output = LogQ;
    fn neg(self) -> LogQ {
        LogQ(self.0.recip().expect("positive argument"))
    }
}

impl Sum for LogQ {
    fn sum<I: Iterator<Item = LogQ>>(iter: I) -> LogQ {
        iter.fold(LogQ::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a LogQ> for LogQ {
    fn sum<I: Iterator<Item = &'a LogQ>>(iter: I) -> LogQ {
        iter.fold(LogQ::zero(), |a, b| &a + b)
    }
}
