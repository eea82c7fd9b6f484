use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use super::prime::factor_magnitude;
use super::{LogQ, Prime, Rational};
use crate::error::{Error, Result};

/// A place of ℚ: the usual absolute value or a p-adic one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Archimedean,
    Finite(Prime),
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        Prime::from_u64(p).map(Place::Finite)
    }

    pub fn prime(&self) -> Option<&Prime> {
        match self {
            Place::Archimedean => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// p-adic valuation of a nonzero integer.
pub(crate) fn ord_int(n: &BigUint, p: &Prime) -> u64 {
    debug_assert!(!n.is_zero());
    let mut count = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p.value());
        if !r.is_zero() {
            return count;
        }
        rest = q;
        count += 1;
    }
}

/// `ord_p(x) = ord_p(numerator) − ord_p(denominator)`.
pub fn ord_p(x: &Rational, p: &Prime) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let num = ord_int(&x.numer_abs(), p) as i64;
    let den = ord_int(&x.denom_abs(), p) as i64;
    Ok(num - den)
}

/// `log |x|_v` as an exact value: `|x|` at infinity, `p^(−ord_p x)` at p.
pub fn abs_at(x: &Rational, v: &Place) -> Result<LogQ> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    match v {
        Place::Archimedean => LogQ::of(x.abs()),
        Place::Finite(p) => Ok(LogQ::prime_power(p, -ord_p(x, p)?)),
    }
}

/// `log |x|_v` in natural-log units.
pub fn log_abs(x: &Rational, v: &Place) -> Result<f64> {
    match v {
        Place::Archimedean => abs_at(x, v).map(|l| l.value()),
        Place::Finite(p) => Ok(-(ord_p(x, p)? as f64) * p.ln()),
    }
}

/// Primes dividing numerator or denominator, with `ord_p(x)`.
pub fn valuations(x: &Rational) -> Result<Vec<(Prime, i64)>> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let mut counts = BTreeMap::new();
    factor_magnitude(&x.numer_abs(), &mut counts)?;
    let mut den = BTreeMap::new();
    factor_magnitude(&x.denom_abs(), &mut den)?;
    let mut out: BTreeMap<BigUint, i64> = counts.into_iter().map(|(p, e)| (p, e as i64)).collect();
    for (p, e) in den {
        *out.entry(p).or_insert(0) -= e as i64;
    }
    Ok(out
        .into_iter()
        .map(|(p, e)| (Prime::new_unchecked(p), e))
        .collect())
}

/// The archimedean place followed by every prime with `ord_p(x) ≠ 0`.
pub fn support(x: &Rational) -> Result<Vec<Place>> {
    let mut out = alloc::vec![Place::Archimedean];
    out.extend(valuations(x)?.into_iter().map(|(p, _)| Place::Finite(p)));
    Ok(out)
}

/// Splits `n ≥ 1` into its part supported on `primes` and the cofactor.
pub(crate) fn split_off_primes<'a>(
    n: &BigUint,
    primes: impl IntoIterator<Item = &'a Prime>,
) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut stripped = BigUint::from(1u32);
    for p in primes {
        loop {
            let (q, r) = rest.div_rem(p.value());
            if !r.is_zero() || rest.is_zero() {
                break;
            }
            rest = q;
            stripped *= p.value();
        }
    }
    (stripped, rest)
}
