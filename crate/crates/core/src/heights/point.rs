use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Place, Prime, Rational};
use crate::error::{Error, Result};

/// A point of ℙⁿ(ℚ), stored in its unique normalized form: coprime
/// integer coordinates whose first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    /// Normalizes any nonzero representative.
    pub fn new(coords: &[Rational]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Invalid(
                "a projective point needs at least two coordinates".into(),
            ));
        }
        if coords.iter().all(Rational::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let lcm = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        Self::from_integers(ints)
    }

    pub fn from_integers(mut coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Invalid(
                "a projective point needs at least two coordinates".into(),
            ));
        }
        let g = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let first_negative = coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false);
        let g = if first_negative { -g } else { g };
        for c in coords.iter_mut() {
            *c /= &g;
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::from_integers(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Number of homogeneous coordinates (`n + 1` for a point of ℙⁿ).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_rationals(&self) -> Vec<Rational> {
        self.coords
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }

    /// `max_i |x_i|` of the normalized coordinates.
    pub fn max_abs(&self) -> BigUint {
        self.coords
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    /// Parses `[a/b : c/d : ...]`; the brackets are optional.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').unwrap_or(t);
        let t = t.strip_suffix(']').unwrap_or(t);
        let coords = t
            .split(':')
            .map(|c| c.parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(&coords)
    }
}

/// A finite set of places that always contains the archimedean one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PlaceSet {
    primes: BTreeSet<Prime>,
}

impl PlaceSet {
    /// `{∞}`.
    pub fn archimedean() -> Self {
        Self::default()
    }

    pub fn new(primes: impl IntoIterator<Item = Prime>) -> Self {
        PlaceSet {
            primes: primes.into_iter().collect(),
        }
    }

    pub fn from_u64s(primes: &[u64]) -> Result<Self> {
        Ok(Self::new(
            primes
                .iter()
                .map(|&p| Prime::from_u64(p))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn contains(&self, v: &Place) -> bool {
        match v {
            Place::Archimedean => true,
            Place::Finite(p) => self.primes.contains(p),
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = &Prime> {
        self.primes.iter()
    }

    /// `∞` followed by the primes in increasing order.
    pub fn places(&self) -> Vec<Place> {
        let mut v = alloc::vec![Place::Archimedean];
        v.extend(self.primes.iter().cloned().map(Place::Finite));
        v
    }

    /// Is `n ≠ 0` supported on the primes of the set?
    pub fn is_unit_integer(&self, n: &BigUint) -> bool {
        !n.is_zero()
            && crate::arith::split_off_primes(n, self.primes.iter())
                .1
                .is_one()
    }

    /// Is `x` an S-unit?
    pub fn is_unit(&self, x: &Rational) -> bool {
        self.is_unit_integer(&x.numer_abs()) && self.is_unit_integer(&x.denom_abs())
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{inf")?;
        for p in &self.primes {
            write!(f, ",{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PlaceSet {
    type Err = Error;

    /// Comma-separated primes; `inf` may be listed and braces are optional.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('{').unwrap_or(t);
        let t = t.strip_suffix('}').unwrap_or(t);
        let mut primes = Vec::new();
        for item in t.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            if item.eq_ignore_ascii_case("inf") || item == "∞" {
                continue;
            }
            let n: BigUint = item.parse().map_err(|_| Error::Parse {
                offset: 0,
                message: alloc::format!("not a prime: {item}"),
            })?;
            primes.push(Prime::new(n).map_err(|_| Error::NotPrime(item.to_string()))?);
        }
        Ok(Self::new(primes))
    }
}
