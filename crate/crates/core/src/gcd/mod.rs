//! Generalized gcds of polynomial values along finitely generated
//! subgroups of 𝔾ₘⁿ(ℚ), and the scanning experiment built on them.

mod group;
mod scan;

use alloc::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::arith::{factor, split_off_primes, LogQ, Prime, Rational};
use crate::error::{Error, Result};
use crate::heights::PlaceSet;
use crate::poly::MultiPoly;

pub use group::{enumerate_group, GroupElement, GroupGamma, SampleBox};
pub use scan::{scan, GcdRecord, ScanResult, ScanSummary, SkipReason, SkippedPoint, MAX_BOX};

/// `Σ_v −log⁻ max(|a|_v, |b|_v)`; `log gcd(a, b)` for positive integers.
pub fn generalized_gcd(a: &Rational, b: &Rational) -> Result<LogQ> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::CommonZero);
    }
    let finite = generalized_gcd_finite(a, b)?;
    let top = core::cmp::max(a.abs(), b.abs());
    if top < Rational::one() {
        Ok(finite + LogQ::of(top.recip().expect("nonzero"))?)
    } else {
        Ok(finite)
    }
}

/// The same sum restricted to the finite places: `log gcd(num a, num b)`.
pub fn generalized_gcd_finite(a: &Rational, b: &Rational) -> Result<LogQ> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::CommonZero);
    }
    LogQ::of_integer(a.numer_abs().gcd(&b.numer_abs()))
}

/// `gcd(num a, num b)`, the integer whose prime powers carry every
/// positive `min(ord_p a, ord_p b)`.
fn numerator_gcd(a: &Rational, b: &Rational) -> Result<BigUint> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::CommonZero);
    }
    Ok(a.numer_abs().gcd(&b.numer_abs()))
}

fn values(f: &MultiPoly, g: &MultiPoly, u: &[Rational]) -> Result<(Rational, Rational)> {
    Ok((f.evaluate(u)?, g.evaluate(u)?))
}

/// `−Σ_{v∉S} log⁻ max(|f(u)|_v, |g(u)|_v)` without factoring: the gcd of the
/// two numerators with every prime of `S` stripped off.
pub fn cz_counting(f: &MultiPoly, g: &MultiPoly, u: &[Rational], s: &PlaceSet) -> Result<LogQ> {
    let (a, b) = values(f, g, u)?;
    cz_counting_values(&a, &b, s)
}

pub(crate) fn cz_counting_values(a: &Rational, b: &Rational, s: &PlaceSet) -> Result<LogQ> {
    let g = numerator_gcd(a, b)?;
    LogQ::of_integer(split_off_primes(&g, s.primes()).1)
}

/// [`cz_counting`] evaluated place by place from the factorizations of
/// `f(u)` and `g(u)`.
pub fn cz_counting_by_places(
    f: &MultiPoly,
    g: &MultiPoly,
    u: &[Rational],
    s: &PlaceSet,
) -> Result<LogQ> {
    let (a, b) = values(f, g, u)?;
    cz_counting_values_by_places(&a, &b, s)
}

pub(crate) fn cz_counting_values_by_places(
    a: &Rational,
    b: &Rational,
    s: &PlaceSet,
) -> Result<LogQ> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::CommonZero);
    }
    // ord_p over the finite places; a zero value has ord = +∞ and is left out.
    let ords = |x: &Rational| -> Result<BTreeMap<Prime, i64>> {
        let mut m = BTreeMap::new();
        for (p, e) in factor(x.numer())?.factors() {
            m.insert(p.clone(), i64::from(*e));
        }
        if !x.denom().is_one() {
            for (p, e) in factor(x.denom())?.factors() {
                m.insert(p.clone(), -i64::from(*e));
            }
        }
        Ok(m)
    };
    let merged: BTreeMap<Prime, i64> = match (a.is_zero(), b.is_zero()) {
        (true, _) => ords(b)?,
        (_, true) => ords(a)?,
        _ => {
            let oa = ords(a)?;
            let ob = ords(b)?;
            oa.into_iter()
                .filter_map(|(p, e)| ob.get(&p).map(|f| (p, e.min(*f))))
                .collect()
        }
    };
    Ok(merged
        .into_iter()
        .filter(|(p, e)| *e > 0 && !s.contains(&crate::arith::Place::Finite(p.clone())))
        .map(|(p, e)| LogQ::prime_power(&p, e))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn xy(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &["x".into(), "y".into()]).unwrap()
    }

    fn log(n: u64) -> LogQ {
        LogQ::of_integer(n.into()).unwrap()
    }

    #[test]
    fn generalized_gcd_examples() {
        assert_eq!(generalized_gcd(&q(12, 1), &q(18, 1)).unwrap(), log(6));
        assert_eq!(generalized_gcd(&q(35, 1), &q(35, 1)).unwrap(), log(35));
        assert_eq!(generalized_gcd(&q(1, 2), &q(1, 3)).unwrap(), log(2));
        assert_eq!(generalized_gcd(&q(0, 1), &q(-9, 1)).unwrap(), log(9));
        assert_eq!(generalized_gcd_finite(&q(1, 2), &q(1, 3)).unwrap(), log(1));
        assert_eq!(generalized_gcd(&q(0, 1), &q(0, 1)), Err(Error::CommonZero));
    }

    #[test]
    fn cz_examples() {
        let (f, g) = (xy("x - 1"), xy("y - 1"));
        let s = PlaceSet::from_u64s(&[2, 3]).unwrap();
        let at = |a: i64, b: i64| [q(a, 1), q(b, 1)];
        for (u, want) in [(at(8, 8), 7), (at(4, 3), 1), (at(64, 8), 7)] {
            assert_eq!(cz_counting(&f, &g, &u, &s).unwrap(), log(want));
            assert_eq!(cz_counting_by_places(&f, &g, &u, &s).unwrap(), log(want));
        }
        assert_eq!(cz_counting(&f, &g, &at(1, 1), &s), Err(Error::CommonZero));
    }

    #[test]
    fn cz_strips_s_and_ignores_denominators() {
        let (f, g) = (xy("x - 1"), xy("y - 1"));
        let s = PlaceSet::from_u64s(&[2, 3]).unwrap();
        // f = 1/3 - 1 = -2/3, g = 9 - 1 = 8: only 2 is shared, and 2 ∈ S.
        let u = [q(1, 3), q(9, 1)];
        assert!(cz_counting(&f, &g, &u, &s).unwrap().is_zero());
        // f = 1/64 - 1 = -63/64, g = 1/8 - 1 = -7/8: 7 survives.
        let u = [q(1, 64), q(1, 8)];
        assert_eq!(cz_counting(&f, &g, &u, &s).unwrap(), log(7));
        assert_eq!(cz_counting_by_places(&f, &g, &u, &s).unwrap(), log(7));
        // a single zero value keeps the other one's non-S part
        let u = [q(1, 1), q(15, 1)];
        assert_eq!(cz_counting(&f, &g, &u, &s).unwrap(), log(7));
        assert_eq!(cz_counting_by_places(&f, &g, &u, &s).unwrap(), log(7));
    }
}
