use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{PlaceSet, ProjPoint};
use crate::arith::{ord_p, split_off_primes, LogQ, Place, Prime, Rational};
use crate::error::{Error, Result};
use crate::poly::{coeff_norm, HomogPoly, MultiPoly};

/// `h(P) = log max_i |x_i|` for the normalized coordinates of `P`.
pub fn height_proj(p: &ProjPoint) -> LogQ {
    LogQ::of_integer(p.max_abs()).expect("normalized point has a nonzero coordinate")
}

/// `h(x) = h([x : 1]) = log max(|num|, den)`.
pub fn height_rational(x: &Rational) -> LogQ {
    let m = x.numer_abs().max(x.denom_abs());
    LogQ::of_integer(m).expect("denominator is positive")
}

/// `Σ_v log max_i |x_i|_v` for an arbitrary nonzero representative.
///
/// Factors every coordinate, so it is meant as an independent route to
/// [`height_proj`] rather than a fast one.
pub fn height_by_places(coords: &[Rational]) -> Result<LogQ> {
    if coords.iter().all(Rational::is_zero) {
        return Err(Error::ZeroPoint);
    }
    let nonzero: Vec<&Rational> = coords.iter().filter(|c| !c.is_zero()).collect();
    let mut primes = BTreeMap::new();
    for c in &nonzero {
        for (p, _) in crate::arith::valuations(c)? {
            primes.insert(p, ());
        }
    }
    let arch = nonzero.iter().map(|c| c.abs()).max().expect("nonempty");
    let mut total = LogQ::of(arch)?;
    for p in primes.into_keys() {
        let mut min = i64::MAX;
        for c in &nonzero {
            min = min.min(ord_p(c, &p)?);
        }
        total = total + LogQ::prime_power(&p, -min);
    }
    Ok(total)
}

/// `λ_{F,v}` evaluated on a raw representative:
/// `−log(|F(x)|_v / (‖F‖_v · max_i |x_i|_v^d))`, with the sum norm at ∞.
pub fn weil_at_representative(f: &HomogPoly, v: &Place, coords: &[Rational]) -> Result<LogQ> {
    if coords.iter().all(Rational::is_zero) {
        return Err(Error::ZeroPoint);
    }
    let value = f.poly().evaluate(coords)?;
    if value.is_zero() {
        return Err(Error::OnSupport);
    }
    let d = i64::from(f.degree());
    let norm = coeff_norm(f.poly(), v)?;
    match v {
        Place::Archimedean => {
            let max = coords.iter().map(Rational::abs).max().expect("nonempty");
            let ratio = norm * max.pow(d).expect("nonzero") / value.abs();
            LogQ::of(ratio)
        }
        Place::Finite(p) => {
            let min_coord = coords
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| ord_p(c, p))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min()
                .expect("nonzero coordinate");
            let e = ord_p(&value, p)? - d * min_coord;
            Ok(LogQ::of(norm)? + LogQ::prime_power(p, e))
        }
    }
}

/// Local Weil function of the hypersurface `F = 0` at `P`.
pub fn weil_hypersurface(f: &HomogPoly, v: &Place, p: &ProjPoint) -> Result<LogQ> {
    check_arity(f, p)?;
    weil_at_representative(f, v, &p.as_rationals())
}

fn check_arity(f: &HomogPoly, p: &ProjPoint) -> Result<()> {
    if f.nvars() != p.len() {
        return Err(Error::Arity {
            expected: f.nvars(),
            got: p.len(),
        });
    }
    Ok(())
}

/// A closed subscheme of ℙⁿ cut out by finitely many forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubschemeSpec {
    generators: Vec<HomogPoly>,
    primitive: Vec<MultiPoly>,
    sum_norms: Vec<Rational>,
}

impl SubschemeSpec {
    pub fn new(generators: Vec<HomogPoly>) -> Result<Self> {
        let first = generators.first().ok_or(Error::Empty)?;
        let n = first.nvars();
        if let Some(bad) = generators.iter().find(|g| g.nvars() != n) {
            return Err(Error::Arity {
                expected: n,
                got: bad.nvars(),
            });
        }
        if generators
            .iter()
            .any(|g| g.poly().vars() != first.poly().vars())
        {
            return Err(Error::VariableMismatch);
        }
        let primitive: Vec<MultiPoly> = generators.iter().map(|g| g.poly().normalized()).collect();
        let sum_norms = primitive
            .iter()
            .map(|g| coeff_norm(g, &Place::Archimedean))
            .collect::<Result<_>>()?;
        Ok(SubschemeSpec {
            generators,
            primitive,
            sum_norms,
        })
    }

    pub fn generators(&self) -> &[HomogPoly] {
        &self.generators
    }

    /// Number of homogeneous coordinates of the ambient space.
    pub fn ambient_len(&self) -> usize {
        self.generators[0].nvars()
    }

    /// Values of the primitive integer forms at the normalized coordinates.
    fn integer_values(&self, p: &ProjPoint) -> Result<Vec<BigInt>> {
        if p.len() != self.ambient_len() {
            return Err(Error::Arity {
                expected: self.ambient_len(),
                got: p.len(),
            });
        }
        self.primitive
            .iter()
            .map(|g| {
                Ok(g.eval_integer(p.coords())?
                    .expect("primitive forms are integral"))
            })
            .collect()
    }

    /// Archimedean Weil value and the gcd of the nonzero generator values.
    fn local_data(&self, p: &ProjPoint) -> Result<(LogQ, BigUint)> {
        let values = self.integer_values(p)?;
        let max = Rational::from_integer(BigInt::from(p.max_abs()));
        let mut arch: Option<Rational> = None;
        let mut g = BigUint::zero();
        for ((value, norm), gen) in values.iter().zip(&self.sum_norms).zip(&self.generators) {
            if value.is_zero() {
                continue;
            }
            let ratio = norm * &max.pow(i64::from(gen.degree())).expect("nonzero")
                / Rational::from_integer(value.clone()).abs();
            arch = Some(match arch {
                Some(a) if a <= ratio => a,
                _ => ratio,
            });
            g = g.gcd(value.magnitude());
        }
        let arch = arch.ok_or(Error::PointOnSubscheme)?;
        Ok((LogQ::of(arch)?, g))
    }
}

/// `λ_{Y,v}(P) = min_i λ_{F_i,v}(P)` over the generators not vanishing at `P`.
pub fn weil_subscheme(y: &SubschemeSpec, v: &Place, p: &ProjPoint) -> Result<LogQ> {
    match v {
        Place::Archimedean => Ok(y.local_data(p)?.0),
        Place::Finite(prime) => {
            let g = y.local_data(p)?.1;
            Ok(LogQ::prime_power(
                prime,
                crate::arith::ord_int(&g, prime) as i64,
            ))
        }
    }
}

/// `h_Y = m_{Y,S} + N_{Y,S}` at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightDecomposition {
    pub proximity: LogQ,
    pub counting: LogQ,
    pub height: LogQ,
}

/// Splits `h_Y(P)` into proximity and counting parts without factoring.
pub fn decompose(y: &SubschemeSpec, s: &PlaceSet, p: &ProjPoint) -> Result<HeightDecomposition> {
    let (arch, g) = y.local_data(p)?;
    let (s_part, rest) = split_off_primes(&g, s.primes());
    let proximity = &arch + &LogQ::of_integer(s_part)?;
    let counting = LogQ::of_integer(rest)?;
    let height = arch + LogQ::of_integer(g)?;
    Ok(HeightDecomposition {
        proximity,
        counting,
        height,
    })
}

/// `m_{Y,S}(P) = Σ_{v∈S} λ_{Y,v}(P)`.
pub fn proximity(y: &SubschemeSpec, s: &PlaceSet, p: &ProjPoint) -> Result<LogQ> {
    Ok(decompose(y, s, p)?.proximity)
}

/// `N_{Y,S}(P) = Σ_{v∉S} λ_{Y,v}(P)`.
pub fn counting(y: &SubschemeSpec, s: &PlaceSet, p: &ProjPoint) -> Result<LogQ> {
    Ok(decompose(y, s, p)?.counting)
}

/// `h_Y(P) = Σ_v λ_{Y,v}(P)`.
pub fn height_subscheme(y: &SubschemeSpec, p: &ProjPoint) -> Result<LogQ> {
    Ok(decompose(y, &PlaceSet::archimedean(), p)?.height)
}

/// One place's contribution to `h_Y(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalWeil {
    pub place: Place,
    pub lambda: LogQ,
    pub in_s: bool,
}

/// Place-by-place table: `∞`, every prime of `S`, and every other prime
/// with `λ_{Y,p}(P) ≠ 0`. Factors the gcd of the generator values.
pub fn local_weil_table(y: &SubschemeSpec, s: &PlaceSet, p: &ProjPoint) -> Result<Vec<LocalWeil>> {
    let (arch, g) = y.local_data(p)?;
    let mut rows = alloc::vec![LocalWeil {
        place: Place::Archimedean,
        lambda: arch,
        in_s: true,
    }];
    let mut finite: BTreeMap<Prime, i64> = s.primes().map(|q| (q.clone(), 0)).collect();
    if !g.is_one() {
        let f = crate::arith::factor(&BigInt::from(g))?;
        for (q, e) in f.factors() {
            finite.insert(q.clone(), i64::from(*e));
        }
    }
    for (q, e) in finite {
        let place = Place::Finite(q.clone());
        rows.push(LocalWeil {
            in_s: s.contains(&place),
            lambda: LogQ::prime_power(&q, e),
            place,
        });
    }
    Ok(rows)
}

/// `N_{Y,S}(P)` summed over the factored places of [`local_weil_table`].
pub fn counting_by_places(y: &SubschemeSpec, s: &PlaceSet, p: &ProjPoint) -> Result<LogQ> {
    Ok(local_weil_table(y, s, p)?
        .into_iter()
        .filter(|r| !r.in_s)
        .map(|r| r.lambda)
        .sum())
}

/// `log ‖F‖_v`, the per-place correction between raw and primitive forms.
pub fn log_coeff_norm(f: &HomogPoly, v: &Place) -> Result<LogQ> {
    LogQ::of(coeff_norm(f.poly(), v)?)
}
