//! Sparse multivariate polynomials over ℚ.
//!
//! Terms are keyed by exponent vectors. "Leading" always refers to the
//! graded-lexicographic order: higher total degree first, ties broken by the
//! exponent of the first variable, then the second, and so on.

mod avoid;
mod gcd;
mod text;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{ord_p, Place, Rational};
use crate::error::{Error, Result};

pub use avoid::{construct_avoiding_divisor, equalize_degrees, AvoidingDivisor};
pub(crate) use gcd::require_coprime;
pub use gcd::{is_coprime, poly_gcd};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn grlex_key(e: &[u32]) -> (u32, &[u32]) {
    (e.iter().sum(), e)
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::Arity {
                    expected: p.vars.len(),
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(alloc::vec![0; n], c);
        p
    }

    /// The variable `vars[i]` as a polynomial.
    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let mut e = alloc::vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Rational::one());
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => false,
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&[u32], &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex_key(a.0).cmp(&grlex_key(b.0)))
            .map(|(e, c)| (e.as_slice(), c))
    }

    /// Terms sorted from the leading one down.
    pub fn terms_descending(&self) -> Vec<(&[u32], &Rational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| grlex_key(b.0).cmp(&grlex_key(a.0)));
        v
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let top = self.degree_in(i) as usize;
                let mut v = Vec::with_capacity(top + 1);
                v.push(Rational::one());
                for k in 1..=top {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t * &powers[i][k as usize];
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Evaluates a polynomial with integer coefficients at integer arguments;
    /// `None` if a coefficient is not an integer.
    pub fn eval_integer(&self, point: &[BigInt]) -> Result<Option<BigInt>> {
        if point.len() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            if !c.is_integer() {
                return Ok(None);
            }
            let mut t = c.numer().clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(Some(acc))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `vars[i]^k`.
    pub fn mul_var_pow(&self, i: usize, k: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Coefficient of `vars[i]^d`, as a polynomial free of `vars[i]`.
    pub fn coefficient_in(&self, i: usize, d: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] == d)
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] = 0;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Rewrites the polynomial over a new variable list containing all of
    /// the current variables.
    pub fn reindex(&self, vars: &[String]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or(Error::VariableMismatch)
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(vars.to_vec());
        for (e, c) in &self.terms {
            let mut ne = alloc::vec![0; vars.len()];
            for (k, &j) in map.iter().enumerate() {
                ne[j] = e[k];
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Writes `self = content · primitive` where the primitive part has
    /// coprime integer coefficients and a positive leading coefficient.
    pub fn primitive_integer(&self) -> (Rational, Self) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
            gcd = gcd.gcd(c.numer());
        }
        let mut content = Rational::new(gcd, lcm).expect("nonzero lcm");
        if self.leading_term().map(|(_, c)| c.is_negative()) == Some(true) {
            content = -content;
        }
        let inv = content.recip().expect("nonzero content");
        (content, self.scale(&inv))
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        self.primitive_integer().1
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm_d, lc_d) = d.leading_term()?;
        let (lm_d, lc_d) = (lm_d.to_vec(), lc_d.clone());
        let mut q = Self::zero(self.vars.clone());
        let mut r = self.clone();
        while let Some((lm_r, lc_r)) = r.leading_term() {
            if lm_r.iter().zip(&lm_d).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = lm_r.iter().zip(&lm_d).map(|(a, b)| a - b).collect();
            let c = lc_r / &lc_d;
            let mut t = Self::zero(self.vars.clone());
            t.add_term(e, c);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// `F = z^d f(x/z)` over the variables of `f` followed by `z`.
    pub fn homogenize(&self, z: &str) -> Result<HomogPoly> {
        let d = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        if self.vars.iter().any(|v| v == z) {
            return Err(Error::Invalid(alloc::format!(
                "variable {z} already in use"
            )));
        }
        let mut vars = self.vars.clone();
        vars.push(z.to_string());
        let terms = self.terms.iter().map(|(e, c)| {
            let deg: u32 = e.iter().sum();
            let mut ne = e.clone();
            ne.push(d - deg);
            (ne, c.clone())
        });
        let poly = MultiPoly::from_terms(vars, terms)?;
        Ok(HomogPoly { poly, degree: d })
    }
}

fn same_vars(a: &MultiPoly, b: &MultiPoly) {
    assert_eq!(a.vars, b.vars, "polynomials over different variables");
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        same_vars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        same_vars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        same_vars(self, rhs);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

/// `‖F‖_v`: the sum of absolute values of the coefficients at the
/// archimedean place, the largest p-adic absolute value at a prime.
pub fn coeff_norm(f: &MultiPoly, v: &Place) -> Result<Rational> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match v {
        Place::Archimedean => Ok(f
            .terms
            .values()
            .fold(Rational::zero(), |acc, c| acc + c.abs())),
        Place::Finite(p) => {
            let mut min = i64::MAX;
            for c in f.terms.values() {
                min = min.min(ord_p(c, p)?);
            }
            let base = Rational::from_integer(BigInt::from(p.value().clone()));
            Ok(base.pow(-min).expect("prime is nonzero"))
        }
    }
}

/// A nonzero polynomial all of whose terms share one total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    poly: MultiPoly,
    degree: u32,
}

impl HomogPoly {
    pub fn new(poly: MultiPoly) -> Result<Self> {
        let degree = poly.total_degree().ok_or(Error::ZeroPolynomial)?;
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(HomogPoly { poly, degree })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Sets `vars[i] = 1` and drops that variable.
    pub fn dehomogenize(&self, i: usize) -> MultiPoly {
        let mut vars = self.poly.vars.clone();
        vars.remove(i);
        let terms = self.poly.terms.iter().map(|(e, c)| {
            let mut e = e.clone();
            e.remove(i);
            (e, c.clone())
        });
        MultiPoly::from_terms(vars, terms).expect("arity preserved")
    }

    /// Multiplies by the monomial with the given exponents.
    pub fn mul_monomial(&self, e: &[u32]) -> Self {
        let mut poly = self.poly.clone();
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                poly = poly.mul_var_pow(i, k);
            }
        }
        HomogPoly {
            poly,
            degree: self.degree + e.iter().sum::<u32>(),
        }
    }
}

impl core::fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(&self.poly, f)
    }
}

impl core::fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(&self.poly, f)
    }
}

/// Default variable names `x1, ..., xn`.
pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| alloc::format!("x{i}")).collect()
}
