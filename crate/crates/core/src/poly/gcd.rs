//! Multivariate gcd by recursion on the last variable: split off the
//! content (a gcd one level down), run a primitive pseudo-remainder sequence
//! on the primitive parts, and multiply back.

use alloc::string::ToString;

use super::MultiPoly;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// A gcd of `f` and `g`, primitive over ℤ with positive leading coefficient.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    if f.vars() != g.vars() {
        return Err(Error::VariableMismatch);
    }
    match (f.is_zero(), g.is_zero()) {
        (true, true) => Err(Error::ZeroPolynomial),
        (true, false) => Ok(g.normalized()),
        (false, true) => Ok(f.normalized()),
        (false, false) => Ok(gcd_rec(&f.normalized(), &g.normalized(), f.nvars()).normalized()),
    }
}

/// True when the only common factors are constants.
pub fn is_coprime(f: &MultiPoly, g: &MultiPoly) -> Result<bool> {
    Ok(poly_gcd(f, g)?.is_constant())
}

pub(crate) fn require_coprime(f: &MultiPoly, g: &MultiPoly) -> Result<()> {
    let d = poly_gcd(f, g)?;
    if d.is_constant() {
        Ok(())
    } else {
        Err(Error::NotCoprime(d.to_string()))
    }
}

fn one_like(a: &MultiPoly) -> MultiPoly {
    MultiPoly::constant(a.vars().to_vec(), Rational::one())
}

// Both inputs nonzero and free of the variables with index >= k.
fn gcd_rec(a: &MultiPoly, b: &MultiPoly, k: usize) -> MultiPoly {
    if k == 0 {
        return one_like(a);
    }
    let x = k - 1;
    let (ca, pa) = split_content(a, x);
    let (cb, pb) = split_content(b, x);
    let content = gcd_rec(&ca, &cb, x);
    let (mut r0, mut r1) = if pa.degree_in(x) >= pb.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !r1.is_zero() {
        let r = prem(&r0, &r1, x);
        r0 = r1;
        r1 = if r.is_zero() {
            r
        } else {
            split_content(&r, x).1
        };
    }
    (&content * &split_content(&r0, x).1).normalized()
}

/// Content with respect to `vars[x]` (a polynomial in the earlier
/// variables) and the matching primitive part.
fn split_content(a: &MultiPoly, x: usize) -> (MultiPoly, MultiPoly) {
    let top = a.degree_in(x);
    let mut content: Option<MultiPoly> = None;
    for d in (0..=top).rev() {
        let c = a.coefficient_in(x, d);
        if c.is_zero() {
            continue;
        }
        content = Some(match content {
            None => c.normalized(),
            Some(acc) if acc.is_constant() => acc,
            Some(acc) => gcd_rec(&acc, &c.normalized(), x),
        });
    }
    let content = content.unwrap_or_else(|| one_like(a));
    if content.is_constant() {
        return (one_like(a), a.normalized());
    }
    let prim = a
        .div_exact(&content)
        .expect("content divides every coefficient")
        .normalized();
    (content, prim)
}

/// Pseudo-remainder of `a` by `b` in `vars[x]`, up to a constant factor.
fn prem(a: &MultiPoly, b: &MultiPoly, x: usize) -> MultiPoly {
    let db = b.degree_in(x);
    let lc = b.coefficient_in(x, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = r.coefficient_in(x, dr);
        let shifted = (&lr * b).mul_var_pow(x, dr - db);
        r = (&(&lc * &r) - &shifted).normalized();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec::Vec;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &vars(&["x", "y", "z"])).unwrap()
    }

    #[test]
    fn examples() {
        assert!(poly_gcd(&p("x - 1"), &p("y - 1")).unwrap().is_constant());
        assert_eq!(poly_gcd(&p("x^2 - y^2"), &p("x - y")).unwrap(), p("x - y"));
        let f = p("-6*x^2*y + 4*z");
        assert_eq!(poly_gcd(&f, &f).unwrap(), p("3*x^2*y - 2*z"));
        assert_eq!(
            poly_gcd(
                &MultiPoly::zero(vars(&["x", "y", "z"])),
                &MultiPoly::zero(vars(&["x", "y", "z"]))
            ),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn common_factor_in_leading_variable_only() {
        let h = p("x*y + z^2 + 1");
        let f = &h * &p("x - z");
        let g = &h * &p("y^2 + x");
        assert_eq!(poly_gcd(&f, &g).unwrap(), h);
    }

    #[test]
    fn content_factor_is_found() {
        // Common factor free of the recursion variable z.
        let h = p("x + y");
        let f = &h * &p("z^2 + 1");
        let g = &h * &p("z - x");
        assert_eq!(poly_gcd(&f, &g).unwrap(), h);
        let u = &p("x - 1") * &p("y - 2");
        let v = &p("x - 1") * &p("y + 2");
        assert_eq!(poly_gcd(&u, &v).unwrap(), p("x - 1"));
    }

    #[test]
    fn coprimality_reported() {
        assert!(is_coprime(&p("x - 1"), &p("y - 1")).unwrap());
        assert!(!is_coprime(&p("x^2 - 1"), &p("x*y - y")).unwrap());
        assert!(require_coprime(&p("x^2 - 1"), &p("x*y - y")).is_err());
        let other = MultiPoly::parse("x", &vars(&["x"])).unwrap();
        assert_eq!(poly_gcd(&p("x"), &other), Err(Error::VariableMismatch));
    }
}
