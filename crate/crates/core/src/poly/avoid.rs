use alloc::vec::Vec;

use super::{HomogPoly, MultiPoly};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::heights::ProjPoint;

/// Largest box searched before giving up.
const MAX_BOX: i64 = 64;
/// Largest shell materialized at once.
const MAX_SHELL: usize = 1 << 20;

/// `F = Σ aᵢ Fᵢ` together with its integer certificate `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidingDivisor {
    pub form: HomogPoly,
    pub coefficients: Vec<i64>,
}

/// Brings every generator to the largest degree `D` present by replacing
/// `Fᵢ` with the family `xⱼ^{D−dᵢ}·Fᵢ`, `j = 0..n`.
///
/// The result cuts out the same closed set as the input.
pub fn equalize_degrees(generators: &[HomogPoly]) -> Result<Vec<HomogPoly>> {
    let top = generators
        .iter()
        .map(HomogPoly::degree)
        .max()
        .ok_or(Error::Empty)?;
    let n = generators[0].nvars();
    let mut out = Vec::new();
    for g in generators {
        if g.nvars() != n {
            return Err(Error::Arity {
                expected: n,
                got: g.nvars(),
            });
        }
        let gap = top - g.degree();
        if gap == 0 {
            out.push(g.clone());
            continue;
        }
        for j in 0..n {
            let mut e = alloc::vec![0u32; n];
            e[j] = gap;
            out.push(g.mul_monomial(&e));
        }
    }
    Ok(out)
}

/// Finds a small integer combination of equal-degree `generators` that is
/// nonzero at every point.
///
/// Candidates are searched in boxes of sup-norm 1, 2, 4, … up to 64; inside
/// each new shell, vectors with fewer nonzero entries come first, then the
/// order `1 < −1 < 2 < −2 < … < 0` entrywise. So a single generator that
/// already works is returned as is.
pub fn construct_avoiding_divisor(
    generators: &[HomogPoly],
    points: &[ProjPoint],
) -> Result<AvoidingDivisor> {
    let first = generators.first().ok_or(Error::Empty)?;
    if generators.iter().any(|g| g.degree() != first.degree()) {
        return Err(Error::Invalid(
            "generators must share a degree (see equalize_degrees)".into(),
        ));
    }
    if generators
        .iter()
        .any(|g| g.poly().vars() != first.poly().vars())
    {
        return Err(Error::VariableMismatch);
    }
    // values[j][i] = F_i(P_j)
    let mut values = Vec::with_capacity(points.len());
    for p in points {
        if p.len() != first.nvars() {
            return Err(Error::Arity {
                expected: first.nvars(),
                got: p.len(),
            });
        }
        let row = generators
            .iter()
            .map(|g| g.poly().evaluate(&p.as_rationals()))
            .collect::<Result<Vec<Rational>>>()?;
        if row.iter().all(Rational::is_zero) {
            return Err(Error::PointOnSubscheme);
        }
        values.push(row);
    }

    let r = generators.len();
    let mut inner = 0i64;
    let mut outer = 1i64;
    while outer <= MAX_BOX {
        for a in shell(r, inner, outer)? {
            let avoids = values.iter().all(|row| {
                let mut s = Rational::zero();
                for (c, v) in a.iter().zip(row) {
                    if *c != 0 && !v.is_zero() {
                        s = s + v * &Rational::from(*c);
                    }
                }
                !s.is_zero()
            });
            if avoids {
                return Ok(AvoidingDivisor {
                    form: combine(generators, &a)?,
                    coefficients: a,
                });
            }
        }
        inner = outer;
        outer *= 2;
    }
    Err(Error::Resource(alloc::format!(
        "no avoiding combination with coefficients up to {MAX_BOX}"
    )))
}

fn combine(generators: &[HomogPoly], a: &[i64]) -> Result<HomogPoly> {
    let mut f = MultiPoly::zero(generators[0].poly().vars().to_vec());
    for (g, c) in generators.iter().zip(a) {
        if *c != 0 {
            f = &f + &g.poly().scale(&Rational::from(*c));
        }
    }
    HomogPoly::new(f)
}

fn zigzag(c: i64) -> u64 {
    match c {
        0 => u64::MAX,
        c if c > 0 => 2 * c as u64 - 1,
        c => 2 * c.unsigned_abs(),
    }
}

/// Vectors with `inner < ‖a‖_∞ ≤ outer`, in search order.
fn shell(r: usize, inner: i64, outer: i64) -> Result<Vec<Vec<i64>>> {
    let side = (2 * outer + 1) as usize;
    let total = side.checked_pow(r as u32).filter(|&t| t <= MAX_SHELL);
    let total = total.ok_or_else(|| {
        Error::Resource(alloc::format!(
            "coefficient box of side {side} in dimension {r} is too large"
        ))
    })?;
    let mut out = Vec::new();
    let mut a = alloc::vec![-outer; r];
    for _ in 0..total {
        if a.iter().map(|c| c.abs()).max().unwrap_or(0) > inner {
            out.push(a.clone());
        }
        for c in a.iter_mut().rev() {
            if *c < outer {
                *c += 1;
                break;
            }
            *c = -outer;
        }
    }
    out.sort_by_key(|a| {
        let support = a.iter().filter(|c| **c != 0).count();
        (support, a.iter().map(|c| zigzag(*c)).collect::<Vec<_>>())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};

    fn vars() -> Vec<String> {
        ["X", "Y", "Z"].iter().map(|s| s.to_string()).collect()
    }

    fn form(s: &str) -> HomogPoly {
        HomogPoly::new(MultiPoly::parse(s, &vars()).unwrap()).unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        s.parse().unwrap()
    }

    #[test]
    fn single_generator_suffices() {
        let d = construct_avoiding_divisor(&[form("X"), form("Y")], &[pt("[1:0:0]")]).unwrap();
        assert_eq!(d.coefficients, [1, 0]);
        assert_eq!(d.form, form("X"));
    }

    #[test]
    fn two_points_need_both() {
        let d =
            construct_avoiding_divisor(&[form("X"), form("Y")], &[pt("[1:0:0]"), pt("[0:1:0]")])
                .unwrap();
        assert_eq!(d.coefficients, [1, 1]);
        assert_eq!(d.form, form("X + Y"));
    }

    #[test]
    fn quadric_example() {
        let d = construct_avoiding_divisor(&[form("X*Y"), form("Z^2")], &[pt("[1:1:1]")]).unwrap();
        assert_eq!(d.form, form("X*Y"));
    }

    #[test]
    fn rejects_point_on_y() {
        assert_eq!(
            construct_avoiding_divisor(&[form("X"), form("Y")], &[pt("[0:0:1]")]),
            Err(Error::PointOnSubscheme)
        );
    }

    #[test]
    fn cancellation_forces_larger_coefficients() {
        // every ±1 combination of X, Y vanishes at one of these
        let pts = [pt("[0:1:0]"), pt("[1:0:0]"), pt("[1:-1:0]"), pt("[1:1:0]")];
        let d = construct_avoiding_divisor(&[form("X"), form("Y")], &pts).unwrap();
        for p in &pts {
            assert!(!d.form.poly().evaluate(&p.as_rationals()).unwrap().is_zero());
        }
        assert_eq!(d.coefficients, [1, 2]);
    }

    #[test]
    fn equalizes_by_monomials() {
        let eq = equalize_degrees(&[form("X"), form("Y*Z")]).unwrap();
        let shown: Vec<String> = eq.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["X^2", "X*Y", "X*Z", "Y*Z"]);
        assert!(eq.iter().all(|g| g.degree() == 2));
    }
}
