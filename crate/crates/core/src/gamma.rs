//! Exact section counts on the blowup of ℙⁿ along `{x₀ = x₁ = 0}` and the
//! truncated γ-invariant of `𝓛 = ℓ·π*D − E` with `D ≡ (n+1)H`.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::exec::Executor;

pub const DEFAULT_GRID: [u32; 3] = [50, 100, 200];

/// `Bl_Z ℙⁿ` with `Z = {x₀ = x₁ = 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowupModel {
    n: u32,
}

impl BlowupModel {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(
                "ambient dimension must be at least 2".into(),
            ));
        }
        Ok(BlowupModel { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// The class `a·π*H − b·E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LineClass {
    pub a: u64,
    pub b: u64,
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `h⁰(a·π*H − b·E)`: degree-`a` monomials in `x₀,…,xₙ` with `e₀ + e₁ ≥ b`.
///
/// Writing `e₀ + e₁ = b + k`, the count is `C(a−b+n, n) + b·C(a−b+n−1, n−1)`.
pub fn h0_blowup(model: &BlowupModel, a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let n = u64::from(model.n);
    let d = a - b;
    binomial(d + n, n) + binomial(d + n - 1, n - 1) * b
}

impl LineClass {
    pub fn h0(&self, model: &BlowupModel) -> BigUint {
        h0_blowup(model, self.a, self.b)
    }
}

/// `(a·π*H − b·E)ⁿ = (a−b)^{n−1}·(a + (n−1)b)` for `a ≥ b`.
pub fn intersection_number(model: &BlowupModel, a: u64, b: u64) -> BigInt {
    let n = model.n;
    let d = BigInt::from(a) - BigInt::from(b);
    num_traits::pow(d, (n - 1) as usize) * (BigInt::from(a) + BigInt::from(b) * (n - 1))
}

/// γ truncated to a finite grid of levels `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaProblem {
    pub model: BlowupModel,
    pub ell: u32,
    pub grid: Vec<u32>,
}

impl GammaProblem {
    pub fn new(model: BlowupModel, ell: u32, grid: Vec<u32>) -> Result<Self> {
        if ell == 0 {
            return Err(Error::Invalid("ell must be positive".into()));
        }
        if grid.is_empty() {
            return Err(Error::Empty);
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] == 0 {
            return Err(Error::Invalid(
                "N-grid must be positive and increasing".into(),
            ));
        }
        Ok(GammaProblem { model, ell, grid })
    }
}

/// `N·h⁰(𝓛^N)` over `Σ_{m≥1} h⁰(𝓛^N(−mD))` at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRow {
    pub level: u32,
    pub numerator: BigUint,
    pub denominator: BigUint,
    /// Nonzero terms in the m-sum.
    pub terms: u64,
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaResult {
    pub rows: Vec<GammaRow>,
    /// Max over the whole grid.
    pub max: Rational,
    /// Max over the levels divisible by ℓ, if any.
    pub max_ell_multiples: Option<Rational>,
}

/// One level of the γ quotient. With `D ≡ (n+1)H` and each `Dᵢ ≡ H`, the
/// class `𝓛^N(−m·π*Dᵢ)` is `((n+1)ℓN − m)·π*H − N·E`.
pub fn gamma_row(model: &BlowupModel, ell: u32, level: u32) -> GammaRow {
    let n1 = u64::from(model.n) + 1;
    let nn = u64::from(level);
    let top = n1 * u64::from(ell) * nn;
    let numerator = h0_blowup(model, top, nn) * nn;
    let mut denominator = BigUint::zero();
    let mut terms = 0;
    for m in 1..=top.saturating_sub(nn) {
        let h = h0_blowup(model, top - m, nn);
        if !h.is_zero() {
            terms += 1;
        }
        denominator += h;
    }
    let ratio = if denominator.is_zero() {
        Rational::zero()
    } else {
        Rational::new(numerator.clone().into(), denominator.clone().into())
            .expect("nonzero denominator")
    };
    GammaRow {
        level,
        numerator,
        denominator,
        terms,
        ratio,
    }
}

/// Evaluates every level of the grid; rows come back in grid order.
pub fn gamma_truncated<E: Executor>(problem: &GammaProblem, exec: &E) -> GammaResult {
    let rows = exec.map(&problem.grid, |&level| {
        gamma_row(&problem.model, problem.ell, level)
    });
    let max = rows
        .iter()
        .map(|r| r.ratio.clone())
        .max()
        .expect("grid is nonempty");
    let max_ell_multiples = rows
        .iter()
        .filter(|r| r.level % problem.ell == 0)
        .map(|r| r.ratio.clone())
        .max();
    GammaResult {
        rows,
        max,
        max_ell_multiples,
    }
}

/// `(1/ℓ)(1 + 1/(ℓ√ℓ))`.
pub fn beta_bound(ell: u32) -> f64 {
    let l = f64::from(ell);
    (1.0 + 1.0 / (l * crate::math::sqrt(l))) / l
}

#[derive(Clone, Debug, PartialEq)]
pub struct BetaVerdict {
    pub gamma: f64,
    pub bound: f64,
    /// `bound − gamma`.
    pub margin: f64,
    pub holds: bool,
    pub result: GammaResult,
}

/// Checks `γ ≤ (1/ℓ)(1 + 1/(ℓ√ℓ))` with γ truncated to `grid`.
pub fn verify_beta_bound<E: Executor>(
    model: &BlowupModel,
    ell: u32,
    grid: &[u32],
    exec: &E,
) -> Result<BetaVerdict> {
    let problem = GammaProblem::new(*model, ell, grid.to_vec())?;
    let result = gamma_truncated(&problem, exec);
    let gamma = result.max.to_f64();
    let bound = beta_bound(ell);
    Ok(BetaVerdict {
        gamma,
        bound,
        margin: bound - gamma,
        holds: gamma <= bound,
        result,
    })
}

/// `h⁰(m·(a, b))` for `m = 0..len`.
pub fn ray_sequence(model: &BlowupModel, class: LineClass, len: usize) -> Vec<BigUint> {
    (0..len as u64)
        .map(|m| h0_blowup(model, m * class.a, m * class.b))
        .collect()
}

/// Leading Riemann–Roch coefficient `Dⁿ` from the `n`-th finite differences
/// of `h⁰(mD)`, which must be constant on a tail covering at least half of
/// them (and at least two).
pub fn rr_leading_coeff(sequence: &[BigUint], n: u32) -> Result<BigInt> {
    let n = n as usize;
    if sequence.len() < n + 2 {
        return Err(Error::Invalid(alloc::format!(
            "need at least {} terms, got {}",
            n + 2,
            sequence.len()
        )));
    }
    let mut diffs: Vec<BigInt> = sequence.iter().cloned().map(BigInt::from).collect();
    for _ in 0..n {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let last = diffs.last().expect("length checked").clone();
    let tail = diffs.iter().rev().take_while(|d| **d == last).count();
    if tail < 2 || 2 * tail < diffs.len() {
        return Err(Error::NotPolynomial);
    }
    Ok(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;

    fn model(n: u32) -> BlowupModel {
        BlowupModel::new(n).unwrap()
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0_blowup(&model(2), 4, 2), BigUint::from(12u32));
        assert_eq!(h0_blowup(&model(3), 3, 2), BigUint::from(10u32));
        assert_eq!(h0_blowup(&model(2), 7, 0), binomial(9, 2));
        assert!(h0_blowup(&model(2), 3, 4).is_zero());
        assert!(BlowupModel::new(1).is_err());
    }

    #[test]
    fn n1_level_is_a_plain_ratio() {
        // n = 2, ℓ = 1, N = 1: 1·h0(3,1) / Σ_{m=1}^{2} h0(3−m, 1)
        let row = gamma_row(&model(2), 1, 1);
        assert_eq!(row.numerator, BigUint::from(9u32));
        assert_eq!(row.denominator, BigUint::from(5u32 + 2));
        assert_eq!(row.terms, 2);
        assert_eq!(row.ratio, Rational::from_ratio(9, 7));
    }

    #[test]
    fn ell_ten_against_bound() {
        let v = verify_beta_bound(&model(2), 10, &DEFAULT_GRID, &Sequential).unwrap();
        assert!(v.holds);
        assert!((v.gamma - 2697.0 / 26912.0).abs() / v.gamma < 0.02);
        assert!((v.bound - 0.103_162_3).abs() < 1e-7);
        assert!((v.margin - 0.00295).abs() < 1e-4);
    }

    #[test]
    fn both_maxima_are_reported() {
        let p = GammaProblem::new(model(2), 3, alloc::vec![2, 3, 4]).unwrap();
        let r = gamma_truncated(&p, &Sequential);
        assert_eq!(r.rows.len(), 3);
        assert_eq!(r.max_ell_multiples, Some(r.rows[1].ratio.clone()));
        assert!(r.max >= r.rows[1].ratio);
        let p = GammaProblem::new(model(2), 7, alloc::vec![2, 3]).unwrap();
        assert_eq!(gamma_truncated(&p, &Sequential).max_ell_multiples, None);
        assert!(GammaProblem::new(model(2), 1, alloc::vec![3, 2]).is_err());
    }

    #[test]
    fn riemann_roch_coefficients() {
        let m2 = model(2);
        let m3 = model(3);
        let s = ray_sequence(&m2, LineClass { a: 1, b: 0 }, 8);
        assert_eq!(rr_leading_coeff(&s, 2).unwrap(), BigInt::from(1));
        let s = ray_sequence(&m2, LineClass { a: 3, b: 1 }, 8);
        assert_eq!(rr_leading_coeff(&s, 2).unwrap(), BigInt::from(8));
        let s = ray_sequence(&m3, LineClass { a: 1, b: 0 }, 8);
        assert_eq!(rr_leading_coeff(&s, 3).unwrap(), BigInt::from(1));
        assert_eq!(intersection_number(&m3, 3, 1), BigInt::from(27 - 9 + 2));
    }

    #[test]
    fn non_polynomial_rays_are_rejected() {
        let s: Vec<BigUint> = (0..12).map(|k| BigUint::one() << k).collect();
        assert_eq!(rr_leading_coeff(&s, 2), Err(Error::NotPolynomial));
        assert!(rr_leading_coeff(&s[..3], 2).is_err());
    }
}
