use heightlab_core::gamma::{
    binomial, gamma_row, gamma_truncated, h0_blowup, intersection_number, ray_sequence,
    rr_leading_coeff, verify_beta_bound, BlowupModel, GammaProblem, LineClass, DEFAULT_GRID,
};
use heightlab_core::Sequential;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

/// Degree-`a` monomials in `n+1` variables with `e₀ + e₁ ≥ b`, by enumeration.
fn brute_h0(n: u32, a: u64, b: u64) -> u64 {
    fn count(vars: u32, deg: u64) -> u64 {
        if vars == 0 {
            return u64::from(deg == 0);
        }
        (0..=deg).map(|k| count(vars - 1, deg - k)).sum()
    }
    let mut total = 0;
    for j in b..=a {
        // j + 1 ways to split j between x₀ and x₁
        total += (j + 1) * count(n - 1, a - j);
    }
    total
}

fn exact_limit(ell: i64) -> BigRational {
    BigRational::new(
        (27 * ell * ell - 3).into(),
        (27 * ell * ell * ell - 9 * ell + 2).into(),
    )
}

#[test]
fn closed_form_matches_enumeration() {
    for n in 2..=4 {
        let m = BlowupModel::new(n).unwrap();
        for a in 0..=14 {
            for b in 0..=16 {
                assert_eq!(
                    h0_blowup(&m, a, b),
                    BigUint::from(brute_h0(n, a, b)),
                    "n={n} a={a} b={b}"
                );
            }
        }
    }
    let m2 = BlowupModel::new(2).unwrap();
    for a in 0..=30u64 {
        for b in 0..=a {
            // complement of the monomials with e₀ + e₁ < b
            let want = binomial(a + 2, 2) - binomial(b + 1, 2);
            assert_eq!(h0_blowup(&m2, a, b), want);
        }
    }
}

#[test]
fn counting_invariants() {
    for n in [2, 3] {
        let m = BlowupModel::new(n).unwrap();
        for a in 0..=50u64 {
            assert_eq!(
                h0_blowup(&m, a, 0),
                binomial(a + u64::from(n), u64::from(n))
            );
            assert_eq!(h0_blowup(&m, a, a + 1), BigUint::from(0u32));
            for b in 0..a {
                assert!(h0_blowup(&m, a, b) >= h0_blowup(&m, a, b + 1));
                assert!(h0_blowup(&m, a + 1, b) >= h0_blowup(&m, a, b));
            }
        }
        for ell in [1, 3] {
            for level in [1, 5, 9] {
                let row = gamma_row(&m, ell, level);
                assert_eq!(
                    row.terms,
                    (u64::from(n + 1) * u64::from(ell) - 1) * u64::from(level)
                );
            }
        }
    }
}

#[test]
fn closed_form_limit_is_certified_by_exact_summation() {
    let m = BlowupModel::new(2).unwrap();
    for ell in [1u32, 2, 5, 10, 50] {
        let limit = exact_limit(i64::from(ell));
        let row = gamma_row(&m, ell, 1000);
        let at_1000 = BigRational::new(row.numerator.into(), row.denominator.into());
        let rel = (&at_1000 - &limit) / &limit;
        // the truncation error is O(1/N)
        assert!(rel.clone() > BigRational::from(BigInt::from(0)));
        assert!(rel < BigRational::new(1.into(), 1000.into()), "ell={ell}");
        let p = GammaProblem::new(m, ell, DEFAULT_GRID.to_vec()).unwrap();
        let g = gamma_truncated(&p, &Sequential);
        let at_200 = g.rows.last().unwrap().ratio.to_f64();
        let l = 27.0 * f64::from(ell).powi(2) - 3.0;
        let l = l / (27.0 * f64::from(ell).powi(3) - 9.0 * f64::from(ell) + 2.0);
        assert!(((at_200 - l) / l).abs() < 0.02);
    }
}

#[test]
fn beta_bound_holds_on_the_default_grid() {
    for n in [2, 3] {
        let m = BlowupModel::new(n).unwrap();
        for ell in 1..=50 {
            let v = verify_beta_bound(&m, ell, &DEFAULT_GRID, &Sequential).unwrap();
            assert!(v.holds, "n={n} ell={ell}: {} > {}", v.gamma, v.bound);
        }
    }
}

#[test]
fn leading_coefficients_are_self_intersections() {
    for n in [2u32, 3, 4] {
        let m = BlowupModel::new(n).unwrap();
        for a in 1..=5u64 {
            for b in 0..=a {
                let s = ray_sequence(&m, LineClass { a, b }, n as usize + 8);
                assert_eq!(
                    rr_leading_coeff(&s, n).unwrap(),
                    intersection_number(&m, a, b),
                    "n={n} ray=({a},{b})"
                );
            }
        }
    }
    let m2 = BlowupModel::new(2).unwrap();
    for (a, b) in [(3i64, 1i64), (5, 2), (7, 7)] {
        assert_eq!(
            intersection_number(&m2, a as u64, b as u64),
            BigInt::from(a * a - b * b)
        );
    }
    let m3 = BlowupModel::new(3).unwrap();
    for (a, b) in [(3i64, 1i64), (5, 2), (4, 4)] {
        assert_eq!(
            intersection_number(&m3, a as u64, b as u64),
            BigInt::from(a.pow(3) - 3 * a * b * b + 2 * b.pow(3))
        );
    }
}
