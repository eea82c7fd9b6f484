use heightlab_core::arith::{abs_at, is_prime, valuations};
use heightlab_core::{factor, log_abs, ord_p, support, LogQ, Place, Prime, Rational};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn rational() -> impl Strategy<Value = Rational> {
    (
        any::<i64>().prop_filter("nonzero", |n| *n != 0),
        1i64..i64::MAX,
    )
        .prop_map(|(n, d)| Rational::new(n.into(), d.into()).unwrap())
}

#[test]
fn factor_examples() {
    let f = factor(&BigInt::from(600851475143u64)).unwrap();
    let got: Vec<(u64, u32)> = f
        .factors()
        .iter()
        .map(|(p, e)| (p.to_u64().unwrap(), *e))
        .collect();
    assert_eq!(got, trial_factor(600851475143));
    assert_eq!(got, [(71, 1), (839, 1), (1471, 1), (6857, 1)]);
    assert!(factor(&BigInt::from(0)).is_err());
}

#[test]
fn support_examples() {
    let show = |x: Rational| -> Vec<String> {
        support(&x).unwrap().iter().map(|v| v.to_string()).collect()
    };
    assert_eq!(show(Rational::one()), ["inf"]);
    assert_eq!(show(Rational::from_ratio(12, 1)), ["inf", "2", "3"]);
    assert_eq!(show(Rational::from_ratio(35, 4)), ["inf", "2", "5", "7"]);
}

#[test]
fn log_abs_examples() {
    let x = Rational::from_ratio(8, 3);
    let two = Place::finite(2).unwrap();
    assert!((log_abs(&x, &two).unwrap() + 3.0 * 2f64.ln()).abs() < 1e-15);
    assert_eq!(
        ord_p(&Rational::from_ratio(-50, 27), &Prime::from_u64(3).unwrap()).unwrap(),
        -3
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_matches_trial_division(n in 1u64..2_000_000_000) {
        let f = factor(&BigInt::from(n)).unwrap();
        let got: Vec<(u64, u32)> =
            f.factors().iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        prop_assert_eq!(got, trial_factor(n));
    }

    #[test]
    fn reconstruct_is_identity(n in any::<i64>().prop_filter("nonzero", |n| *n != 0)) {
        let f = factor(&BigInt::from(n)).unwrap();
        prop_assert_eq!(f.reconstruct(), BigInt::from(n));
        for (p, _) in f.factors() {
            prop_assert!(is_prime(p.value()));
        }
    }

    #[test]
    fn product_formula(x in rational()) {
        // Σ_p ord_p(x)·log p = log|x| as an exact identity of logarithms
        let finite: LogQ = valuations(&x)
            .unwrap()
            .iter()
            .map(|(p, e)| LogQ::prime_power(p, *e))
            .sum();
        prop_assert_eq!(finite, LogQ::of(x.abs()).unwrap());
        let total: LogQ = support(&x).unwrap().iter().map(|v| abs_at(&x, v).unwrap()).sum();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn multiplicativity(x in rational(), y in rational(), p in prop::sample::select(vec![2u64, 3, 5, 7, 1_000_003])) {
        for v in [Place::Archimedean, Place::finite(p).unwrap()] {
            let xy = &x * &y;
            prop_assert_eq!(
                abs_at(&xy, &v).unwrap(),
                abs_at(&x, &v).unwrap() + abs_at(&y, &v).unwrap()
            );
        }
    }

    #[test]
    fn ultrametric(x in rational(), y in rational(), p in prop::sample::select(vec![2u64, 3, 5, 11])) {
        let s = &x + &y;
        prop_assume!(!s.is_zero());
        let p = Prime::from_u64(p).unwrap();
        let lhs = ord_p(&s, &p).unwrap();
        prop_assert!(lhs >= ord_p(&x, &p).unwrap().min(ord_p(&y, &p).unwrap()));
    }
}

#[test]
fn primes_beyond_u64() {
    let m127: BigUint = (BigUint::from(1u32) << 127u32) - 1u32;
    assert!(Prime::new(m127.clone()).is_ok());
    let semi = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
    let f = factor(&(semi.clone() * BigInt::from(1_000_000_009u64))).unwrap();
    assert_eq!(f.factors().len(), 3);
    // past 2^128 the factorizer refuses instead of running unbounded
    let err = factor(&(semi * BigInt::from(m127))).unwrap_err();
    assert!(err.is_resource_guard());
}
