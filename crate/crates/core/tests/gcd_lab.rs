use heightlab_core::detect::{detect_translates, filter_off, AffineHyperplane};
use heightlab_core::gcd::{
    cz_counting, cz_counting_by_places, enumerate_group, generalized_gcd, scan, GroupGamma,
    SampleBox,
};
use heightlab_core::heights::PlaceSet;
use heightlab_core::poly::MultiPoly;
use heightlab_core::{LogQ, Rational, Sequential};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn xy(s: &str) -> MultiPoly {
    MultiPoly::parse(s, &["x".into(), "y".into()]).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn powers_of_two() -> GroupGamma {
    GroupGamma::generated_by(vec![vec![q(2), q(1)], vec![q(1), q(2)]]).unwrap()
}

fn euclid(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn generalized_gcd_matches_euclid() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..1000 {
        let (a, b) = (rng.gen_range(1..1u64 << 40), rng.gen_range(1..1u64 << 40));
        let g = generalized_gcd(&q(a as i64), &q(b as i64)).unwrap();
        assert_eq!(g, LogQ::of_integer(euclid(a, b).into()).unwrap());
        assert!((g.value() - (euclid(a, b) as f64).ln()).abs() < 1e-12);
    }
}

#[test]
fn counting_paths_agree_on_s_unit_samples() {
    let s = PlaceSet::from_u64s(&[2, 3]).unwrap();
    let gamma = GroupGamma::s_units(2, &s).unwrap();
    let (f, g) = (xy("x - 1"), xy("y - 1"));
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut n = 0;
    while n < 1000 {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-12..=12)).collect();
        let t: Vec<bool> = (0..2).map(|_| rng.gen_bool(0.5)).collect();
        let u = gamma.element(&e, &t).unwrap();
        let Ok(fast) = cz_counting(&f, &g, &u, &s) else {
            continue;
        };
        assert_eq!(fast, cz_counting_by_places(&f, &g, &u, &s).unwrap());
        let (a, b) = (f.evaluate(&u).unwrap(), g.evaluate(&u).unwrap());
        assert!(fast <= generalized_gcd(&a, &b).unwrap());
        n += 1;
    }
}

#[test]
fn diagonal_ratios_are_exact() {
    let s = PlaceSet::from_u64s(&[2]).unwrap();
    let res = scan(
        &xy("x - 1"),
        &xy("y - 1"),
        &powers_of_two(),
        &SampleBox::new(12),
        &s,
        &Sequential,
    )
    .unwrap();
    assert_eq!(res.skipped.len(), 1);
    for a in 1..=12i64 {
        let r = res.records.iter().find(|r| r.e == [a, a]).unwrap();
        let m = (1u64 << a) - 1;
        assert_eq!(r.gcdlog, LogQ::of_integer(m.into()).unwrap());
        assert_eq!(r.hmax, LogQ::of_integer((1u64 << a).into()).unwrap());
        let want = (m as f64).ln() / (a as f64 * 2f64.ln());
        assert!((r.ratio - want).abs() < 1e-14);
        if a >= 5 {
            assert!(r.ratio > 0.95);
        }
    }
    // off the diagonal, gcd(2^a − 1, 2^c − 1) = 2^gcd(a,c) − 1
    for r in &res.records {
        let (a, c) = (r.e[0].unsigned_abs(), r.e[1].unsigned_abs());
        if a == 0 || c == 0 {
            continue;
        }
        let want = (1u64 << a.gcd(&c)) - 1;
        assert_eq!(
            r.gcdlog,
            LogQ::of_integer(want.into()).unwrap(),
            "{:?}",
            r.e
        );
    }
}

fn diag_ratio(a: i64) -> f64 {
    (((1u64 << a) - 1) as f64).ln() / (a as f64 * 2f64.ln())
}

#[test]
fn diagonal_dominates_off_diagonal_tail() {
    let s = PlaceSet::from_u64s(&[2]).unwrap();
    let res = scan(
        &xy("x - 1"),
        &xy("y - 1"),
        &powers_of_two(),
        &SampleBox::new(12),
        &s,
        &Sequential,
    )
    .unwrap();
    let diag_min = res
        .records
        .iter()
        .filter(|r| r.e[0] == r.e[1] && r.e[0] >= 2)
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min);
    // The axes (one value vanishes) and the antidiagonal u₂ = 1/u₁ carry the
    // same ratios as the diagonal, so the tail is taken off all four.
    let on_unit_line = |e: &[i64]| e[0] == 0 || e[1] == 0 || e[0] == e[1] || e[0] == -e[1];
    for r in res
        .records
        .iter()
        .filter(|r| on_unit_line(&r.e) && r.e[0].abs().max(r.e[1].abs()) >= 2)
    {
        assert!((r.ratio - diag_ratio(r.e[0].abs().max(r.e[1].abs()))).abs() < 1e-14);
    }
    let mut off: Vec<f64> = res
        .records
        .iter()
        .filter(|r| !on_unit_line(&r.e))
        .map(|r| r.ratio)
        .collect();
    off.sort_by(f64::total_cmp);
    let p99 = off[(0.99 * off.len() as f64).ceil() as usize - 1];
    assert!(p99 < diag_min, "p99 {p99} vs diagonal {diag_min}");
}

#[test]
fn detector_isolates_the_diagonal() {
    let s = PlaceSet::from_u64s(&[2]).unwrap();
    let res = scan(
        &xy("x - 1"),
        &xy("y - 1"),
        &powers_of_two(),
        &SampleBox::new(12),
        &s,
        &Sequential,
    )
    .unwrap();
    let rep = detect_translates(&res.records, 0.5, 3, &Sequential).unwrap();
    let diag = AffineHyperplane::new(vec![1, -1], 0).unwrap();
    let hs = rep.hyperplanes();
    assert!(hs.contains(&diag));
    for d in &rep.detected {
        for r in &res.records {
            if r.ratio >= 0.5 && d.hyperplane.contains(&r.e) {
                assert_eq!(
                    d.hyperplane
                        .normal()
                        .iter()
                        .zip(&r.e)
                        .map(|(a, e)| a * e)
                        .sum::<i64>(),
                    d.hyperplane.offset()
                );
            }
        }
    }
    let diag_min = res
        .records
        .iter()
        .filter(|r| diag.contains(&r.e) && r.ratio > 0.0)
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min);
    assert!(rep.max_residual_ratio() < diag_min);
    assert_eq!(filter_off(&res.records, &hs), rep.residual);
}

#[test]
fn enumeration_count() {
    let g = powers_of_two();
    for b in 0..5u32 {
        let n = enumerate_group(&g, &SampleBox::new(b)).unwrap().count() as u64;
        assert_eq!(n, u64::from(2 * b + 1).pow(2));
    }
}
