//! The invariant suite behind `verify`: seeded random checks of the
//! identities every module promises. Same seed, same samples, same report.

use heightlab_core::arith::abs_at;
use heightlab_core::gamma::{
    ray_sequence, rr_leading_coeff, verify_beta_bound, BlowupModel, LineClass, DEFAULT_GRID,
};
use heightlab_core::gcd::{cz_counting, cz_counting_by_places, generalized_gcd};
use heightlab_core::heights::{
    decompose, height_proj, height_rational, weil_subscheme, PlaceSet, ProjPoint, SubschemeSpec,
};
use heightlab_core::poly::{construct_avoiding_divisor, HomogPoly, MultiPoly};
use heightlab_core::{support, Executor, LogQ, Place, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub samples: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    name: &'static str,
    samples: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            samples: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, outcome: Result<bool, String>, what: impl FnOnce() -> String) {
        self.samples += 1;
        let note = match outcome {
            Ok(true) => return,
            Ok(false) => what(),
            Err(e) => format!("{}: {e}", what()),
        };
        self.failures += 1;
        self.first_failure.get_or_insert(note);
    }

    fn done(self) -> CheckResult {
        CheckResult {
            name: self.name,
            samples: self.samples,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let n = rng.gen_range(1..=bound) * if rng.gen() { 1 } else { -1 };
    Rational::from_ratio(n, rng.gen_range(1..=bound))
}

fn point(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> ProjPoint {
    loop {
        let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(p) = ProjPoint::from_i64(&c) {
            return p;
        }
    }
}

fn s_unit(rng: &mut ChaCha8Rng, max_exp: i64) -> Rational {
    let a = rng.gen_range(-max_exp..=max_exp);
    let b = rng.gen_range(-max_exp..=max_exp);
    let two = Rational::from_integer(2).pow(a).expect("nonzero base");
    let three = Rational::from_integer(3).pow(b).expect("nonzero base");
    let u = &two * &three;
    if rng.gen() {
        -u
    } else {
        u
    }
}

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn form(text: &str, names: &[&str]) -> HomogPoly {
    HomogPoly::new(MultiPoly::parse(text, &vars(names)).expect("fixed text parses"))
        .expect("fixed text is homogeneous")
}

fn err(e: heightlab_core::Error) -> String {
    e.to_string()
}

/// Runs every check; `samples` scales the random ones.
pub fn run_suite<E: Executor>(seed: u64, samples: usize, exec: &E) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        product_formula(&mut rng, samples),
        height_rescaling(&mut rng, samples),
        gcd_vs_euclid(&mut rng, samples),
        cz_two_paths(&mut rng, samples),
        weil_nonnegative(&mut rng, samples),
        height_decomposition(&mut rng, samples),
        avoiding_divisor(&mut rng, samples.clamp(1, 100)),
        beta_bound(exec),
        rr_coefficients(),
    ]
}

fn product_formula(rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    let mut t = Tally::new("product_formula");
    for _ in 0..samples {
        let x = rational(rng, 1_000_000_000_000_000_000);
        let total = support(&x).and_then(|places| {
            places
                .iter()
                .map(|v| abs_at(&x, v))
                .sum::<heightlab_core::Result<LogQ>>()
        });
        t.record(total.map(|s| s.is_zero()).map_err(err), || {
            format!("x = {x}")
        });
    }
    t.done()
}

fn height_rescaling(rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    let mut t = Tally::new("height_rescaling");
    for _ in 0..samples {
        let p = point(rng, 3, 1000);
        let c = rational(rng, 1000);
        let scaled: Vec<Rational> = p.as_rationals().iter().map(|x| x * &c).collect();
        let same = ProjPoint::new(&scaled)
            .map(|q| height_proj(&q).value().to_bits() == height_proj(&p).value().to_bits())
            .map_err(err);
        t.record(same, || format!("{p} scaled by {c}"));
        let x = rational(rng, 1 << 40);
        let pq = ProjPoint::new(&[x.clone(), Rational::one()])
            .map(|q| height_proj(&q) == height_rational(&x))
            .map_err(err);
        t.record(pq, || format!("h({x})"));
    }
    t.done()
}

fn gcd_vs_euclid(rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    let mut t = Tally::new("gcd_vs_euclid");
    for _ in 0..samples {
        let a: i64 = rng.gen_range(1..=1 << 40);
        let b: i64 = rng.gen_range(1..=1 << 40);
        let expected = LogQ::of(Rational::from_integer(a.gcd(&b))).map_err(err);
        let got =
            generalized_gcd(&Rational::from_integer(a), &Rational::from_integer(-b)).map_err(err);
        t.record(expected.and_then(|e| got.map(|g| g == e)), || {
            format!("({a}, -{b})")
        });
    }
    t.done()
}

fn cz_two_paths(rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    let mut t = Tally::new("cz_two_paths");
    let xy = vars(&["x", "y"]);
    let f = MultiPoly::parse("x - 1", &xy).expect("fixed text");
    let g = MultiPoly::parse("y - 1", &xy).expect("fixed text");
    let h = MultiPoly::parse("x*y + 2*x - 3", &xy).expect("fixed text");
    let s = PlaceSet::from_u64s(&[2, 3]).expect("primes");
    for i in 0..samples {
        let u = [s_unit(rng, 20), s_unit(rng, 20)];
        let (f, g) = if i % 2 == 0 { (&f, &g) } else { (&f, &h) };
        let a = cz_counting(f, g, &u, &s);
        let b = cz_counting_by_places(f, g, &u, &s);
        let outcome = match (a, b) {
            (Err(heightlab_core::Error::CommonZero), Err(heightlab_core::Error::CommonZero)) => {
                Ok(true)
            }
            (Ok(a), Ok(b)) => Ok(a == b),
            (a, b) => Err(format!("{a:?} vs {b:?}")),
        };
        t.record(outcome, || format!("u = ({}, {})", u[0], u[1]));
    }
    t.done()
}

fn subschemes() -> Vec<(SubschemeSpec, &'static str)> {
    let xyz = ["X", "Y", "Z"];
    vec![
        (
            SubschemeSpec::new(vec![form("X", &xyz), form("Y", &xyz)]).expect("subscheme"),
            "X; Y",
        ),
        (
            SubschemeSpec::new(vec![form("X + Y + Z", &xyz)]).expect("subscheme"),
            "X + Y + Z",
        ),
        (
            SubschemeSpec::new(vec![form("X^2 - Y*Z", &xyz), form("3*X*Y + Z^2", &xyz)])
                .expect("subscheme"),
            "X^2 - Y*Z; 3*X*Y + Z^2",
        ),
    ]
}

fn weil_nonnegative(rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    let mut t = Tally::new("weil_nonnegative");
    let ys = subschemes();
    let places: Vec<Place> = [2u64, 3, 5, 7]
        .iter()
        .map(|p| Place::finite(*p).expect("prime"))
        .chain([Place::Archimedean])
        .collect();
    for i in 0..samples {
        let (y, name) = &ys[i % ys.len()];
        let p = point(rng, 3, 50);
        for v in &places {
            match weil_subscheme(y, v, &p) {
                Err(heightlab_core::Error::PointOnSubscheme) => {}
                r => t.record(r.map(|l| !l.is_negative()).map_err(err), || {
                    format!("{name} at {p}")
                }),
            }
        }
    }
    t.done()
}

fn height_decomposition(rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    let mut t = Tally::new("height_decomposition");
    let ys = subschemes();
    let sets = [
        PlaceSet::archimedean(),
        PlaceSet::from_u64s(&[2]).expect("primes"),
        PlaceSet::from_u64s(&[2, 3, 5]).expect("primes"),
    ];
    for i in 0..samples {
        let (y, name) = &ys[i % ys.len()];
        let s = &sets[(i / ys.len()) % sets.len()];
        let p = point(rng, 3, 10_000);
        match decompose(y, s, &p) {
            Err(heightlab_core::Error::PointOnSubscheme) => {}
            r => t.record(
                r.map(|d| &d.proximity + &d.counting == d.height)
                    .map_err(err),
                || format!("{name}, S = {s}, P = {p}"),
            ),
        }
    }
    t.done()
}

fn random_form(rng: &mut ChaCha8Rng, names: &[String], degree: u32) -> Option<HomogPoly> {
    let n = names.len();
    let terms = (0..rng.gen_range(1..=3)).map(|_| {
        let mut e = vec![0u32; n];
        for _ in 0..degree {
            e[rng.gen_range(0..n)] += 1;
        }
        (e, Rational::from_integer(rng.gen_range(-3i64..=3)))
    });
    let p = MultiPoly::from_terms(names.to_vec(), terms).ok()?;
    HomogPoly::new(p).ok()
}

/// Random instances in P^2 and P^3: F is the stated combination, misses
/// every point, and uses coefficients of size at most 8.
fn avoiding_divisor(rng: &mut ChaCha8Rng, instances: usize) -> CheckResult {
    let mut t = Tally::new("avoiding_divisor");
    while t.samples < instances {
        let len = if t.samples.is_multiple_of(2) { 3 } else { 4 };
        let names = heightlab_core::poly::default_vars(len);
        let degree = rng.gen_range(1..=2);
        let gens: Option<Vec<HomogPoly>> = (0..rng.gen_range(2..=4))
            .map(|_| random_form(rng, &names, degree))
            .collect();
        let Some(gens) = gens else { continue };
        let mut pts = Vec::new();
        for _ in 0..rng.gen_range(1..=5) {
            let p = point(rng, len, 3);
            let off_y = gens.iter().any(|g| {
                g.poly()
                    .evaluate(&p.as_rationals())
                    .is_ok_and(|v| !v.is_zero())
            });
            if off_y {
                pts.push(p);
            }
        }
        if pts.is_empty() {
            continue;
        }
        let outcome = construct_avoiding_divisor(&gens, &pts)
            .map_err(err)
            .map(|d| {
                let mut sum = MultiPoly::zero(names.clone());
                for (g, c) in gens.iter().zip(&d.coefficients) {
                    sum = &sum + &g.poly().scale(&Rational::from_integer(*c));
                }
                let misses = pts.iter().all(|p| {
                    d.form
                        .poly()
                        .evaluate(&p.as_rationals())
                        .is_ok_and(|v| !v.is_zero())
                });
                sum == *d.form.poly() && misses && d.coefficients.iter().all(|c| c.abs() <= 8)
            });
        t.record(outcome, || format!("generators {gens:?}, points {pts:?}"));
    }
    t.done()
}

fn beta_bound<E: Executor>(exec: &E) -> CheckResult {
    let mut t = Tally::new("beta_bound");
    for n in [2, 3] {
        let model = BlowupModel::new(n).expect("n >= 2");
        let grid: &[u32] = if n == 2 { &DEFAULT_GRID } else { &[10, 20, 40] };
        for ell in 1..=10 {
            let v = verify_beta_bound(&model, ell, grid, exec)
                .map(|v| v.holds)
                .map_err(err);
            t.record(v, || format!("n = {n}, l = {ell}"));
        }
    }
    t.done()
}

fn rr_coefficients() -> CheckResult {
    let mut t = Tally::new("rr_leading_coeff");
    let cases = [(2, (1, 0), 1), (3, (1, 0), 1), (2, (3, 1), 8)];
    for (n, (a, b), expected) in cases {
        let model = BlowupModel::new(n).expect("n >= 2");
        let seq = ray_sequence(&model, LineClass { a, b }, 12);
        let got = rr_leading_coeff(&seq, n)
            .map(|c| c == BigInt::from(expected))
            .map_err(err);
        t.record(got, || format!("n = {n}, ray ({a}, {b})"));
    }
    t.done()
}

#[cfg(test)]
mod tests {
    use super::*;
    use heightlab_core::Sequential;

    #[test]
    fn suite_passes_and_is_reproducible() {
        let a = run_suite(7, 50, &Sequential);
        assert!(a.iter().all(CheckResult::passed), "{a:?}");
        assert_eq!(a, run_suite(7, 50, &Sequential));
    }
}
