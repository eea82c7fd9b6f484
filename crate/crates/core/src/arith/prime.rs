//! Primality certification and integer factorization for the finite places.
//!
//! Trial division handles the small primes, Brent's variant of Pollard rho
//! splits what is left, and every reported prime passes a deterministic
//! Miller-Rabin test (fixed witness sets below 3.3·10²⁴, Baillie-PSW above).
//! Inputs larger than 2¹²⁸ are refused.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::math;

/// Trial divisors are tried up to this bound before switching to rho.
const TRIAL_BOUND: u64 = 1 << 12;
/// Rho iterations allowed per split before giving up.
const RHO_BUDGET: u64 = 1 << 26;
/// Below this bound Miller-Rabin with the first 13 primes is a proof.
const MR13_BOUND: &str = "3317044064679887385961981";

/// A rational prime, certified on construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(BigUint);

impl Prime {
    pub fn new(n: BigUint) -> Result<Self> {
        if n.bits() > 129 {
            return Err(Error::FactorGuard(n.to_string()));
        }
        if is_prime(&n) {
            Ok(Prime(n))
        } else {
            Err(Error::NotPrime(n.to_string()))
        }
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(BigUint::from(p))
    }

    pub(crate) fn new_unchecked(n: BigUint) -> Self {
        debug_assert!(is_prime(&n));
        Prime(n)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Natural logarithm of the prime.
    pub fn ln(&self) -> f64 {
        ln_biguint(&self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prime({})", self.0)
    }
}

/// ln of a positive big integer, accurate to a few ulps.
pub(crate) fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 53 {
        return math::ln(n.to_u64().unwrap_or(0) as f64);
    }
    let shift = bits - 53;
    let top = (n >> shift).to_u64().unwrap_or(0) as f64;
    math::ln(top) + shift as f64 * core::f64::consts::LN_2
}

/// Sign and prime-power decomposition of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    sign: i8,
    factors: Vec<(Prime, u32)>,
}

impl Factorization {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Prime powers in strictly increasing order of the prime.
    pub fn factors(&self) -> &[(Prime, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, p: &Prime) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Multiplies the factorization back out.
    pub fn reconstruct(&self) -> BigInt {
        let mag = self.factors.iter().fold(BigUint::one(), |acc, (p, e)| {
            acc * num_traits::pow(p.0.clone(), *e as usize)
        });
        let sign = if self.sign < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        };
        BigInt::from_biguint(sign, mag)
    }
}

/// Factors a nonzero integer exactly.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut counts = BTreeMap::new();
    factor_magnitude(n.magnitude(), &mut counts)?;
    Ok(Factorization {
        sign,
        factors: counts
            .into_iter()
            .map(|(p, e)| (Prime::new_unchecked(p), e))
            .collect(),
    })
}

/// Adds the prime factorization of `m ≥ 1` into `counts`.
pub(crate) fn factor_magnitude(m: &BigUint, counts: &mut BTreeMap<BigUint, u32>) -> Result<()> {
    let guard = BigUint::one() << 128u32;
    if m > &guard {
        return Err(Error::FactorGuard(m.to_string()));
    }
    let mut rest = m.clone();
    let mut d = 2u64;
    let mut step = 0usize;
    while d <= TRIAL_BOUND {
        if let Some(mut small) = rest.to_u64() {
            // finish on machine words
            while d <= TRIAL_BOUND && d * d <= small {
                while small % d == 0 {
                    small /= d;
                    *counts.entry(BigUint::from(d)).or_insert(0) += 1;
                }
                d = next_trial(d, &mut step);
            }
            rest = BigUint::from(small);
            if d * d > small && small > 1 {
                *counts.entry(rest).or_insert(0) += 1;
                return Ok(());
            }
            break;
        }
        while small_divides(&rest, d) {
            rest /= d;
            *counts.entry(BigUint::from(d)).or_insert(0) += 1;
        }
        d = next_trial(d, &mut step);
    }
    if rest.is_one() {
        return Ok(());
    }
    let mut stack = alloc::vec![rest];
    while let Some(x) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if is_prime(&x) {
            *counts.entry(x).or_insert(0) += 1;
            continue;
        }
        if let Some(r) = exact_sqrt(&x) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = split(&x)?;
        let other = &x / &d;
        stack.push(d);
        stack.push(other);
    }
    Ok(())
}

/// 2, 3, then the 6k ± 1 wheel.
fn next_trial(d: u64, step: &mut usize) -> u64 {
    const WHEEL: [u64; 2] = [2, 4];
    match d {
        2 => 3,
        3 => 5,
        _ => {
            let next = d + WHEEL[*step % 2];
            *step += 1;
            next
        }
    }
}

fn exact_sqrt(x: &BigUint) -> Option<BigUint> {
    let r = x.sqrt();
    (&(&r * &r) == x).then_some(r)
}

fn small_divides(n: &BigUint, d: u64) -> bool {
    (n % d).is_zero()
}

/// Finds a nontrivial divisor of a composite `n`.
fn split(n: &BigUint) -> Result<BigUint> {
    if n.is_even() {
        return Ok(BigUint::from(2u32));
    }
    let mut budget = RHO_BUDGET;
    if let Some(small) = n.to_u64() {
        for c in 1..u64::MAX {
            if let Some(d) = rho_u64(small, c, &mut budget) {
                return Ok(BigUint::from(d));
            }
            if budget == 0 {
                break;
            }
        }
    } else {
        for c in 1u32.. {
            if let Some(d) = rho_big(n, c, &mut budget) {
                return Ok(d);
            }
            if budget == 0 {
                break;
            }
        }
    }
    Err(Error::FactorBudget(n.to_string()))
}

/// Montgomery arithmetic modulo an odd `n < 2⁶⁴`, with `R = 2⁶⁴`.
#[derive(Clone, Copy)]
struct Mont {
    n: u64,
    /// `n⁻¹ mod 2⁶⁴`
    inv: u64,
    /// `R² mod n`
    r2: u64,
}

impl Mont {
    fn new(n: u64) -> Self {
        debug_assert!(n % 2 == 1);
        let mut inv = n;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r = (u128::from(u64::MAX) + 1) % u128::from(n);
        let r2 = ((r * r) % u128::from(n)) as u64;
        Mont { n, inv, r2 }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let (lo, hi) = (t as u64, (t >> 64) as u64);
        let m = lo.wrapping_mul(self.inv);
        let mn = ((u128::from(m) * u128::from(self.n)) >> 64) as u64;
        let (d, borrow) = hi.overflowing_sub(mn);
        if borrow {
            d.wrapping_add(self.n)
        } else {
            d
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(u128::from(a) * u128::from(b))
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }

    fn enter(&self, a: u64) -> u64 {
        self.mul(a % self.n, self.r2)
    }

    fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = self.enter(1);
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

// Brent's cycle detection with batched gcds, in Montgomery form: the
// iteration map differs from x² + c by the factor R, which rho does not mind,
// and multiplying by R does not change gcds with n.
fn rho_u64(n: u64, c: u64, budget: &mut u64) -> Option<u64> {
    let mt = Mont::new(n);
    let c = c % n;
    let f = |x: u64| mt.add(mt.mul(x, x), c);
    let batch = 128u64;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, mt.enter(1), 1u64);
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let lim = batch.min(r - k);
            for _ in 0..lim {
                y = f(y);
                q = mt.mul(q, x.abs_diff(y));
            }
            g = q.gcd(&n);
            k += lim;
            *budget = budget.saturating_sub(lim);
            if *budget == 0 && g == 1 {
                return None;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_big(n: &BigUint, c: u32, budget: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let batch = 128u64;
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let lim = batch.min(r - k);
            for _ in 0..lim {
                y = f(&y);
                q = (&q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += lim;
            *budget = budget.saturating_sub(lim);
            if *budget == 0 && g.is_one() {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (d, s) = odd_part_u64(n - 1);
    let mt = Mont::new(n);
    let one = mt.enter(1);
    let minus_one = mt.enter(n - 1);
    // Witness set that is exact for all 64-bit inputs.
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = mt.pow(mt.enter(a), d);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = mt.mul(x, x);
            if x == minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn odd_part_u64(mut d: u64) -> (u64, u32) {
    let s = d.trailing_zeros();
    d >>= s;
    (d, s)
}

/// Deterministic for all inputs below 2⁶⁴ and 3.3·10²⁴; Baillie-PSW beyond.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let strong_probable = |a: u32| {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                return true;
            }
        }
        false
    };
    let bound: BigUint = MR13_BOUND.parse().expect("constant");
    if n < &bound {
        return [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
            .into_iter()
            .all(strong_probable);
    }
    strong_probable(2) && strong_lucas(n)
}

fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n_int = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().unwrap_or_default();
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1u32;
            let r = (&n % 8u32).to_u32().unwrap_or(0);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
fn strong_lucas(n: &BigUint) -> bool {
    if exact_sqrt(n).is_some() {
        return false;
    }
    let mut d_abs = 5i64;
    let mut positive = true;
    let d = loop {
        let d = BigInt::from(if positive { d_abs } else { -d_abs });
        match jacobi(&d, n) {
            -1 => break d,
            // n exceeds 64 bits, so a shared factor with |D| proves compositeness.
            0 => return false,
            _ => {}
        }
        d_abs += 2;
        positive = !positive;
    };
    let modulus = BigInt::from(n.clone());
    let norm = |x: BigInt| x.mod_floor(&modulus);
    let half = |x: BigInt| {
        let x = norm(x);
        if x.is_even() {
            x >> 1u32
        } else {
            (x + &modulus) >> 1u32
        }
    };
    let q = norm((BigInt::one() - &d) / 4);
    let k = BigInt::from(n + 1u32);
    let s = k.trailing_zeros().unwrap_or(0);
    let dd = &k >> s;
    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = q.clone();
    let bits = dd.bits();
    for i in (0..bits - 1).rev() {
        u = norm(&u * &v);
        v = norm(&v * &v - BigInt::from(2) * &qk);
        qk = norm(&qk * &qk);
        if dd.bit(i) {
            let nu = half(&u + &v);
            let nv = half(&d * &u + &v);
            u = nu;
            v = nv;
            qk = norm(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = norm(&v * &v - BigInt::from(2) * &qk);
        qk = norm(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}
