use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::arith::{valuations, Prime, Rational};
use crate::error::{Error, Result};
use crate::heights::PlaceSet;

/// Largest `|exponent|` of any prime in an enumerated coordinate.
const MAX_EXPONENT: i64 = 1 << 16;

/// A finitely generated subgroup of 𝔾ₘⁿ(ℚ): free generators plus an
/// optional free sign `±1` on selected coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupGamma {
    generators: Vec<Vec<Rational>>,
    free_sign: Vec<bool>,
    primes: Vec<Prime>,
    // exps[j][i][k]: exponent of primes[k] in coordinate i of generator j
    exps: Vec<Vec<Vec<i64>>>,
    negs: Vec<Vec<bool>>,
}

impl GroupGamma {
    pub fn new(generators: Vec<Vec<Rational>>, free_sign: Vec<bool>) -> Result<Self> {
        let n = free_sign.len();
        if generators.is_empty() && n == 0 {
            return Err(Error::Empty);
        }
        if n == 0 {
            return Err(Error::Invalid("group of dimension 0".into()));
        }
        let mut primes = BTreeSet::new();
        let mut vals = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.len() != n {
                return Err(Error::Arity {
                    expected: n,
                    got: g.len(),
                });
            }
            let mut row = Vec::with_capacity(n);
            for x in g {
                if x.is_zero() {
                    return Err(Error::Invalid(
                        "generator coordinate 0 is not a unit".into(),
                    ));
                }
                let v = valuations(x)?;
                primes.extend(v.iter().map(|(p, _)| p.clone()));
                row.push(v);
            }
            vals.push(row);
        }
        let primes: Vec<Prime> = primes.into_iter().collect();
        let exps = vals
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        let mut e = alloc::vec![0i64; primes.len()];
                        for (p, k) in v {
                            let idx = primes.binary_search(p).expect("collected above");
                            e[idx] = *k;
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        let negs = generators
            .iter()
            .map(|g| g.iter().map(Rational::is_negative).collect())
            .collect();
        Ok(GroupGamma {
            generators,
            free_sign,
            primes,
            exps,
            negs,
        })
    }

    /// Free generators only, no sign freedom.
    pub fn generated_by(generators: Vec<Vec<Rational>>) -> Result<Self> {
        let n = generators.first().map(Vec::len).ok_or(Error::Empty)?;
        Self::new(generators, alloc::vec![false; n])
    }

    /// 𝔾ₘⁿ(𝒪_S): one generator `p` per coordinate and prime of `S`, and a
    /// free sign on every coordinate.
    pub fn s_units(n: usize, s: &PlaceSet) -> Result<Self> {
        let mut gens = Vec::new();
        for i in 0..n {
            for p in s.primes() {
                let mut g = alloc::vec![Rational::one(); n];
                g[i] = Rational::from_integer(BigInt::from(p.value().clone()));
                gens.push(g);
            }
        }
        Self::new(gens, alloc::vec![true; n])
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn dim(&self) -> usize {
        self.free_sign.len()
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn free_sign(&self) -> &[bool] {
        &self.free_sign
    }

    /// Number of coordinates carrying a free sign.
    pub fn torsion_len(&self) -> usize {
        self.free_sign.iter().filter(|b| **b).count()
    }

    /// Fails with the first generator coordinate that is not an S-unit.
    pub fn check_s_units(&self, s: &PlaceSet) -> Result<()> {
        for g in &self.generators {
            for x in g {
                if !s.is_unit(x) {
                    return Err(Error::NotSUnit(x.to_string()));
                }
            }
        }
        Ok(())
    }

    /// `Π_j g_j^{e_j}`, with the sign of each flagged coordinate flipped
    /// where `torsion` is set.
    pub fn element(&self, e: &[i64], torsion: &[bool]) -> Result<Vec<Rational>> {
        if e.len() != self.rank() {
            return Err(Error::Arity {
                expected: self.rank(),
                got: e.len(),
            });
        }
        if torsion.len() != self.torsion_len() {
            return Err(Error::Arity {
                expected: self.torsion_len(),
                got: torsion.len(),
            });
        }
        let mut flips = torsion.iter();
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let mut negative = self.free_sign[i] && *flips.next().expect("length checked");
            let mut num = BigUint::one();
            let mut den = BigUint::one();
            for (k, p) in self.primes.iter().enumerate() {
                let mut total = 0i64;
                for (j, ej) in e.iter().enumerate() {
                    total = ej
                        .checked_mul(self.exps[j][i][k])
                        .and_then(|t| t.checked_add(total))
                        .filter(|t| t.abs() <= MAX_EXPONENT)
                        .ok_or_else(|| Error::Resource("group element too large".into()))?;
                }
                let pw = num_traits::pow(p.value().clone(), total.unsigned_abs() as usize);
                if total > 0 {
                    num *= pw;
                } else if total < 0 {
                    den *= pw;
                }
            }
            for (j, ej) in e.iter().enumerate() {
                if self.negs[j][i] && ej.rem_euclid(2) == 1 {
                    negative = !negative;
                }
            }
            let num = BigInt::from(num);
            let num = if negative { -num } else { num };
            out.push(Rational::new(num, BigInt::from(den))?);
        }
        Ok(out)
    }
}

/// The exponent box `{e ∈ ℤ^r : ‖e‖_∞ ≤ B}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleBox {
    pub bound: u32,
}

impl SampleBox {
    pub fn new(bound: u32) -> Self {
        SampleBox { bound }
    }

    /// `(2B+1)^r · 2^t`, or `None` on overflow.
    pub fn size(&self, rank: usize, torsion: usize) -> Option<u64> {
        let side = 2 * u64::from(self.bound) + 1;
        side.checked_pow(u32::try_from(rank).ok()?)?
            .checked_mul(1u64.checked_shl(u32::try_from(torsion).ok()?)?)
    }

    /// The `index`-th element in lexicographic order, sign bits varying fastest.
    pub fn decode(&self, index: u64, rank: usize, torsion: usize) -> (Vec<i64>, Vec<bool>) {
        let side = 2 * u64::from(self.bound) + 1;
        let mut t = alloc::vec![false; torsion];
        let mut rest = index;
        for bit in t.iter_mut().rev() {
            *bit = rest & 1 == 1;
            rest >>= 1;
        }
        let mut e = alloc::vec![0i64; rank];
        for c in e.iter_mut().rev() {
            *c = (rest % side) as i64 - i64::from(self.bound);
            rest /= side;
        }
        (e, t)
    }
}

/// One enumerated point `u = Π g_j^{e_j}` of Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub index: u64,
    pub e: Vec<i64>,
    pub torsion: Vec<bool>,
    pub u: Vec<Rational>,
}

/// All of `Γ ∩ box` in lexicographic order of `(e, torsion)`.
pub fn enumerate_group<'a>(
    gamma: &'a GroupGamma,
    sample: &SampleBox,
) -> Result<impl Iterator<Item = Result<GroupElement>> + 'a> {
    let (r, t) = (gamma.rank(), gamma.torsion_len());
    let total = sample
        .size(r, t)
        .ok_or_else(|| Error::Resource("sample box too large".into()))?;
    let sample = *sample;
    Ok((0..total).map(move |index| {
        let (e, torsion) = sample.decode(index, r, t);
        let u = gamma.element(&e, &torsion)?;
        Ok(GroupElement {
            index,
            e,
            torsion,
            u,
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn cyclic_example() {
        let g = GroupGamma::generated_by(alloc::vec![alloc::vec![q(2, 1), q(2, 1)]]).unwrap();
        let all: Vec<GroupElement> = enumerate_group(&g, &SampleBox::new(1))
            .unwrap()
            .map(Result::unwrap)
            .collect();
        assert_eq!(all.len(), 3);
        assert_eq!(all[0].e, [-1]);
        assert_eq!(all[0].u, [q(1, 2), q(1, 2)]);
        assert_eq!(all[1].u, [q(1, 1), q(1, 1)]);
        assert_eq!(all[2].u, [q(2, 1), q(2, 1)]);
    }

    #[test]
    fn rank_two_element() {
        let g = GroupGamma::generated_by(alloc::vec![
            alloc::vec![q(2, 1), q(1, 1)],
            alloc::vec![q(1, 1), q(3, 1)],
        ])
        .unwrap();
        assert_eq!(g.element(&[2, 1], &[]).unwrap(), [q(4, 1), q(3, 1)]);
        assert_eq!(g.element(&[-1, -2], &[]).unwrap(), [q(1, 2), q(1, 9)]);
        assert_eq!(SampleBox::new(3).size(2, 0), Some(49));
        assert_eq!(enumerate_group(&g, &SampleBox::new(3)).unwrap().count(), 49);
    }

    #[test]
    fn negative_generators_and_signs() {
        let g = GroupGamma::new(alloc::vec![alloc::vec![q(-2, 3)]], alloc::vec![true]).unwrap();
        assert_eq!(g.element(&[2], &[false]).unwrap(), [q(4, 9)]);
        assert_eq!(g.element(&[-1], &[false]).unwrap(), [q(-3, 2)]);
        assert_eq!(g.element(&[-1], &[true]).unwrap(), [q(3, 2)]);
        assert_eq!(SampleBox::new(2).size(1, 1), Some(10));
    }

    #[test]
    fn s_unit_group() {
        let s = PlaceSet::from_u64s(&[2, 3]).unwrap();
        let g = GroupGamma::s_units(2, &s).unwrap();
        assert_eq!((g.rank(), g.dim(), g.torsion_len()), (4, 2, 2));
        g.check_s_units(&s).unwrap();
        assert!(matches!(
            g.check_s_units(&PlaceSet::from_u64s(&[2]).unwrap()),
            Err(Error::NotSUnit(_))
        ));
        assert_eq!(
            g.element(&[1, -1, 0, 2], &[true, false]).unwrap(),
            [q(-2, 3), q(9, 1)]
        );
    }

    #[test]
    fn decode_is_lexicographic() {
        let b = SampleBox::new(1);
        assert_eq!(b.decode(0, 2, 1), (alloc::vec![-1, -1], alloc::vec![false]));
        assert_eq!(b.decode(1, 2, 1), (alloc::vec![-1, -1], alloc::vec![true]));
        assert_eq!(b.decode(2, 2, 1), (alloc::vec![-1, 0], alloc::vec![false]));
        assert_eq!(b.decode(17, 2, 1), (alloc::vec![1, 1], alloc::vec![true]));
    }
}
