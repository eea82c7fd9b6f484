use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PlaceSet, ProjPoint};
use crate::arith::{factor, LogQ, Place, Prime};
use crate::error::{Error, Result};
use crate::poly::{coeff_norm, HomogPoly};

/// Largest `λ_{D,p}` seen at one prime outside `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceMaximum {
    pub prime: Prime,
    pub max_lambda: LogQ,
    /// Index of the first point attaining the maximum.
    pub witness: usize,
    /// `log ‖F‖_p` of the form as supplied; zero for primitive forms.
    pub norm_correction: LogQ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    pub places: Vec<PlaceMaximum>,
    pub certified: bool,
}

/// Checks whether `points` is `(D, S)`-integral on the sample.
///
/// λ is evaluated on the primitive integer form of `D`, so the per-place
/// bound is 0 at every prime outside `S`: the set is certified iff no point
/// has `p | F(P)` for some such `p`. The raw-form correction `log ‖F‖_p` is
/// carried along so callers can restate the bound for the form they wrote.
pub fn check_integral_set(
    points: &[ProjPoint],
    d: &HomogPoly,
    s: &PlaceSet,
) -> Result<IntegralityReport> {
    let primitive = d.poly().normalized();
    let mut maxima: BTreeMap<Prime, (u32, usize)> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if p.len() != d.nvars() {
            return Err(Error::Arity {
                expected: d.nvars(),
                got: p.len(),
            });
        }
        let value: BigInt = primitive
            .eval_integer(p.coords())?
            .expect("primitive forms are integral");
        if value.is_zero() {
            return Err(Error::OnSupport);
        }
        for (q, e) in factor(&value)?.factors() {
            if s.contains(&Place::Finite(q.clone())) {
                continue;
            }
            let slot = maxima.entry(q.clone()).or_insert((0, i));
            if *e > slot.0 {
                *slot = (*e, i);
            }
        }
    }
    let places = maxima
        .into_iter()
        .map(|(prime, (e, witness))| {
            let norm = coeff_norm(d.poly(), &Place::Finite(prime.clone()))?;
            Ok(PlaceMaximum {
                max_lambda: LogQ::prime_power(&prime, i64::from(e)),
                norm_correction: LogQ::of(norm)?,
                witness,
                prime,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let certified = places.iter().all(|m| m.max_lambda.is_zero());
    Ok(IntegralityReport { places, certified })
}
