//! Heuristic search for the exceptional translates: affine hyperplanes
//! `a·e = c` in exponent space on which the gcd ratio stays large.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::gcd::GcdRecord;

pub const DEFAULT_THRESHOLD: f64 = 0.25;
pub const DEFAULT_BOUND: u32 = 3;
/// Fewest high-ratio records a hyperplane must capture to be reported.
pub const MIN_SUPPORT: usize = 3;

const MAX_NORMALS: usize = 1 << 20;

/// `{e : a·e = c}` with `gcd(a) = 1` and the first nonzero entry of `a` positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineHyperplane {
    normal: Vec<i64>,
    offset: i64,
}

impl AffineHyperplane {
    pub fn new(normal: Vec<i64>, offset: i64) -> Result<Self> {
        let g = normal.iter().fold(0i64, |g, a| g.gcd(a));
        if g != 1 {
            return Err(Error::Invalid(
                "normal must be nonzero with coprime entries".into(),
            ));
        }
        if normal.iter().find(|a| **a != 0).is_some_and(|a| *a < 0) {
            return Err(Error::Invalid(
                "first nonzero normal entry must be positive".into(),
            ));
        }
        Ok(AffineHyperplane { normal, offset })
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        e.len() == self.normal.len() && dot(&self.normal, e) == self.offset
    }

    /// `u^a = const`, the monomial relation on Γ the hyperplane encodes.
    pub fn relation(&self) -> String {
        let mut s = String::from("u^(");
        for (i, a) in self.normal.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{a}");
        }
        s.push_str(") = const");
        s
    }
}

impl fmt::Display for AffineHyperplane {
    /// `e1 - 2*e2 = 0`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.normal.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 { "-" } else { "+" };
            match (first, a < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, _) => write!(f, " {sign} ")?,
            }
            if a.abs() != 1 {
                write!(f, "{}*", a.abs())?;
            }
            write!(f, "e{}", i + 1)?;
            first = false;
        }
        write!(f, " = {}", self.offset)
    }
}

fn dot(a: &[i64], e: &[i64]) -> i64 {
    a.iter().zip(e).map(|(x, y)| x * y).sum()
}

/// One greedy round's pick.
#[derive(Clone, Debug, PartialEq)]
pub struct Detection {
    pub hyperplane: AffineHyperplane,
    /// High-ratio records first captured in this round.
    pub captured: usize,
    /// All records lying on the hyperplane, whatever their ratio.
    pub on_hyperplane: usize,
    pub min_captured_ratio: f64,
    pub max_captured_ratio: f64,
}

/// Two detected hyperplanes and the records on both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub first: usize,
    pub second: usize,
    pub records: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionReport {
    pub threshold: f64,
    pub bound: u32,
    pub detected: Vec<Detection>,
    pub intersections: Vec<Intersection>,
    /// Records on none of the detected hyperplanes, in input order.
    pub residual: Vec<GcdRecord>,
    /// High-ratio records left uncaptured when the loop stopped.
    pub uncaptured_high: usize,
}

impl DetectionReport {
    pub fn hyperplanes(&self) -> Vec<AffineHyperplane> {
        self.detected.iter().map(|d| d.hyperplane.clone()).collect()
    }

    pub fn max_residual_ratio(&self) -> f64 {
        self.residual.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }
}

/// Canonical primitive normals with `‖a‖_∞ ≤ bound`, in lexicographic order.
pub fn candidate_normals(r: usize, bound: u32) -> Result<Vec<Vec<i64>>> {
    let b = i64::from(bound);
    let side = (2 * b + 1) as usize;
    let total = side
        .checked_pow(r as u32)
        .filter(|t| *t <= MAX_NORMALS)
        .ok_or_else(|| Error::Resource("too many candidate normals".into()))?;
    let mut out = Vec::new();
    let mut a = alloc::vec![-b; r];
    for _ in 0..total {
        if AffineHyperplane::new(a.clone(), 0).is_ok() {
            out.push(a.clone());
        }
        for c in a.iter_mut().rev() {
            if *c < b {
                *c += 1;
                break;
            }
            *c = -b;
        }
    }
    Ok(out)
}

/// Greedy detection of hyperplanes rich in records with `ratio ≥ θ`.
///
/// Each round scores every candidate normal against the still-uncaptured
/// high-ratio records and takes the `(a, c)` capturing most of them, ties
/// going to the lexicographically smallest. Rounds stop when the best
/// capture falls below [`MIN_SUPPORT`] or nothing is left.
pub fn detect_translates<E: Executor>(
    records: &[GcdRecord],
    threshold: f64,
    bound: u32,
    exec: &E,
) -> Result<DetectionReport> {
    let first = records.first().ok_or(Error::Empty)?;
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Invalid("threshold must lie in (0, 1)".into()));
    }
    if bound == 0 {
        return Err(Error::Invalid("coefficient bound must be positive".into()));
    }
    let r = first.e.len();
    if let Some(bad) = records.iter().find(|rec| rec.e.len() != r) {
        return Err(Error::Arity {
            expected: r,
            got: bad.e.len(),
        });
    }
    let normals = candidate_normals(r, bound)?;
    let mut pending: Vec<&GcdRecord> = records.iter().filter(|x| x.ratio >= threshold).collect();
    let mut detected = Vec::new();

    while !pending.is_empty() {
        let scores = exec.map(&normals, |a| {
            let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
            for rec in &pending {
                *counts.entry(dot(a, &rec.e)).or_default() += 1;
            }
            // the smallest c among the maxima
            counts.into_iter().fold(
                (0usize, 0i64),
                |best, (c, n)| if n > best.0 { (n, c) } else { best },
            )
        });
        let mut best: Option<(usize, usize, i64)> = None;
        for (i, &(n, c)) in scores.iter().enumerate() {
            if best.is_none_or(|(m, _, _)| n > m) {
                best = Some((n, i, c));
            }
        }
        let Some((count, i, c)) = best else { break };
        if count < MIN_SUPPORT {
            break;
        }
        let h = AffineHyperplane::new(normals[i].clone(), c)?;
        let (hit, rest): (Vec<&GcdRecord>, Vec<&GcdRecord>) =
            pending.into_iter().partition(|rec| h.contains(&rec.e));
        pending = rest;
        let ratios = hit.iter().map(|x| x.ratio);
        detected.push(Detection {
            captured: hit.len(),
            on_hyperplane: records.iter().filter(|x| h.contains(&x.e)).count(),
            min_captured_ratio: ratios.clone().fold(f64::INFINITY, f64::min),
            max_captured_ratio: ratios.fold(0.0, f64::max),
            hyperplane: h,
        });
    }

    let hyperplanes: Vec<AffineHyperplane> =
        detected.iter().map(|d| d.hyperplane.clone()).collect();
    let mut intersections = Vec::new();
    for i in 0..hyperplanes.len() {
        for j in i + 1..hyperplanes.len() {
            let n = records
                .iter()
                .filter(|x| hyperplanes[i].contains(&x.e) && hyperplanes[j].contains(&x.e))
                .count();
            intersections.push(Intersection {
                first: i,
                second: j,
                records: n,
            });
        }
    }
    Ok(DetectionReport {
        threshold,
        bound,
        residual: filter_off(records, &hyperplanes),
        uncaptured_high: pending.len(),
        detected,
        intersections,
    })
}

/// The records lying on none of `hyperplanes`, order preserved.
pub fn filter_off(records: &[GcdRecord], hyperplanes: &[AffineHyperplane]) -> Vec<GcdRecord> {
    records
        .iter()
        .filter(|x| !hyperplanes.iter().any(|h| h.contains(&x.e)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{LogQ, Rational};
    use crate::exec::Sequential;
    use crate::gcd::{scan, GroupGamma, SampleBox};
    use crate::heights::PlaceSet;
    use crate::poly::MultiPoly;

    fn rec(e: &[i64], ratio: f64) -> GcdRecord {
        GcdRecord {
            index: 0,
            e: e.to_vec(),
            torsion: Vec::new(),
            u: Vec::new(),
            hmax: LogQ::zero(),
            gcdlog: LogQ::zero(),
            ratio,
            flag: None,
        }
    }

    fn records(g: &str, b: u32) -> Vec<GcdRecord> {
        let vars = ["x".into(), "y".into()];
        let q = |n| Rational::from_ratio(n, 1);
        let gamma = GroupGamma::generated_by(alloc::vec![
            alloc::vec![q(2), q(1)],
            alloc::vec![q(1), q(2)]
        ])
        .unwrap();
        scan(
            &MultiPoly::parse("x - 1", &vars).unwrap(),
            &MultiPoly::parse(g, &vars).unwrap(),
            &gamma,
            &SampleBox::new(b),
            &PlaceSet::from_u64s(&[2]).unwrap(),
            &Sequential,
        )
        .unwrap()
        .records
    }

    #[test]
    fn hyperplane_canonical_form() {
        assert!(AffineHyperplane::new(alloc::vec![2, -4], 0).is_err());
        assert!(AffineHyperplane::new(alloc::vec![-1, 1], 0).is_err());
        assert!(AffineHyperplane::new(alloc::vec![0, 0], 0).is_err());
        let h = AffineHyperplane::new(alloc::vec![2, -1], 0).unwrap();
        assert_eq!(alloc::format!("{h}"), "2*e1 - e2 = 0");
        assert_eq!(h.relation(), "u^(2,-1) = const");
        let h = AffineHyperplane::new(alloc::vec![0, 1], -3).unwrap();
        assert_eq!(alloc::format!("{h}"), "e2 = -3");
    }

    #[test]
    fn normals_are_canonical_and_sorted() {
        let n = candidate_normals(2, 1).unwrap();
        assert_eq!(n, [[0, 1], [1, -1], [1, 0], [1, 1]]);
    }

    #[test]
    fn finds_the_diagonal() {
        let recs = records("y - 1", 8);
        let rep = detect_translates(&recs, 0.5, 2, &Sequential).unwrap();
        let hs = rep.hyperplanes();
        let diag = AffineHyperplane::new(alloc::vec![1, -1], 0).unwrap();
        assert!(hs.contains(&diag));
        // the axes u2 = 1 and u1 = 1 carry the same ratios and win the tie
        assert_eq!(hs[0], AffineHyperplane::new(alloc::vec![0, 1], 0).unwrap());
        assert_eq!(hs[1], diag);
        for d in &rep.detected {
            assert!(d.captured >= MIN_SUPPORT);
        }
    }

    #[test]
    fn finds_the_parabola_translate() {
        // f = x - 1, g = y - 1 restricted to e = (a, 2a): ratio → 1/2
        let recs = records("y - 1", 8);
        let rep = detect_translates(&recs, 0.4, 2, &Sequential).unwrap();
        assert!(rep
            .hyperplanes()
            .contains(&AffineHyperplane::new(alloc::vec![2, -1], 0).unwrap()));
    }

    #[test]
    fn zero_ratios_detect_nothing() {
        let recs: Vec<GcdRecord> = (0..10).map(|i| rec(&[i, 0], 0.0)).collect();
        let rep = detect_translates(&recs, 0.25, 3, &Sequential).unwrap();
        assert!(rep.detected.is_empty());
        assert_eq!(rep.residual, recs);
        assert_eq!(
            detect_translates(&[], 0.25, 3, &Sequential),
            Err(Error::Empty)
        );
    }

    #[test]
    fn filtering() {
        let diag = AffineHyperplane::new(alloc::vec![1, -1], 0).unwrap();
        let on: Vec<GcdRecord> = (1..5).map(|i| rec(&[i, i], 0.9)).collect();
        assert!(filter_off(&on, core::slice::from_ref(&diag)).is_empty());
        assert_eq!(filter_off(&on, &[]), on);
        let mixed = [rec(&[1, 2], 0.1), rec(&[2, 2], 0.9), rec(&[3, 1], 0.2)];
        let rest = filter_off(&mixed, &[diag]);
        assert_eq!(rest, [mixed[0].clone(), mixed[2].clone()]);
    }
}
