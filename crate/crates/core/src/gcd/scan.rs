use alloc::vec::Vec;

use super::cz_counting_values;
use super::group::{GroupGamma, SampleBox};
use crate::arith::{LogQ, Rational};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::heights::{height_rational, PlaceSet};
use crate::poly::MultiPoly;

const CHUNK: u64 = 256;
/// Largest box a single scan will sweep.
pub const MAX_BOX: u64 = 1 << 26;

/// Why a box element carries a flag in the scan output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkipReason {
    /// `hmax = 0` (a torsion point); kept with ratio 0.
    HmaxZero,
    /// `f(u) = g(u) = 0`; dropped.
    CommonZero,
}

impl SkipReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::HmaxZero => "hmax_zero",
            SkipReason::CommonZero => "common_zero",
        }
    }
}

/// One sample of the gcd experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct GcdRecord {
    /// Position in the box enumeration.
    pub index: u64,
    pub e: Vec<i64>,
    pub torsion: Vec<bool>,
    pub u: Vec<Rational>,
    /// `max_i h(u_i)`.
    pub hmax: LogQ,
    /// The S-stripped gcd of `f(u)` and `g(u)`.
    pub gcdlog: LogQ,
    /// `gcdlog / hmax`, or 0 when `hmax = 0`.
    pub ratio: f64,
    pub flag: Option<SkipReason>,
}

/// A box element where `f` and `g` both vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedPoint {
    pub index: u64,
    pub e: Vec<i64>,
    pub torsion: Vec<bool>,
    pub u: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanSummary {
    pub records: usize,
    pub skipped: usize,
    pub hmax_zero: usize,
    pub max_ratio: f64,
    /// Exponent vector of the first record attaining `max_ratio`.
    pub argmax: Option<Vec<i64>>,
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub records: Vec<GcdRecord>,
    pub skipped: Vec<SkippedPoint>,
    /// `f(0) = g(0) = 0`, the situation the gcd bound excludes; reported only.
    pub both_vanish_at_origin: bool,
    pub summary: ScanSummary,
}

/// Nearest-rank quantile of an ascending slice.
pub(crate) fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = crate::math::ceil(q * sorted.len() as f64) as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

enum Row {
    Record(GcdRecord),
    Skipped(SkippedPoint),
}

/// Sweeps `Γ ∩ box`, recording `cz_counting` against `max_i h(u_i)`.
///
/// Refuses to run unless `f` and `g` are coprime and every generator of Γ
/// is an S-unit. Output order is the box order regardless of `exec`.
pub fn scan<E: Executor>(
    f: &MultiPoly,
    g: &MultiPoly,
    gamma: &GroupGamma,
    sample: &SampleBox,
    s: &PlaceSet,
    exec: &E,
) -> Result<ScanResult> {
    for p in [f, g] {
        if p.nvars() != gamma.dim() {
            return Err(Error::Arity {
                expected: gamma.dim(),
                got: p.nvars(),
            });
        }
    }
    crate::poly::require_coprime(f, g)?;
    gamma.check_s_units(s)?;
    let (r, t) = (gamma.rank(), gamma.torsion_len());
    let total = sample
        .size(r, t)
        .filter(|n| *n <= MAX_BOX)
        .ok_or_else(|| Error::Resource("sample box exceeds 2^26 elements".into()))?;
    let origin = alloc::vec![Rational::zero(); gamma.dim()];
    let both_vanish_at_origin = f.evaluate(&origin)?.is_zero() && g.evaluate(&origin)?.is_zero();

    let chunks: Vec<(u64, u64)> = (0..total.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(total)))
        .collect();
    let parts = exec.map(&chunks, |&(lo, hi)| -> Result<Vec<Row>> {
        (lo..hi)
            .map(|index| {
                let (e, torsion) = sample.decode(index, r, t);
                let u = gamma.element(&e, &torsion)?;
                let a = f.evaluate(&u)?;
                let b = g.evaluate(&u)?;
                if a.is_zero() && b.is_zero() {
                    return Ok(Row::Skipped(SkippedPoint {
                        index,
                        e,
                        torsion,
                        u,
                    }));
                }
                let gcdlog = cz_counting_values(&a, &b, s)?;
                let hmax = u.iter().map(height_rational).max().unwrap_or_default();
                let (ratio, flag) = if hmax.is_zero() {
                    (0.0, Some(SkipReason::HmaxZero))
                } else {
                    (gcdlog.value() / hmax.value(), None)
                };
                Ok(Row::Record(GcdRecord {
                    index,
                    e,
                    torsion,
                    u,
                    hmax,
                    gcdlog,
                    ratio,
                    flag,
                }))
            })
            .collect()
    });

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for part in parts {
        for row in part? {
            match row {
                Row::Record(rec) => records.push(rec),
                Row::Skipped(p) => skipped.push(p),
            }
        }
    }
    let summary = summarize(&records, skipped.len());
    Ok(ScanResult {
        records,
        skipped,
        both_vanish_at_origin,
        summary,
    })
}

fn summarize(records: &[GcdRecord], skipped: usize) -> ScanSummary {
    let mut ratios: Vec<f64> = records.iter().map(|r| r.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    let mut argmax: Option<&GcdRecord> = None;
    for rec in records {
        if argmax.is_none_or(|m| rec.ratio > m.ratio) {
            argmax = Some(rec);
        }
    }
    ScanSummary {
        records: records.len(),
        skipped,
        hmax_zero: records.iter().filter(|r| r.flag.is_some()).count(),
        max_ratio: argmax.map_or(0.0, |r| r.ratio),
        argmax: argmax.map(|r| r.e.clone()),
        p50: quantile(&ratios, 0.50),
        p90: quantile(&ratios, 0.90),
        p99: quantile(&ratios, 0.99),
    }
}
