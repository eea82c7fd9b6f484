//! CSV artifacts and human-readable summaries.
//!
//! Every CSV starts with a `#schema=1` comment line; columns are fixed per
//! artifact. Floats print in shortest round-trip form, so output is
//! byte-stable for a given config.

use std::fmt::Write as _;

use heightlab_core::detect::DetectionReport;
use heightlab_core::gamma::{BetaVerdict, GammaResult};
use heightlab_core::gcd::ScanResult;
use heightlab_core::heights::{IntegralityReport, LocalWeil, ProjPoint};
use heightlab_core::{LogQ, Place};

use crate::verify::CheckResult;

pub const SCHEMA: &str = "#schema=1";

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("writing to memory cannot fail");
    let body = String::from_utf8(bytes).expect("csv output is utf-8");
    format!("{SCHEMA}\n{body}")
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().from_writer(Vec::new())
}

fn row<I: IntoIterator<Item = String>>(w: &mut csv::Writer<Vec<u8>>, fields: I) {
    w.write_record(fields.into_iter().collect::<Vec<_>>())
        .expect("writing to memory cannot fail");
}

/// `e1..er, u1..un, hmax, gcdlog, ratio, skipped_reason`; skipped points
/// appear in box order with empty numeric fields.
pub fn scan_csv(result: &ScanResult, rank: usize, dim: usize) -> String {
    let mut w = writer();
    let mut header: Vec<String> = (1..=rank).map(|i| format!("e{i}")).collect();
    header.extend((1..=dim).map(|i| format!("u{i}")));
    header.extend(["hmax", "gcdlog", "ratio", "skipped_reason"].map(String::from));
    row(&mut w, header);
    let mut skipped = result.skipped.iter().peekable();
    for rec in &result.records {
        while let Some(s) = skipped.next_if(|s| s.index < rec.index) {
            row(&mut w, skipped_fields(s));
        }
        let mut f: Vec<String> = rec.e.iter().map(i64::to_string).collect();
        f.extend(rec.u.iter().map(|q| q.to_string()));
        f.push(rec.hmax.value().to_string());
        f.push(rec.gcdlog.value().to_string());
        f.push(rec.ratio.to_string());
        f.push(rec.flag.map_or("", |r| r.as_str()).into());
        row(&mut w, f);
    }
    for s in skipped {
        row(&mut w, skipped_fields(s));
    }
    finish(w)
}

fn skipped_fields(s: &heightlab_core::gcd::SkippedPoint) -> Vec<String> {
    let mut f: Vec<String> = s.e.iter().map(i64::to_string).collect();
    f.extend(s.u.iter().map(|q| q.to_string()));
    f.extend([
        String::new(),
        String::new(),
        String::new(),
        "common_zero".into(),
    ]);
    f
}

pub fn scan_summary(result: &ScanResult) -> String {
    let s = &result.summary;
    let mut out = String::new();
    let _ = writeln!(out, "records: {}", s.records);
    let _ = writeln!(out, "skipped (f = g = 0): {}", s.skipped);
    let _ = writeln!(out, "hmax = 0 (ratio set to 0): {}", s.hmax_zero);
    let argmax = s.argmax.as_ref().map_or("-".into(), |e| format!("{e:?}"));
    let _ = writeln!(out, "max ratio: {} at e = {argmax}", s.max_ratio);
    let _ = writeln!(
        out,
        "ratio quantiles: p50 {} p90 {} p99 {}",
        s.p50, s.p90, s.p99
    );
    if result.both_vanish_at_origin {
        let _ = writeln!(out, "note: f and g both vanish at the origin");
    }
    out
}

pub fn detection_csv(report: &DetectionReport) -> String {
    let mut w = writer();
    row(
        &mut w,
        [
            "round",
            "normal",
            "offset",
            "equation",
            "relation",
            "captured",
            "on_hyperplane",
            "min_ratio",
            "max_ratio",
        ]
        .map(String::from),
    );
    for (i, d) in report.detected.iter().enumerate() {
        let h = &d.hyperplane;
        let normal: Vec<String> = h.normal().iter().map(i64::to_string).collect();
        row(
            &mut w,
            [
                (i + 1).to_string(),
                normal.join(" "),
                h.offset().to_string(),
                h.to_string(),
                h.relation(),
                d.captured.to_string(),
                d.on_hyperplane.to_string(),
                d.min_captured_ratio.to_string(),
                d.max_captured_ratio.to_string(),
            ],
        );
    }
    finish(w)
}

pub fn detection_summary(scan: &ScanResult, report: &DetectionReport) -> String {
    let mut out = scan_summary(scan);
    let _ = writeln!(out, "theta = {}, A = {}", report.threshold, report.bound);
    if report.detected.is_empty() {
        let _ = writeln!(out, "no translates detected");
    }
    for (i, d) in report.detected.iter().enumerate() {
        let _ = writeln!(
            out,
            "translate {}: {}  ({}; {} high-ratio records, ratios {}..{})",
            i + 1,
            d.hyperplane.relation(),
            d.hyperplane,
            d.captured,
            d.min_captured_ratio,
            d.max_captured_ratio
        );
    }
    for x in report.intersections.iter().filter(|x| x.records > 0) {
        let _ = writeln!(
            out,
            "intersection of translates {} and {}: {} records",
            x.first + 1,
            x.second + 1,
            x.records
        );
    }
    let _ = writeln!(
        out,
        "residual: {} records, max ratio {}; uncaptured above theta: {}",
        report.residual.len(),
        report.max_residual_ratio(),
        report.uncaptured_high
    );
    out
}

/// `N, numerator, denominator, ratio`.
pub fn gamma_csv(result: &GammaResult) -> String {
    let mut w = writer();
    row(
        &mut w,
        ["N", "numerator", "denominator", "ratio"].map(String::from),
    );
    for r in &result.rows {
        row(
            &mut w,
            [
                r.level.to_string(),
                r.numerator.to_string(),
                r.denominator.to_string(),
                r.ratio.to_f64().to_string(),
            ],
        );
    }
    finish(w)
}

pub fn gamma_summary(n: u32, ell: u32, verdict: &BetaVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {n}, l = {ell}");
    let _ = writeln!(out, "gamma (grid max): {}", verdict.gamma);
    match &verdict.result.max_ell_multiples {
        Some(m) => {
            let _ = writeln!(out, "gamma (N multiple of l): {}", m.to_f64());
        }
        None => {
            let _ = writeln!(out, "gamma (N multiple of l): no such level in grid");
        }
    }
    let _ = writeln!(out, "bound (1/l)(1 + 1/(l*sqrt l)): {}", verdict.bound);
    let verdict_word = if verdict.holds { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "verdict: {verdict_word} (margin {})", verdict.margin);
    out
}

/// One point's local data, ready for the heights CSV.
pub struct PointTable {
    pub point: ProjPoint,
    pub places: Vec<LocalWeil>,
}

fn place_name(v: &Place) -> String {
    match v {
        Place::Archimedean => "inf".into(),
        Place::Finite(p) => p.value().to_string(),
    }
}

/// `point, place, lambda, m, N, h`: per place, lambda and its share of m
/// (places in S) or N (the rest); a closing `total` row carries the sums.
pub fn heights_csv(tables: &[PointTable]) -> String {
    let mut w = writer();
    row(
        &mut w,
        ["point", "place", "lambda", "m", "N", "h"].map(String::from),
    );
    for t in tables {
        let (mut m, mut n) = (LogQ::zero(), LogQ::zero());
        for lw in &t.places {
            let (dm, dn) = if lw.in_s {
                (lw.lambda.clone(), LogQ::zero())
            } else {
                (LogQ::zero(), lw.lambda.clone())
            };
            m = &m + &dm;
            n = &n + &dn;
            row(
                &mut w,
                [
                    t.point.to_string(),
                    place_name(&lw.place),
                    lw.lambda.value().to_string(),
                    dm.value().to_string(),
                    dn.value().to_string(),
                    lw.lambda.value().to_string(),
                ],
            );
        }
        let h = &m + &n;
        row(
            &mut w,
            [
                t.point.to_string(),
                "total".into(),
                String::new(),
                m.value().to_string(),
                n.value().to_string(),
                h.value().to_string(),
            ],
        );
    }
    finish(w)
}

pub fn integrality_summary(report: &IntegralityReport) -> String {
    let mut out = String::new();
    let word = if report.certified {
        "certified"
    } else {
        "not certified"
    };
    let _ = writeln!(out, "integrality: {word}");
    for pm in &report.places {
        let _ = writeln!(
            out,
            "  p = {}: max lambda {} (point #{}), coefficient norm correction {}",
            pm.prime.value(),
            pm.max_lambda.value(),
            pm.witness + 1,
            pm.norm_correction.value()
        );
    }
    out
}

/// `check, samples, failures, passed`.
pub fn verify_csv(checks: &[CheckResult]) -> String {
    let mut w = writer();
    row(
        &mut w,
        ["check", "samples", "failures", "passed"].map(String::from),
    );
    for c in checks {
        row(
            &mut w,
            [
                c.name.to_string(),
                c.samples.to_string(),
                c.failures.to_string(),
                c.passed().to_string(),
            ],
        );
    }
    finish(w)
}

pub fn verify_summary(checks: &[CheckResult]) -> String {
    let mut out = String::new();
    for c in checks {
        let word = if c.passed() { "PASS" } else { "FAIL" };
        let _ = write!(out, "{word} {} ({} samples", c.name, c.samples);
        if c.failures > 0 {
            let _ = write!(out, ", {} failures", c.failures);
        }
        out.push(')');
        if let Some(note) = &c.first_failure {
            let _ = write!(out, ": {note}");
        }
        out.push('\n');
    }
    out
}
