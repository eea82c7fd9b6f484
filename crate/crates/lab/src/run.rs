use heightlab_core::detect::detect_translates;
use heightlab_core::gamma::verify_beta_bound;
use heightlab_core::gcd::{scan, SampleBox, ScanResult};
use heightlab_core::heights::{check_integral_set, local_weil_table};
use heightlab_core::Executor;

use crate::config::{HeightsJob, Job, ScanJob};
use crate::error::LabError;
use crate::report::{self, PointTable};
use crate::verify::run_suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// A checked invariant or bound failed.
    InvariantFailure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::InvariantFailure => 1,
        }
    }
}

/// What a run produces: the CSV artifact and a summary for people.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub csv: String,
    pub summary: String,
    pub status: Status,
}

fn run_scan<E: Executor>(job: &ScanJob, exec: &E) -> Result<ScanResult, LabError> {
    Ok(scan(
        &job.f,
        &job.g,
        &job.gamma,
        &SampleBox::new(job.bound),
        &job.s,
        exec,
    )?)
}

pub fn run<E: Executor>(job: &Job, exec: &E) -> Result<Outcome, LabError> {
    match job {
        Job::Scan(j) => {
            let result = run_scan(j, exec)?;
            Ok(Outcome {
                csv: report::scan_csv(&result, j.gamma.rank(), j.gamma.dim()),
                summary: report::scan_summary(&result),
                status: Status::Pass,
            })
        }
        Job::Detect { scan, theta, bound } => {
            let result = run_scan(scan, exec)?;
            let det = detect_translates(&result.records, *theta, *bound, exec)?;
            Ok(Outcome {
                csv: report::detection_csv(&det),
                summary: report::detection_summary(&result, &det),
                status: Status::Pass,
            })
        }
        Job::Gamma(j) => {
            let verdict = verify_beta_bound(&j.model, j.ell, &j.grid, exec)?;
            Ok(Outcome {
                csv: report::gamma_csv(&verdict.result),
                summary: report::gamma_summary(j.model.n(), j.ell, &verdict),
                status: if verdict.holds {
                    Status::Pass
                } else {
                    Status::InvariantFailure
                },
            })
        }
        Job::Heights(j) => run_heights(j),
        Job::Verify(j) => {
            let checks = run_suite(j.seed, j.samples, exec);
            let ok = checks.iter().all(|c| c.passed());
            Ok(Outcome {
                csv: report::verify_csv(&checks),
                summary: report::verify_summary(&checks),
                status: if ok {
                    Status::Pass
                } else {
                    Status::InvariantFailure
                },
            })
        }
    }
}

fn run_heights(job: &HeightsJob) -> Result<Outcome, LabError> {
    let tables = job
        .points
        .iter()
        .map(|p| {
            Ok(PointTable {
                point: p.clone(),
                places: local_weil_table(&job.y, &job.s, p)?,
            })
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    let mut summary = format!("{} points, S = {}\n", tables.len(), job.s);
    if let Some(d) = &job.divisor {
        summary.push_str(&report::integrality_summary(&check_integral_set(
            &job.points,
            d,
            &job.s,
        )?));
    }
    Ok(Outcome {
        csv: report::heights_csv(&tables),
        summary,
        status: Status::Pass,
    })
}
