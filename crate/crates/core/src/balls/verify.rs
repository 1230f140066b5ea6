use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::RealEnclosure;
use crate::boundengine::json::{interval_json, lower_string};
use crate::boundengine::{bound, BoundMode, BoundReport};
use crate::error::{Error, Result};
use crate::heights::SubspaceSpec;
use crate::liematrix::KPoint;

/// Highest working precision tried before giving up.
pub const MAX_PRECISION: u32 = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyStatus {
    /// The bound is below the computed distance.
    Ok,
    /// The bound exceeds the computed distance: a correctness failure.
    Violated,
    /// Membership of `u` in `W`, or the comparison, could not be decided
    /// up to the precision cap.
    Inconclusive,
}

impl VerifyStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerifyStatus::Ok => "ok",
            VerifyStatus::Violated => "violated",
            VerifyStatus::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of comparing a bound against the computed distance.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub id: String,
    pub mode: BoundMode,
    pub status: VerifyStatus,
    pub precision: u32,
    pub report: Option<BoundReport>,
    pub message: Option<String>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.status == VerifyStatus::Ok
    }

    pub fn actual_log_d(&self) -> Option<&RealEnclosure> {
        self.report.as_ref().map(|r| &r.log_distance)
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "id": self.id,
            "mode": self.mode.to_string(),
            "status": self.status.as_str(),
            "ok": self.ok(),
            "precision": self.precision,
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        });
        if let Some(r) = &self.report {
            out["bound"] = json!(lower_string(&r.log_lower));
            out["actual_log_d"] = interval_json(&r.log_distance);
        }
        if let Some(m) = &self.message {
            out["message"] = json!(m);
        }
        out
    }
}

/// Evaluates the bound and the actual distance, doubling the precision
/// from `prec` up to [`MAX_PRECISION`] while either is undecided.
pub fn verify_instance(id: &str, kp: &KPoint, w: &SubspaceSpec, mode: BoundMode, search_budget: u32, prec: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut p = prec.max(32);
    loop {
        let outcome = bound(kp, w, mode, search_budget, p);
        let next = p.saturating_mul(2);
        let (status, report, message) = match outcome {
            Ok(r) => {
                let actual = &r.log_distance;
                if r.certified() <= actual.lower() {
                    (VerifyStatus::Ok, Some(r), None)
                } else if r.certified() > actual.upper() {
                    (VerifyStatus::Violated, Some(r), None)
                } else if next <= MAX_PRECISION {
                    p = next;
                    continue;
                } else {
                    (VerifyStatus::Inconclusive, Some(r), Some("bound and distance overlap at the precision cap".into()))
                }
            }
            Err(Error::Precision { what, .. }) => {
                if next <= MAX_PRECISION {
                    p = next;
                    continue;
                }
                (VerifyStatus::Inconclusive, None, Some(what))
            }
            Err(e) => return Err(e),
        };
        return Ok(VerifyReport { id: id.to_string(), mode, status, precision: p, report, message, elapsed: start.elapsed() });
    }
}

/// A verification job.
pub struct VerifyJob {
    pub id: String,
    pub kp: KPoint,
    pub w: SubspaceSpec,
}

/// Runs [`verify_instance`] over the jobs in parallel; results keep the
/// input order.
pub fn verify_many(jobs: &[VerifyJob], mode: BoundMode, search_budget: u32, prec: u32) -> Vec<Result<VerifyReport>> {
    jobs.par_iter().map(|j| verify_instance(&j.id, &j.kp, &j.w, mode, search_budget, prec)).collect()
}
