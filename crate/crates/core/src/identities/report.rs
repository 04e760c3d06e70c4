use std::fmt;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::qpoly::QPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Evaluated and recorded without asserting anything: conjectures, and
    /// readings of statements whose intended form is in doubt.
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED",
        })
    }
}

/// Both sides of the first disagreeing parameter tuple, in full.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub params: Value,
    pub lhs: QPoly,
    pub rhs: QPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    /// The parameter range covered.
    pub params: Value,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Number of parameter tuples evaluated.
    pub checked: usize,
    /// Parameters of every tuple where the two sides disagree.
    pub mismatches: Vec<Value>,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Copy with `elapsed_ms` zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> VerificationReport {
        VerificationReport {
            elapsed_ms: 0.0,
            ..self.clone()
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<8} {} {} ({} checked, {} mismatched, {:.1} ms)",
            self.status.to_string(),
            self.identity,
            self.params,
            self.checked,
            self.mismatches.len(),
            self.elapsed_ms
        )?;
        if let Some(w) = &self.witness {
            write!(
                f,
                "\n         witness {}: lhs = {}; rhs = {}",
                w.params, w.lhs, w.rhs
            )?;
        }
        Ok(())
    }
}

/// Outcome of one parameter tuple.
pub(crate) struct Check {
    pub params: Value,
    pub lhs: QPoly,
    pub rhs: QPoly,
    pub holds: bool,
}

impl Check {
    /// Holds iff the two sides are equal.
    pub fn equality(params: Value, lhs: QPoly, rhs: QPoly) -> Check {
        Check {
            holds: lhs == rhs,
            params,
            lhs,
            rhs,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Assert,
    Report,
}

/// Runs `check` over `tuples` in parallel and folds the outcomes, in tuple
/// order, into one report.
pub(crate) fn run<T, F>(
    identity: &str,
    params: Value,
    mode: Mode,
    tuples: Vec<T>,
    check: F,
) -> VerificationReport
where
    T: Send,
    F: Fn(T) -> Check + Sync + Send,
{
    let start = Instant::now();
    let outcomes: Vec<Check> = tuples.into_par_iter().map(check).collect();
    finish(identity, params, mode, outcomes, start)
}

pub(crate) fn finish(
    identity: &str,
    params: Value,
    mode: Mode,
    outcomes: Vec<Check>,
    start: Instant,
) -> VerificationReport {
    let checked = outcomes.len();
    let mut witness = None;
    let mut mismatches = Vec::new();
    for c in outcomes {
        if c.holds {
            continue;
        }
        if witness.is_none() {
            witness = Some(Witness {
                params: c.params.clone(),
                lhs: c.lhs,
                rhs: c.rhs,
            });
        }
        mismatches.push(c.params);
    }
    let status = match (mode, mismatches.is_empty()) {
        (Mode::Report, _) => Status::Reported,
        (Mode::Assert, true) => Status::Pass,
        (Mode::Assert, false) => Status::Fail,
    };
    VerificationReport {
        identity: identity.to_string(),
        params,
        status,
        witness,
        checked,
        mismatches,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// One CSV row per report: identity, params (JSON), status, checked,
/// mismatched, elapsed_ms.
pub fn write_csv<W: Write>(reports: &[VerificationReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "identity",
        "params",
        "status",
        "checked",
        "mismatched",
        "elapsed_ms",
    ])?;
    for r in reports {
        w.write_record([
            r.identity.clone(),
            r.params.to_string(),
            format!("{:?}", r.status).to_lowercase(),
            r.checked.to_string(),
            r.mismatches.len().to_string(),
            format!("{:.3}", r.elapsed_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}
