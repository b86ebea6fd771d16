//! Run reports and the command implementations behind the `heronion` binary.

mod commands;
pub mod schema;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use commands::{cmd_areas, cmd_expand, cmd_mobius, expand_matrix, AreasArgs, ExpandArgs, Format, MobiusArgs};
pub use verify::{alpha7_sets, cmd_verify, Alpha7Set, Suite, VerifyArgs};

/// Exit status for a passing run.
pub const EXIT_PASS: i32 = 0;
/// A check failed.
pub const EXIT_CHECK_FAILURE: i32 = 1;
/// Bad flags or an unsupported combination.
pub const EXIT_USAGE: i32 = 2;
/// A size or time guard tripped.
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// Optional checks never fail the run.
    pub optional: bool,
    /// Largest residual seen, when the check is numeric.
    pub residual: Option<f64>,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, pass: bool, residual: Option<f64>, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            optional: false,
            residual,
            detail: detail.into(),
        }
    }

    /// A check that could not run; counts as a failure.
    pub fn error(name: impl Into<String>, err: &Error) -> Self {
        CheckRecord::new(name, false, None, format!("error: {err}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// The command line, without the program name.
    pub command: Vec<String>,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub outputs: Vec<String>,
    /// Wall-clock seconds per suite item; only filled on request, since
    /// the rest of the report is reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        RunReport { command, seed, checks: Vec::new(), outputs: Vec::new(), timings: None, pass: true }
    }

    /// Sorts checks by name and recomputes `pass`.
    pub fn finish(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.pass = self.checks.iter().all(|c| c.optional || c.status != Status::Fail);
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILURE
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check followed by a verdict.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail if c.optional => "FAIL (optional)",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let res = c.residual.map(|r| format!(" residual={r:.3e}")).unwrap_or_default();
            out.push_str(&format!("{tag:<5} {}{res}  {}\n", c.name, c.detail));
        }
        let failed = self.checks.iter().filter(|c| !c.optional && c.status == Status::Fail).count();
        out.push_str(&format!(
            "seed {}: {} checks, {} failed -> {}\n",
            self.seed,
            self.checks.len(),
            failed,
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }
}

/// Exit status for an error that stopped a command.
pub fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::Parse(_) | Error::UnknownVariable(_) => EXIT_USAGE,
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        _ => EXIT_CHECK_FAILURE,
    }
}
