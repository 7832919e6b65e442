//! Check records shared by the verification suites.

use alloc::string::{String, ToString};
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Holds on every finite window checked; the statement itself is about
    /// infinite objects or is open.
    OpenEvidence,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::OpenEvidence => "open-evidence",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verified (or refuted) statement.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    /// Stable identifier of the mathematical statement being checked.
    pub anchor: String,
    pub status: Status,
    /// Window depth at which the check is exact, when it is window-bounded.
    pub depth: Option<u32>,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn new(name: &str, anchor: &str, status: Status) -> Self {
        Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status,
            depth: None,
            detail: String::new(),
            counterexample: None,
        }
    }

    pub fn pass(name: &str, anchor: &str) -> Self {
        Self::new(name, anchor, Status::Pass)
    }

    pub fn open(name: &str, anchor: &str, detail: &str) -> Self {
        Self::new(name, anchor, Status::OpenEvidence).with_detail(detail)
    }

    /// Pass when `cex` is `None`, otherwise a failure carrying it.
    pub fn from_counterexample(name: &str, anchor: &str, cex: Option<String>) -> Self {
        let status = if cex.is_some() { Status::Fail } else { Status::Pass };
        Check { counterexample: cex, ..Self::new(name, anchor, status) }
    }

    /// A failure caused by an error raised while checking.
    pub fn errored(name: &str, anchor: &str, err: &dyn fmt::Display) -> Self {
        Self::new(name, anchor, Status::Fail).with_detail(&alloc::format!("error: {err}"))
    }

    pub fn at_depth(mut self, depth: u32) -> Self {
        self.depth = Some(depth);
        self
    }

    pub fn with_detail(mut self, detail: &str) -> Self {
        self.detail = detail.to_string();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Number of records with each status, in the order pass, fail, open.
pub fn tally(checks: &[Check]) -> (usize, usize, usize) {
    checks.iter().fold((0, 0, 0), |(p, f, o), c| match c.status {
        Status::Pass => (p + 1, f, o),
        Status::Fail => (p, f + 1, o),
        Status::OpenEvidence => (p, f, o + 1),
    })
}
