//! Batch driver for `stonework-core`: runs verification suites and writes
//! versioned JSON reports.

pub mod config;
pub mod report;
pub mod rng;
pub mod suites;
pub mod tree;

use stonework_core::audit::Check;

use config::{Command, RunConfig};
use report::{Report, Summary};

/// Serialized document and its summary.
pub struct Outcome {
    pub json: String,
    pub summary: Summary,
}

impl Outcome {
    /// Process exit status: 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let mut suites = suites::run_suites(config);
    let json = if config.command == Command::Reparam {
        match suites::reparam::build(config.depth).and_then(|t| tree::manifest(config, &t, &suites)) {
            Ok(m) => serde_json::to_string_pretty(&m),
            Err(e) => {
                suites[0].checks.push(Check::errored("tree-manifest", "involution-tower/a", &e));
                serde_json::to_string_pretty(&Report::new(config, &suites))
            }
        }
    } else {
        serde_json::to_string_pretty(&Report::new(config, &suites))
    };
    Outcome { json: json.expect("report types serialize") + "\n", summary: Summary::of(&suites) }
}
