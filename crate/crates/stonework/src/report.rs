//! Versioned JSON reports.

use serde::Serialize;
use serde_json::Value;
use stonework_core::audit::{tally, Check};
use stonework_core::finset::FinSet;
use stonework_core::linalg::Matrix;
use stonework_core::scalar::Scalar;

use crate::config::RunConfig;

pub const REPORT_SCHEMA: &str = "stonework/report/1";
pub const TREE_SCHEMA: &str = "stonework/tree/1";

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            name: c.name.clone(),
            anchor: c.anchor.clone(),
            status: c.status.as_str(),
            depth: c.depth,
            detail: c.detail.clone(),
            counterexample: c.counterexample.clone(),
        }
    }
}

/// The checks of one suite with any data it produced.
#[derive(Clone, Debug)]
pub struct Suite {
    pub name: String,
    pub anchor: &'static str,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl Suite {
    pub fn new(name: &str, anchor: &'static str) -> Self {
        Suite { name: name.to_string(), anchor, checks: Vec::new(), data: Value::Null }
    }

    pub fn failures(&self) -> usize {
        tally(&self.checks).1
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRecord {
    pub name: String,
    pub anchor: &'static str,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    #[serde(rename = "open-evidence")]
    pub open: usize,
}

impl Summary {
    pub fn of(suites: &[Suite]) -> Self {
        let all: Vec<Check> = suites.iter().flat_map(|s| s.checks.iter().cloned()).collect();
        let (pass, fail, open) = tally(&all);
        Summary { pass, fail, open }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config: RunConfig,
    pub suites: Vec<SuiteRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: &RunConfig, suites: &[Suite]) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            config: config.clone(),
            suites: suites.iter().map(suite_record).collect(),
            summary: Summary::of(suites),
        }
    }
}

pub fn suite_record(s: &Suite) -> SuiteRecord {
    SuiteRecord { name: s.name.clone(), anchor: s.anchor, checks: s.checks.iter().map(CheckRecord::from).collect(), data: s.data.clone() }
}

/// Sorted integer array.
pub fn finset_json(k: &FinSet) -> Value {
    Value::from(k.elems().to_vec())
}

/// Dense row-major array of `[re, im]` pairs.
pub fn matrix_json<S: Scalar>(m: &Matrix<S>) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::from(
                (0..m.cols())
                    .map(|j| {
                        let (re, im) = m.get(i, j).parts();
                        Value::from(vec![re, im])
                    })
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Value::from(rows)
}
