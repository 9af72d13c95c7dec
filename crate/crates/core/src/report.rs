//! Check reports: the single-row records the verification suites emit and
//! the command line assembles into documents.

use serde::{Deserialize, Serialize};

/// Claim identifiers the suites may attach to a check. Reports carry them so
/// that separate runs can be merged and diffed claim by claim.
pub const KNOWN_ANCHORS: [&str; 15] = [
    "Cont1",
    "Cont2",
    "DiamondNew",
    "Eneg",
    "FAP5",
    "L1",
    "L2",
    "Lgiltza",
    "Lrefinado",
    "Lsupnorm",
    "Pminpreorder",
    "Simplex",
    "SvenEx1",
    "mult1",
    "possibilityQPM",
];

pub fn is_known_anchor(anchor: &str) -> bool {
    KNOWN_ANCHORS.contains(&anchor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

pub fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// One verified claim. `observed` holds labeled measurements as ordered
/// pairs so the serialized form is stable byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observed: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, name: impl Into<String>, status: Status) -> Self {
        CheckReport {
            suite: suite.into(),
            name: name.into(),
            anchor: None,
            status,
            observed: Vec::new(),
            expected: None,
            tolerance: None,
            seed: None,
        }
    }

    pub fn with_anchor(mut self, anchor: &str) -> Self {
        debug_assert!(is_known_anchor(anchor), "unknown anchor {anchor}");
        self.anchor = Some(anchor.to_owned());
        self
    }

    pub fn with_observed(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.observed.push((key.into(), value.into()));
        self
    }

    pub fn with_expected(mut self, expected: impl Into<String>) -> Self {
        self.expected = Some(expected.into());
        self
    }

    pub fn with_tolerance(mut self, tolerance: impl Into<String>) -> Self {
        self.tolerance = Some(tolerance.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Canonical document order: by suite, then by check name.
pub fn sort_checks(checks: &mut [CheckReport]) {
    checks.sort_by(|a, b| (a.suite.as_str(), a.name.as_str()).cmp(&(b.suite.as_str(), b.name.as_str())));
}
