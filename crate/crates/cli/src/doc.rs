//! Report documents: assembly, merging, and the text rendering.
//!
//! The JSON document is the machine contract. Checks are sorted by
//! (suite, name) before emission so parallel or repeated runs serialize to
//! identical bytes; wall-clock timing lives in its own top-level map, outside
//! the deterministic region.

use ordtopia_core::report::{sort_checks, CheckReport, Status};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq)]
pub enum DocError {
    #[error("duplicate check identity: suite {suite:?}, name {name:?}")]
    DuplicateCheck { suite: String, name: String },
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    SchemaMismatch(u32),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn tally(checks: &[CheckReport]) -> Summary {
        let mut s = Summary::default();
        for c in checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skip => s.skip += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema: u32,
    pub summary: Summary,
    pub checks: Vec<CheckReport>,
    /// Suite id to elapsed milliseconds. Informational; merge adds entries.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timing: BTreeMap<String, u64>,
}

impl Document {
    /// 0 when every check passed, 1 when any failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }
}

/// Sorts, rejects duplicate (suite, name) identities, and tallies.
pub fn assemble(
    mut checks: Vec<CheckReport>,
    timing: BTreeMap<String, u64>,
) -> Result<Document, DocError> {
    sort_checks(&mut checks);
    for pair in checks.windows(2) {
        if pair[0].suite == pair[1].suite && pair[0].name == pair[1].name {
            return Err(DocError::DuplicateCheck {
                suite: pair[1].suite.clone(),
                name: pair[1].name.clone(),
            });
        }
    }
    let summary = Summary::tally(&checks);
    Ok(Document { schema: SCHEMA_VERSION, summary, checks, timing })
}

/// Concatenates check arrays and re-tallies. Timing maps are summed per
/// suite. An empty input list yields an empty document.
pub fn merge(docs: Vec<Document>) -> Result<Document, DocError> {
    let mut checks = Vec::new();
    let mut timing = BTreeMap::new();
    for doc in docs {
        if doc.schema != SCHEMA_VERSION {
            return Err(DocError::SchemaMismatch(doc.schema));
        }
        checks.extend(doc.checks);
        for (suite, ms) in doc.timing {
            *timing.entry(suite).or_insert(0) += ms;
        }
    }
    assemble(checks, timing)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skip => "skip",
    }
}

/// Human summary table; failing rows carry their measurements inline.
pub fn render_text(doc: &Document) -> String {
    let suite_w = doc.checks.iter().map(|c| c.suite.len()).max().unwrap_or(5).max(5);
    let name_w = doc.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    let _ = writeln!(out, "{:<6} {:<suite_w$} {:<name_w$} anchor", "status", "suite", "name");
    for c in &doc.checks {
        let anchor = c.anchor.as_deref().unwrap_or("-");
        let _ = writeln!(
            out,
            "{:<6} {:<suite_w$} {:<name_w$} {anchor}",
            status_word(c.status),
            c.suite,
            c.name,
        );
        if c.status == Status::Fail {
            for (label, value) in &c.observed {
                let _ = writeln!(out, "       observed {label} = {value}");
            }
            if let Some(e) = &c.expected {
                let _ = writeln!(out, "       expected {e}");
            }
            if let Some(t) = &c.tolerance {
                let _ = writeln!(out, "       tolerance {t}");
            }
            if let Some(s) = c.seed {
                let _ = writeln!(out, "       seed {s}");
            }
        }
    }
    let _ = writeln!(
        out,
        "summary: {} pass, {} fail, {} skip",
        doc.summary.pass, doc.summary.fail, doc.summary.skip
    );
    for (suite, ms) in &doc.timing {
        let _ = writeln!(out, "elapsed: {suite} {ms} ms");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ordtopia_core::report::CheckReport;

    fn row(suite: &str, name: &str, status: Status) -> CheckReport {
        CheckReport::new(suite, name, status)
    }

    #[test]
    fn assemble_sorts_and_tallies() {
        let doc = assemble(
            vec![
                row("b", "z", Status::Pass),
                row("a", "y", Status::Fail),
                row("a", "x", Status::Skip),
            ],
            BTreeMap::new(),
        )
        .unwrap();
        let order: Vec<(&str, &str)> =
            doc.checks.iter().map(|c| (c.suite.as_str(), c.name.as_str())).collect();
        assert_eq!(order, vec![("a", "x"), ("a", "y"), ("b", "z")]);
        assert_eq!(doc.summary, Summary { pass: 1, fail: 1, skip: 1 });
        assert_eq!(doc.exit_code(), 1);
    }

    #[test]
    fn duplicate_identity_is_rejected() {
        let err = assemble(
            vec![row("a", "x", Status::Pass), row("a", "x", Status::Pass)],
            BTreeMap::new(),
        )
        .unwrap_err();
        assert_eq!(err, DocError::DuplicateCheck { suite: "a".into(), name: "x".into() });
    }

    #[test]
    fn merge_adds_counts_and_timing() {
        let left = assemble(vec![row("a", "x", Status::Pass)], BTreeMap::from([("a".into(), 3)]))
            .unwrap();
        let right = assemble(vec![row("b", "y", Status::Pass)], BTreeMap::from([("a".into(), 4)]))
            .unwrap();
        let merged = merge(vec![left, right]).unwrap();
        assert_eq!(merged.summary, Summary { pass: 2, fail: 0, skip: 0 });
        assert_eq!(merged.timing["a"], 7);
        assert_eq!(merge(vec![]).unwrap().summary, Summary::default());
    }

    #[test]
    fn document_json_shape_is_stable() {
        let doc = assemble(vec![row("a", "x", Status::Pass)], BTreeMap::new()).unwrap();
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"schema":1,"summary":{"pass":1,"fail":0,"skip":0},"checks":[{"suite":"a","name":"x","status":"pass"}]}"#
        );
    }
}
