//! Report-producing front end: worked examples, verification suites, and the
//! document plumbing the `ordtopia` binary shares with its tests.

pub mod config;
pub mod doc;
pub mod repro;
pub mod verify;

use config::RunConfig;
use ordtopia_core::report::CheckReport;

/// Worked examples reproduced by `ordtopia repro`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExampleId {
    /// Shifted-block streams whose metric limit escapes the order.
    SvenssonSeq,
    /// Power-mean distances on the same shifted blocks.
    Lsupnorm,
    /// Geometrically vanishing streams and sign-sensitive verdicts.
    Eneg,
    /// Spread-mass witnesses separating the stream distances.
    Simplex,
    /// The gauged overtaking criterion on the shifted-block family.
    OvertakingDemo,
}

impl ExampleId {
    pub fn as_str(self) -> &'static str {
        match self {
            ExampleId::SvenssonSeq => "svensson-seq",
            ExampleId::Lsupnorm => "lsupnorm",
            ExampleId::Eneg => "eneg",
            ExampleId::Simplex => "simplex",
            ExampleId::OvertakingDemo => "overtaking-demo",
        }
    }
}

/// Verification suites run by `ordtopia verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteId {
    /// Continuity characterizations, exhaustive then randomized.
    ContTheorems,
    /// Order refinement against up-set topology containment.
    Lgiltza,
    /// Distance axioms for the order-metric constructions.
    QpmAxioms,
    /// Ball topologies against the order topologies.
    QpmTopologies,
    /// Indicator-family representation of every small preorder.
    Multiutility,
    /// Welfare axioms for the overtaking criterion and its grading.
    AxiomsOvertaking,
}

impl SuiteId {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::ContTheorems => "cont-theorems",
            SuiteId::Lgiltza => "lgiltza",
            SuiteId::QpmAxioms => "qpm-axioms",
            SuiteId::QpmTopologies => "qpm-topologies",
            SuiteId::Multiutility => "multiutility",
            SuiteId::AxiomsOvertaking => "axioms-overtaking",
        }
    }
}

/// Run one worked example and return its rows, unsorted.
pub fn run_repro(example: ExampleId, cfg: &RunConfig) -> Vec<CheckReport> {
    match example {
        ExampleId::SvenssonSeq => repro::svensson_seq(cfg),
        ExampleId::Lsupnorm => repro::lsupnorm(cfg),
        ExampleId::Eneg => repro::eneg(cfg),
        ExampleId::Simplex => repro::simplex(cfg),
        ExampleId::OvertakingDemo => repro::overtaking_demo(cfg),
    }
}

/// Run one verification suite and return its rows, unsorted.
pub fn run_verify(suite: SuiteId, cfg: &RunConfig) -> Vec<CheckReport> {
    match suite {
        SuiteId::ContTheorems => verify::cont_theorems(cfg),
        SuiteId::Lgiltza => verify::lgiltza(cfg),
        SuiteId::QpmAxioms => verify::qpm_axioms(cfg),
        SuiteId::QpmTopologies => verify::qpm_topologies(cfg),
        SuiteId::Multiutility => verify::multiutility(cfg),
        SuiteId::AxiomsOvertaking => verify::axioms_overtaking(cfg),
    }
}
