//! Python bindings: the carrier-level types, the stream distances, and the
//! report-producing entry points, with rationals crossing the boundary as
//! exact "p/q" strings.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use ordtopia_cli::config::RunConfig;
use ordtopia_cli::{doc, ExampleId, SuiteId};
use ordtopia_core::preorder::{enumerate_preorders, ElementSet, FinitePreorder};
use ordtopia_core::qpm::{
    classify_table, construct_d1, construct_d2, construct_d2_param, construct_d3, construct_d4,
    encode_preorder, induced_preorder, induced_topology, symmetrize, PseudoMetric,
    QuasiPseudoMetric,
};
use ordtopia_core::rational::{format_rat, parse_rat, Rat};
use ordtopia_core::seq::{
    grading_le, metric_d1, metric_dc, metric_dp, metric_dq, metric_ds, overtaking_compare, Gauge,
    SeqModel, Tail,
};
use ordtopia_core::topology::{
    alexandroff_topology, enumerate_topologies, is_continuous, is_lower_continuous,
    is_upper_continuous, lower_topology, upper_topology, FiniteTopology,
};
use ordtopia_core::utility::{multi_utility, reconstruct_from_utilities};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rats(values: &[String]) -> PyResult<Vec<Rat>> {
    values.iter().map(|s| parse_rat(s).map_err(value_err)).collect()
}

fn parse_table(rows: &[Vec<String>]) -> PyResult<Vec<Vec<Rat>>> {
    rows.iter().map(|row| parse_rats(row)).collect()
}

fn format_table(rows: &[Vec<Rat>]) -> Vec<Vec<String>> {
    rows.iter().map(|row| row.iter().map(format_rat).collect()).collect()
}

fn set_to_indices(set: &ElementSet) -> Vec<usize> {
    set.indices()
}

/// A reflexive transitive relation on {0, .., n-1}.
#[pyclass(name = "FinitePreorder", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPreorder {
    inner: FinitePreorder,
}

impl PyPreorder {
    fn check_element(&self, i: usize) -> PyResult<()> {
        if i >= self.inner.n() {
            return Err(PyIndexError::new_err(format!(
                "element {i} out of range for carrier {}",
                self.inner.n()
            )));
        }
        Ok(())
    }

    fn check_same_carrier(&self, other: &PyPreorder) -> PyResult<()> {
        if self.inner.n() != other.inner.n() {
            return Err(value_err(format!(
                "carriers differ: {} vs {}",
                self.inner.n(),
                other.inner.n()
            )));
        }
        Ok(())
    }
}

#[pymethods]
impl PyPreorder {
    /// Transitive closure of the given pairs; no pairs means the discrete
    /// order.
    #[new]
    #[pyo3(signature = (n, pairs=None))]
    fn new(n: usize, pairs: Option<Vec<(usize, usize)>>) -> PyResult<Self> {
        let inner = match pairs {
            Some(pairs) => FinitePreorder::from_pairs(n, &pairs).map_err(value_err)?,
            None => FinitePreorder::discrete(n),
        };
        Ok(PyPreorder { inner })
    }

    /// 0 < 1 < .. < n-1.
    #[staticmethod]
    fn chain(n: usize) -> PyResult<Self> {
        if n == 0 || n > 64 {
            return Err(value_err("carrier must be within 1..=64"));
        }
        Ok(PyPreorder { inner: FinitePreorder::chain(n) })
    }

    /// Everything equivalent to everything.
    #[staticmethod]
    fn indifference(n: usize) -> PyResult<Self> {
        if n == 0 || n > 64 {
            return Err(value_err("carrier must be within 1..=64"));
        }
        Ok(PyPreorder { inner: FinitePreorder::indifference(n) })
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn le(&self, x: usize, y: usize) -> PyResult<bool> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.inner.le(x, y))
    }

    fn strictly_less(&self, x: usize, y: usize) -> PyResult<bool> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.inner.strictly_less(x, y))
    }

    fn equivalent(&self, x: usize, y: usize) -> PyResult<bool> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.inner.equivalent(x, y))
    }

    fn incomparable(&self, x: usize, y: usize) -> PyResult<bool> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.inner.incomparable(x, y))
    }

    fn lower_contour(&self, y: usize) -> PyResult<Vec<usize>> {
        self.check_element(y)?;
        Ok(set_to_indices(&self.inner.lower_contour(y)))
    }

    fn upper_contour(&self, x: usize) -> PyResult<Vec<usize>> {
        self.check_element(x)?;
        Ok(set_to_indices(&self.inner.upper_contour(x)))
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        self.inner.pairs()
    }

    fn is_total(&self) -> bool {
        self.inner.is_total()
    }

    fn is_partial_order(&self) -> bool {
        self.inner.is_partial_order()
    }

    fn dual(&self) -> Self {
        PyPreorder { inner: self.inner.dual() }
    }

    fn refines(&self, other: &PyPreorder) -> PyResult<bool> {
        self.check_same_carrier(other)?;
        Ok(self.inner.refines(&other.inner))
    }

    /// Up-set (Alexandroff) topology of the order.
    fn alexandroff(&self) -> PyResult<PyTopology> {
        Ok(PyTopology { inner: alexandroff_topology(&self.inner).map_err(value_err)? })
    }

    /// Topology generated by complements of lower contours.
    fn upper(&self) -> PyResult<PyTopology> {
        Ok(PyTopology { inner: upper_topology(&self.inner).map_err(value_err)? })
    }

    /// Topology generated by complements of upper contours.
    fn lower(&self) -> PyResult<PyTopology> {
        Ok(PyTopology { inner: lower_topology(&self.inner).map_err(value_err)? })
    }

    /// Indicator utilities whose pointwise order recovers the relation.
    fn multi_utility(&self) -> Vec<Vec<String>> {
        format_table(&multi_utility(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("FinitePreorder(n={}, pairs={:?})", self.inner.n(), self.inner.pairs())
    }
}

/// A topology on {0, .., n-1}, stored as its full lattice of open sets.
#[pyclass(name = "FiniteTopology", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyTopology {
    inner: FiniteTopology,
}

#[pymethods]
impl PyTopology {
    /// Topology generated by the given subbasis.
    #[new]
    fn new(n: usize, subbasis: Vec<Vec<usize>>) -> PyResult<Self> {
        let mut sets = Vec::with_capacity(subbasis.len());
        for indices in &subbasis {
            sets.push(ElementSet::from_indices(n, indices).map_err(value_err)?);
        }
        Ok(PyTopology { inner: FiniteTopology::from_subbasis(n, &sets).map_err(value_err)? })
    }

    #[staticmethod]
    fn discrete(n: usize) -> PyResult<Self> {
        Ok(PyTopology { inner: FiniteTopology::discrete(n).map_err(value_err)? })
    }

    #[staticmethod]
    fn indiscrete(n: usize) -> PyResult<Self> {
        if n == 0 || n > 16 {
            return Err(value_err("carrier must be within 1..=16"));
        }
        Ok(PyTopology { inner: FiniteTopology::indiscrete(n) })
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn open_count(&self) -> usize {
        self.inner.open_count()
    }

    fn opens(&self) -> Vec<Vec<usize>> {
        self.inner.opens().iter().map(set_to_indices).collect()
    }

    fn is_open(&self, indices: Vec<usize>) -> PyResult<bool> {
        let set = ElementSet::from_indices(self.inner.n(), &indices).map_err(value_err)?;
        Ok(self.inner.is_open(&set))
    }

    fn finer_than(&self, other: &PyTopology) -> PyResult<bool> {
        if self.inner.n() != other.inner.n() {
            return Err(value_err("carriers differ"));
        }
        Ok(self.inner.finer_than(&other.inner))
    }

    /// x below y when every open set around x contains y.
    fn specialization(&self) -> PyPreorder {
        PyPreorder { inner: self.inner.specialization_preorder() }
    }

    fn __repr__(&self) -> String {
        format!("FiniteTopology(n={}, opens={})", self.inner.n(), self.inner.open_count())
    }
}

/// Identity-checked continuity of an order against a topology on the same
/// carrier.
#[pyfunction]
fn continuity(p: &PyPreorder, t: &PyTopology) -> PyResult<(bool, bool, bool)> {
    if p.inner.n() != t.inner.n() {
        return Err(value_err("carriers differ"));
    }
    Ok((
        is_lower_continuous(&p.inner, &t.inner),
        is_upper_continuous(&p.inner, &t.inner),
        is_continuous(&p.inner, &t.inner),
    ))
}

/// A nonnegative distance table satisfying the asymmetric axioms.
#[pyclass(name = "QuasiPseudoMetric", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyQpm {
    inner: QuasiPseudoMetric,
}

impl PyQpm {
    fn check_element(&self, i: usize) -> PyResult<()> {
        if i >= self.inner.n() {
            return Err(PyIndexError::new_err(format!(
                "element {i} out of range for carrier {}",
                self.inner.n()
            )));
        }
        Ok(())
    }
}

fn base_from_table(rows: &[Vec<String>]) -> PyResult<PseudoMetric> {
    PseudoMetric::from_table(parse_table(rows)?).map_err(value_err)
}

#[pymethods]
impl PyQpm {
    /// Validate a table of "p/q" entries as a quasi-pseudo-metric.
    #[new]
    fn new(rows: Vec<Vec<String>>) -> PyResult<Self> {
        let inner = QuasiPseudoMetric::from_table(parse_table(&rows)?).map_err(value_err)?;
        Ok(PyQpm { inner })
    }

    /// Indicator distance: 0 exactly on related pairs.
    #[staticmethod]
    fn encode(p: &PyPreorder) -> Self {
        PyQpm { inner: encode_preorder(&p.inner) }
    }

    /// Base distance zeroed on related pairs.
    #[staticmethod]
    fn d1(p: &PyPreorder, base: Vec<Vec<String>>) -> PyResult<Self> {
        let base = base_from_table(&base)?;
        Ok(PyQpm { inner: construct_d1(&p.inner, &base).map_err(value_err)? })
    }

    /// Indicator blended with half the base distance.
    #[staticmethod]
    fn d2(p: &PyPreorder, base: Vec<Vec<String>>) -> PyResult<Self> {
        let base = base_from_table(&base)?;
        Ok(PyQpm { inner: construct_d2(&p.inner, &base).map_err(value_err)? })
    }

    /// The same blend with weights k/m and (m-k)/m.
    #[staticmethod]
    fn d2_param(p: &PyPreorder, base: Vec<Vec<String>>, k: i64, m: i64) -> PyResult<Self> {
        let base = base_from_table(&base)?;
        Ok(PyQpm { inner: construct_d2_param(&p.inner, &base, k, m).map_err(value_err)? })
    }

    /// One-sided utility gap under an isotonic utility.
    #[staticmethod]
    fn d3(p: &PyPreorder, utility: Vec<String>) -> PyResult<Self> {
        let u = parse_rats(&utility)?;
        Ok(PyQpm { inner: construct_d3(&p.inner, &u).map_err(value_err)? })
    }

    /// Utility gap with an indicator floor on unrelated pairs.
    #[staticmethod]
    fn d4(p: &PyPreorder, utility: Vec<String>) -> PyResult<Self> {
        let u = parse_rats(&utility)?;
        Ok(PyQpm { inner: construct_d4(&p.inner, &u).map_err(value_err)? })
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn get(&self, x: usize, y: usize) -> PyResult<String> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(format_rat(self.inner.get(x, y)))
    }

    fn table(&self) -> Vec<Vec<String>> {
        format_table(self.inner.table())
    }

    fn max_entry(&self) -> String {
        format_rat(&self.inner.max_entry())
    }

    fn is_one_bounded(&self) -> bool {
        self.inner.is_one_bounded()
    }

    fn is_quasi_metric(&self) -> bool {
        classify_table(self.inner.table()).is_quasi_metric()
    }

    fn is_t1_quasi_metric(&self) -> bool {
        classify_table(self.inner.table()).is_t1_quasi_metric()
    }

    fn is_pseudo_metric(&self) -> bool {
        classify_table(self.inner.table()).is_pseudo_metric()
    }

    fn is_metric(&self) -> bool {
        classify_table(self.inner.table()).is_metric()
    }

    /// max(d(x,y), d(y,x)).
    fn symmetrize(&self) -> Self {
        PyQpm { inner: symmetrize(&self.inner).inner().clone() }
    }

    /// x below y when d(x,y) = 0.
    fn induced_preorder(&self) -> PyPreorder {
        PyPreorder { inner: induced_preorder(&self.inner) }
    }

    /// Topology generated by the open balls.
    fn induced_topology(&self) -> PyResult<PyTopology> {
        Ok(PyTopology { inner: induced_topology(&self.inner).map_err(value_err)? })
    }

    fn __repr__(&self) -> String {
        format!("QuasiPseudoMetric(n={})", self.inner.n())
    }
}

/// An eventually constant stream: an explicit rational prefix and a
/// constant tail.
#[pyclass(name = "SeqModel", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySeq {
    inner: SeqModel,
}

#[pymethods]
impl PySeq {
    /// Zero tail unless a constant tail value is given.
    #[new]
    #[pyo3(signature = (prefix, tail=None))]
    fn new(prefix: Vec<String>, tail: Option<String>) -> PyResult<Self> {
        let tail = match tail {
            Some(raw) => Tail::Const(parse_rat(&raw).map_err(value_err)?),
            None => Tail::Zero,
        };
        Ok(PySeq { inner: SeqModel::new(parse_rats(&prefix)?, tail) })
    }

    fn prefix_len(&self) -> usize {
        self.inner.prefix_len()
    }

    /// Value at the 1-based position.
    fn value_at(&self, pos: usize) -> PyResult<String> {
        self.inner
            .value_at(pos)
            .map(|r| format_rat(&r))
            .ok_or_else(|| PyIndexError::new_err(format!("position {pos} is not evaluable")))
    }

    fn __repr__(&self) -> String {
        let prefix: Vec<String> = self.inner.prefix().iter().map(format_rat).collect();
        format!("SeqModel(prefix={prefix:?})")
    }
}

#[pyfunction]
fn stream_ds(x: &PySeq, y: &PySeq) -> PyResult<String> {
    metric_ds(&x.inner, &y.inner).map(|r| format_rat(&r)).map_err(value_err)
}

#[pyfunction]
fn stream_dc(x: &PySeq, y: &PySeq) -> PyResult<String> {
    metric_dc(&x.inner, &y.inner).map(|r| format_rat(&r)).map_err(value_err)
}

#[pyfunction]
fn stream_d1(x: &PySeq, y: &PySeq) -> PyResult<String> {
    metric_d1(&x.inner, &y.inner).map(|r| format_rat(&r)).map_err(value_err)
}

#[pyfunction]
fn stream_dp(x: &PySeq, y: &PySeq, p: f64) -> PyResult<f64> {
    metric_dp(&x.inner, &y.inner, p).map_err(value_err)
}

#[pyfunction]
fn stream_dq(x: &PySeq, y: &PySeq, q: f64) -> PyResult<f64> {
    metric_dq(&x.inner, &y.inner, q).map_err(value_err)
}

/// Sorted dominance over the first k coordinates plus the tail gate.
#[pyfunction(name = "grading_le")]
fn py_grading_le(x: &PySeq, y: &PySeq, k: usize) -> PyResult<bool> {
    grading_le(&x.inner, &y.inner, k).map_err(value_err)
}

fn parse_gauge(name: &str) -> PyResult<Gauge> {
    match name {
        "sqrt" => Ok(Gauge::SqrtShift),
        "log" => Ok(Gauge::LogShift),
        "linear" => Ok(Gauge::Linear),
        other => Err(value_err(format!("unknown gauge {other:?}; use sqrt, log, or linear"))),
    }
}

/// Overtaking verdict as (x_le_y, y_le_x) under the named gauge.
#[pyfunction]
fn overtaking_verdict(x: &PySeq, y: &PySeq, gauge: &str) -> PyResult<(bool, bool)> {
    let verdict = overtaking_compare(&x.inner, &y.inner, parse_gauge(gauge)?).map_err(value_err)?;
    Ok((verdict.x_le_y, verdict.y_le_x))
}

/// Every preorder on a carrier of up to five elements.
#[pyfunction(name = "enumerate_preorders")]
fn py_enumerate_preorders(n: usize) -> PyResult<Vec<PyPreorder>> {
    let all = enumerate_preorders(n).map_err(value_err)?;
    Ok(all.into_iter().map(|inner| PyPreorder { inner }).collect())
}

/// Every topology on a carrier of up to four elements.
#[pyfunction(name = "enumerate_topologies")]
fn py_enumerate_topologies(n: usize) -> PyResult<Vec<PyTopology>> {
    let all = enumerate_topologies(n).map_err(value_err)?;
    Ok(all.into_iter().map(|inner| PyTopology { inner }).collect())
}

/// Preorder whose relation is pointwise dominance under the utilities.
#[pyfunction]
fn reconstruct(n: usize, utilities: Vec<Vec<String>>) -> PyResult<PyPreorder> {
    let parsed = parse_table(&utilities)?;
    Ok(PyPreorder { inner: reconstruct_from_utilities(n, &parsed).map_err(value_err)? })
}

fn build_config(
    seed: Option<u64>,
    trials: Option<usize>,
    max_carrier: Option<usize>,
    p: Option<f64>,
    q: Option<f64>,
) -> PyResult<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(trials) = trials {
        cfg.trials = trials;
    }
    if let Some(max_carrier) = max_carrier {
        cfg.max_carrier = max_carrier;
    }
    cfg.p = p;
    cfg.q = q;
    cfg.validate().map_err(value_err)?;
    Ok(cfg)
}

fn report_json(checks: Vec<ordtopia_core::report::CheckReport>) -> PyResult<String> {
    let document = doc::assemble(checks, BTreeMap::new()).map_err(value_err)?;
    serde_json::to_string(&document).map_err(value_err)
}

fn parse_example(name: &str) -> PyResult<ExampleId> {
    match name {
        "svensson-seq" => Ok(ExampleId::SvenssonSeq),
        "lsupnorm" => Ok(ExampleId::Lsupnorm),
        "eneg" => Ok(ExampleId::Eneg),
        "simplex" => Ok(ExampleId::Simplex),
        "overtaking-demo" => Ok(ExampleId::OvertakingDemo),
        other => Err(value_err(format!("unknown example {other:?}"))),
    }
}

fn parse_suite(name: &str) -> PyResult<SuiteId> {
    match name {
        "cont-theorems" => Ok(SuiteId::ContTheorems),
        "lgiltza" => Ok(SuiteId::Lgiltza),
        "qpm-axioms" => Ok(SuiteId::QpmAxioms),
        "qpm-topologies" => Ok(SuiteId::QpmTopologies),
        "multiutility" => Ok(SuiteId::Multiutility),
        "axioms-overtaking" => Ok(SuiteId::AxiomsOvertaking),
        other => Err(value_err(format!("unknown suite {other:?}"))),
    }
}

/// Run one worked example; returns the report document as a JSON string.
#[pyfunction(name = "run_repro")]
#[pyo3(signature = (example, seed=None, trials=None, max_carrier=None, p=None, q=None))]
fn py_run_repro(
    example: &str,
    seed: Option<u64>,
    trials: Option<usize>,
    max_carrier: Option<usize>,
    p: Option<f64>,
    q: Option<f64>,
) -> PyResult<String> {
    let id = parse_example(example)?;
    let cfg = build_config(seed, trials, max_carrier, p, q)?;
    report_json(ordtopia_cli::run_repro(id, &cfg))
}

/// Run one verification suite; returns the report document as a JSON string.
#[pyfunction(name = "run_verify")]
#[pyo3(signature = (suite, seed=None, trials=None, max_carrier=None, p=None, q=None))]
fn py_run_verify(
    suite: &str,
    seed: Option<u64>,
    trials: Option<usize>,
    max_carrier: Option<usize>,
    p: Option<f64>,
    q: Option<f64>,
) -> PyResult<String> {
    let id = parse_suite(suite)?;
    let cfg = build_config(seed, trials, max_carrier, p, q)?;
    report_json(ordtopia_cli::run_verify(id, &cfg))
}

#[pyfunction]
fn examples() -> Vec<&'static str> {
    vec!["svensson-seq", "lsupnorm", "eneg", "simplex", "overtaking-demo"]
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    vec![
        "cont-theorems",
        "lgiltza",
        "qpm-axioms",
        "qpm-topologies",
        "multiutility",
        "axioms-overtaking",
    ]
}

#[pymodule]
fn ordtopia_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPreorder>()?;
    m.add_class::<PyTopology>()?;
    m.add_class::<PyQpm>()?;
    m.add_class::<PySeq>()?;
    m.add_function(wrap_pyfunction!(continuity, m)?)?;
    m.add_function(wrap_pyfunction!(stream_ds, m)?)?;
    m.add_function(wrap_pyfunction!(stream_dc, m)?)?;
    m.add_function(wrap_pyfunction!(stream_d1, m)?)?;
    m.add_function(wrap_pyfunction!(stream_dp, m)?)?;
    m.add_function(wrap_pyfunction!(stream_dq, m)?)?;
    m.add_function(wrap_pyfunction!(py_grading_le, m)?)?;
    m.add_function(wrap_pyfunction!(overtaking_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(py_enumerate_preorders, m)?)?;
    m.add_function(wrap_pyfunction!(py_enumerate_topologies, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(py_run_repro, m)?)?;
    m.add_function(wrap_pyfunction!(py_run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    Ok(())
}
