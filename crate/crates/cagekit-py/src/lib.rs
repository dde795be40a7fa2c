//! Python bindings: the builders, the verification kernel and the
//! interchange formats, wrapped around an immutable `Graph` class.

use std::str::FromStr;

use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use cagekit::{
    cage, dominating, formats, graph, BipartiteGraph, Error, Field, GraphFormat, PdsCertificate,
    Stage, VerifyReport,
};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::NotPrimePower(_)
        | Error::UnsupportedQ(_)
        | Error::InvalidDegree(_)
        | Error::InvalidLabel(_)
        | Error::Construction(_)
        | Error::Parse { .. } => PyValueError::new_err(e.to_string()),
        Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

/// An immutable bipartite graph with exact girth/diameter queries.
#[pyclass(frozen)]
struct Graph {
    inner: BipartiteGraph,
}

#[pymethods]
impl Graph {
    /// Number of vertices.
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// Number of edges.
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn degree(&self, v: u32) -> PyResult<u32> {
        self.check_vertex(v)?;
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        self.check_vertex(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges().collect()
    }

    /// Exact girth, or None for a forest.
    #[pyo3(signature = (threads = 1))]
    fn girth(&self, threads: usize) -> Option<u32> {
        self.inner.girth_with_threads(threads)
    }

    /// Exact diameter, or None when disconnected.
    #[pyo3(signature = (threads = 1))]
    fn diameter(&self, threads: usize) -> Option<u32> {
        self.inner.diameter_with_threads(threads)
    }

    fn degree_histogram(&self) -> std::collections::BTreeMap<u32, u64> {
        self.inner.degree_profile()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite_consistent()
    }

    fn distance(&self, u: u32, v: u32) -> PyResult<Option<u32>> {
        self.inner.distance(u, v).map_err(to_py_err)
    }

    /// The vertex label "(a,b,c)_i" when the graph carries labels.
    fn label(&self, v: u32) -> PyResult<Option<String>> {
        self.check_vertex(v)?;
        Ok(self.inner.label_of(v).map(|l| l.to_string()))
    }

    /// Serialize to "graph6", "dimacs-edge", "edge-list" or "labeled-json".
    fn serialize<'py>(&self, py: Python<'py>, format: &str) -> PyResult<Bound<'py, PyBytes>> {
        let fmt = GraphFormat::from_str(format).map_err(to_py_err)?;
        let bytes = formats::serialize_graph(&self.inner, fmt).map_err(to_py_err)?;
        Ok(PyBytes::new(py, &bytes))
    }

    /// Full measurement report (order, size, degrees, bipartite, girth,
    /// diameter) as a JSON string.
    #[pyo3(signature = (threads = 1))]
    fn verify_report(&self, threads: usize) -> PyResult<String> {
        let report = VerifyReport::compute(&self.inner, threads);
        serde_json::to_string_pretty(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(order={}, size={})",
            self.inner.order(),
            self.inner.size()
        )
    }
}

impl Graph {
    fn check_vertex(&self, v: u32) -> PyResult<()> {
        if (v as usize) < self.inner.order() {
            Ok(())
        } else {
            Err(PyIndexError::new_err(format!(
                "vertex {v} out of range for order {}",
                self.inner.order()
            )))
        }
    }
}

fn wrap(g: Result<BipartiteGraph, Error>) -> PyResult<Graph> {
    g.map(|inner| Graph { inner }).map_err(to_py_err)
}

/// Summary of a perfect-dominating-set run.
#[pyclass(frozen)]
#[derive(Clone)]
struct PdsSummary {
    #[pyo3(get)]
    q: u32,
    #[pyo3(get)]
    cardinality: u64,
    #[pyo3(get)]
    perfect: bool,
    #[pyo3(get)]
    variant: Option<String>,
    #[pyo3(get)]
    x: Option<u32>,
    #[pyo3(get)]
    induced_diameter: Option<u32>,
    members: Vec<u32>,
    json: String,
    alternate: Option<Box<PdsSummary>>,
}

impl PdsSummary {
    fn from_certificate(cert: &PdsCertificate) -> PyResult<PdsSummary> {
        Ok(PdsSummary {
            q: cert.q,
            cardinality: cert.cardinality,
            perfect: cert.perfect,
            variant: cert.variant.map(|v| {
                serde_json::to_value(v)
                    .unwrap()
                    .as_str()
                    .unwrap()
                    .to_owned()
            }),
            x: cert.x,
            induced_diameter: cert.induced_diameter,
            members: cert.pds.iter().collect(),
            json: serde_json::to_string_pretty(cert)
                .map_err(|e| PyRuntimeError::new_err(e.to_string()))?,
            alternate: match &cert.alternate {
                Some(alt) => Some(Box::new(PdsSummary::from_certificate(alt)?)),
                None => None,
            },
        })
    }
}

#[pymethods]
impl PdsSummary {
    /// Vertex indices of the set, in ascending order.
    fn members(&self) -> Vec<u32> {
        self.members.clone()
    }

    fn to_json(&self) -> String {
        self.json.clone()
    }

    /// The certificate for the other q = 4 x-choice, when applicable.
    fn alternate(&self) -> Option<PdsSummary> {
        self.alternate.as_deref().cloned()
    }

    fn __repr__(&self) -> String {
        format!(
            "PdsSummary(q={}, cardinality={}, perfect={})",
            self.q, self.cardinality, self.perfect
        )
    }
}

/// Moore lower bound 2(1 + (k-1) + (k-1)^2 + (k-1)^3).
#[pyfunction]
fn moore_bound(k: u64) -> PyResult<u64> {
    graph::moore_bound(k).map_err(to_py_err)
}

/// The Moore (q+1,8)-cage on 2(q^3+q^2+q+1) vertices.
#[pyfunction]
fn build_gamma(q: u64) -> PyResult<Graph> {
    wrap(cage::build_gamma(q))
}

/// The same cage generated from the side-0 rule set.
#[pyfunction]
fn build_gamma_dual(q: u64) -> PyResult<Graph> {
    wrap(cage::build_gamma_dual(q))
}

/// The q-regular graph B_q on 2q^3 vertices.
#[pyfunction]
fn build_bq(q: u64) -> PyResult<Graph> {
    wrap(cage::build_bq(q))
}

/// The q-regular graph H_q on 2q^3 vertices.
#[pyfunction]
fn build_hq(q: u64) -> PyResult<Graph> {
    wrap(cage::build_hq(q))
}

/// One construction stage: "bq", "bq-prime", "bq-double-prime",
/// "bq-triple-prime" or "gamma".
#[pyfunction]
fn build_stage(q: u64, stage: &str) -> PyResult<Graph> {
    let stage = Stage::from_name(stage).map_err(to_py_err)?;
    wrap(cage::build_staged(q, stage))
}

/// True when the side-1 and side-0 rule sets generate identical edges.
#[pyfunction]
fn check_dual_equivalence(q: u64) -> PyResult<bool> {
    match cage::check_dual_equivalence(q) {
        Ok(()) => Ok(true),
        Err(Error::FormulationMismatch { .. }) => Ok(false),
        Err(e) => Err(to_py_err(e)),
    }
}

/// True when sigma is a graph isomorphism B_q -> H_q.
#[pyfunction]
fn check_isomorphism(q: u64) -> PyResult<bool> {
    cage::check_isomorphism(q).map_err(to_py_err)
}

/// Builds and certifies the perfect dominating set of Gamma_q (even q >= 4).
#[pyfunction]
fn build_pds(q: u64) -> PyResult<PdsSummary> {
    let cert = dominating::build_pds(q).map_err(to_py_err)?;
    PdsSummary::from_certificate(&cert)
}

/// Gamma_q minus its perfect dominating set.
#[pyfunction]
fn remove_pds(q: u64) -> PyResult<Graph> {
    wrap(dominating::remove_pds(q))
}

/// Verifies the explicit D_Q/D_S matching for even q >= 8.
#[pyfunction]
fn check_matching(q: u64) -> PyResult<bool> {
    dominating::check_matching(q).map_err(to_py_err)
}

/// Parses a serialized graph; format as in Graph.serialize.
#[pyfunction]
fn parse(data: &[u8], format: &str) -> PyResult<Graph> {
    let fmt = GraphFormat::from_str(format).map_err(to_py_err)?;
    wrap(formats::parse_graph(data, fmt))
}

/// Field parameters (p, n, modulus coefficients) for GF(q).
#[pyfunction]
fn field_info(q: u64) -> PyResult<(u32, u32, Vec<u32>)> {
    let field = Field::new(q).map_err(to_py_err)?;
    Ok((field.p(), field.n(), field.modulus().to_vec()))
}

#[pymodule]
fn cagekit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<PdsSummary>()?;
    m.add_function(wrap_pyfunction!(moore_bound, m)?)?;
    m.add_function(wrap_pyfunction!(build_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(build_gamma_dual, m)?)?;
    m.add_function(wrap_pyfunction!(build_bq, m)?)?;
    m.add_function(wrap_pyfunction!(build_hq, m)?)?;
    m.add_function(wrap_pyfunction!(build_stage, m)?)?;
    m.add_function(wrap_pyfunction!(check_dual_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(check_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(build_pds, m)?)?;
    m.add_function(wrap_pyfunction!(remove_pds, m)?)?;
    m.add_function(wrap_pyfunction!(check_matching, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(field_info, m)?)?;
    Ok(())
}
