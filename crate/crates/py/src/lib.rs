//! Python bindings for `lexnet`.

use std::path::PathBuf;

use lexnet::error::LexnetError as CoreError;
use lexnet::experiment::{self, SmallWorldConfig};
use lexnet::{AnalysisConfig, BuildOptions, CorpusManifest, Directedness, ErSpec, LexNetwork, NodeId};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(
    pylexnet,
    LexnetError,
    PyValueError,
    "Raised for invalid input or failed analysis."
);

fn py_err(e: CoreError) -> PyErr {
    LexnetError::new_err(e.to_string())
}

fn directedness(directed: bool) -> Directedness {
    if directed {
        Directedness::Directed
    } else {
        Directedness::Undirected
    }
}

/// Lemma stream for one document.
#[pyclass(name = "TokenStream", module = "pylexnet", get_all, frozen)]
pub struct PyTokenStream {
    doc_id: String,
    lemmas: Vec<String>,
    count_with_stopwords: usize,
    count_without_stopwords: usize,
}

impl From<lexnet::TokenStream> for PyTokenStream {
    fn from(s: lexnet::TokenStream) -> Self {
        PyTokenStream {
            doc_id: s.doc_id,
            lemmas: s.lemmas,
            count_with_stopwords: s.count_with_stopwords,
            count_without_stopwords: s.count_without_stopwords,
        }
    }
}

#[pymethods]
impl PyTokenStream {
    fn __len__(&self) -> usize {
        self.lemmas.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "TokenStream(doc_id={:?}, with_stopwords={}, without_stopwords={})",
            self.doc_id, self.count_with_stopwords, self.count_without_stopwords
        )
    }
}

/// Measures of one network. `l`, `l_literal` and `d` are `None` when no pair
/// of nodes is connected.
#[pyclass(name = "Metrics", module = "pylexnet", get_all, frozen)]
pub struct PyMetrics {
    directed: bool,
    n: usize,
    k: usize,
    avg_degree: f64,
    avg_total_degree: f64,
    c: f64,
    l: Option<f64>,
    l_literal: Option<f64>,
    d: Option<u32>,
    reachable_pairs: u64,
    component_count: usize,
    largest_component_size: usize,
    json: String,
}

impl PyMetrics {
    fn new(r: lexnet::MetricsRecord) -> PyResult<Self> {
        let json = serde_json::to_string(&r).map_err(|e| py_err(e.into()))?;
        Ok(PyMetrics {
            directed: r.directedness.is_directed(),
            n: r.n,
            k: r.k,
            avg_degree: r.avg_degree,
            avg_total_degree: r.avg_total_degree,
            c: r.c,
            l: r.l,
            l_literal: r.l_literal,
            d: r.d,
            reachable_pairs: r.reachable_pairs,
            component_count: r.component_count,
            largest_component_size: r.largest_component_size,
            json,
        })
    }

    fn record(&self) -> PyResult<lexnet::MetricsRecord> {
        serde_json::from_str(&self.json).map_err(|e| py_err(e.into()))
    }
}

#[pymethods]
impl PyMetrics {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!("Metrics({})", self.json)
    }
}

fn py_float(x: Option<f64>) -> String {
    x.map_or_else(|| "None".to_owned(), |v| v.to_string())
}

#[pyclass(name = "Verdict", module = "pylexnet", get_all, frozen)]
pub struct PyVerdict {
    c_ratio: Option<f64>,
    l_ratio: Option<f64>,
    is_small_world: bool,
    diagnostic: Option<String>,
}

#[pymethods]
impl PyVerdict {
    fn __repr__(&self) -> String {
        format!(
            "Verdict(c_ratio={}, l_ratio={}, is_small_world={})",
            py_float(self.c_ratio),
            py_float(self.l_ratio),
            if self.is_small_world { "True" } else { "False" }
        )
    }
}

/// A simple graph over interned word labels.
#[pyclass(name = "Network", module = "pylexnet")]
pub struct PyNetwork {
    inner: LexNetwork,
}

impl PyNetwork {
    fn node(&self, id: u32) -> PyResult<NodeId> {
        if (id as usize) < self.inner.n() {
            Ok(NodeId(id))
        } else {
            Err(py_err(CoreError::NodeOutOfRange {
                node: NodeId(id),
                n: self.inner.n(),
            }))
        }
    }
}

#[pymethods]
impl PyNetwork {
    #[new]
    #[pyo3(signature = (directed = true, nodes = 0))]
    fn new(directed: bool, nodes: usize) -> Self {
        PyNetwork {
            inner: LexNetwork::with_nodes(directedness(directed), nodes),
        }
    }

    /// Adds a node and returns its id.
    #[pyo3(signature = (label = None))]
    fn add_node(&mut self, label: Option<&str>) -> PyResult<u32> {
        self.inner.add_node(label).map(|n| n.0).map_err(py_err)
    }

    /// Adds a link; returns `False` for self-loops and duplicates.
    fn add_link(&mut self, u: u32, v: u32) -> PyResult<bool> {
        let (u, v) = (self.node(u)?, self.node(v)?);
        self.inner.add_link(u, v).map_err(py_err)
    }

    fn has_link(&self, u: u32, v: u32) -> PyResult<bool> {
        Ok(self.inner.has_link(self.node(u)?, self.node(v)?))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    fn links(&self) -> Vec<(u32, u32)> {
        self.inner.links().iter().map(|&(u, v)| (u.0, v.0)).collect()
    }

    fn label(&self, node: u32) -> PyResult<Option<String>> {
        Ok(self.inner.label(self.node(node)?).map(str::to_owned))
    }

    fn node_by_label(&self, label: &str) -> Option<u32> {
        self.inner.node_by_label(label).map(|n| n.0)
    }

    fn to_undirected(&self) -> PyNetwork {
        PyNetwork {
            inner: self.inner.to_undirected(),
        }
    }

    /// Edge list as CSV text with a `source,target` header.
    fn edge_list_csv(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        self.inner.write_edge_list(&mut buf).map_err(py_err)?;
        String::from_utf8(buf).map_err(|e| LexnetError::new_err(e.to_string()))
    }

    #[staticmethod]
    #[pyo3(signature = (csv_text, directed = true))]
    fn from_edge_list_csv(csv_text: &str, directed: bool) -> PyResult<PyNetwork> {
        LexNetwork::read_edge_list(csv_text.as_bytes(), directedness(directed))
            .map(|inner| PyNetwork { inner })
            .map_err(py_err)
    }

    /// Exact measures; releases the interpreter while BFS runs.
    fn metrics(&self, py: Python<'_>) -> PyResult<PyMetrics> {
        let record = py.detach(|| lexnet::compute_metrics(&self.inner));
        PyMetrics::new(record)
    }

    fn __repr__(&self) -> String {
        format!(
            "Network(directed={}, n={}, k={})",
            if self.inner.is_directed() { "True" } else { "False" },
            self.inner.n(),
            self.inner.k()
        )
    }
}

#[pyfunction]
fn tokenize(text: &str) -> Vec<String> {
    lexnet::tokenize(text)
}

#[pyfunction]
#[pyo3(signature = (text, language, stopwords = None, lemmas = None, doc_id = "document"))]
fn preprocess(
    text: &str,
    language: &str,
    stopwords: Option<Vec<String>>,
    lemmas: Option<Vec<(String, String)>>,
    doc_id: &str,
) -> PyResult<PyTokenStream> {
    let doc = lexnet::RawDocument::new(doc_id, language, text);
    let stop = lexnet::StopwordList::new(language, stopwords.unwrap_or_default());
    let map = lexnet::LemmaMap::new(language, lemmas.unwrap_or_default());
    lexnet::preprocess(&doc, &stop, &map).map(Into::into).map_err(py_err)
}

/// Directed co-occurrence network over one or more lemma sequences.
#[pyfunction]
#[pyo3(signature = (streams, break_on_document_boundary = true))]
fn build_cooccurrence(streams: Vec<Vec<String>>, break_on_document_boundary: bool) -> PyNetwork {
    let slices: Vec<&[String]> = streams.iter().map(Vec::as_slice).collect();
    let opts = BuildOptions {
        break_on_document_boundary,
    };
    PyNetwork {
        inner: lexnet::build_from_lemmas(&slices, opts),
    }
}

#[pyfunction]
fn compute_metrics(py: Python<'_>, network: &PyNetwork) -> PyResult<PyMetrics> {
    network.metrics(py)
}

fn er_spec(n: usize, k: usize, directed: bool, seed: u64, samples: usize) -> PyResult<ErSpec> {
    let spec = ErSpec::new(n, k, directedness(directed), seed).with_samples(samples);
    spec.validate().map_err(py_err)?;
    Ok(spec)
}

#[pyfunction]
#[pyo3(signature = (n, k, directed = true, seed = 42, samples = 1))]
fn generate_er(n: usize, k: usize, directed: bool, seed: u64, samples: usize) -> PyResult<Vec<PyNetwork>> {
    let spec = er_spec(n, k, directed, seed, samples)?;
    let graphs = lexnet::generate_er(&spec).map_err(py_err)?;
    Ok(graphs.into_iter().map(|inner| PyNetwork { inner }).collect())
}

/// Measures averaged over `samples` seeded random graphs with `n` nodes and `k` links.
#[pyfunction]
#[pyo3(signature = (n, k, directed = true, seed = 42, samples = 1))]
fn er_reference_metrics(
    py: Python<'_>,
    n: usize,
    k: usize,
    directed: bool,
    seed: u64,
    samples: usize,
) -> PyResult<PyMetrics> {
    let spec = er_spec(n, k, directed, seed, samples)?;
    let record = py.detach(|| lexnet::er_reference_metrics(&spec)).map_err(py_err)?;
    PyMetrics::new(record)
}

#[pyfunction]
#[pyo3(signature = (network, er, c_threshold = 10.0, l_threshold = 1.5))]
fn small_world_verdict(network: &PyMetrics, er: &PyMetrics, c_threshold: f64, l_threshold: f64) -> PyResult<PyVerdict> {
    let config = SmallWorldConfig {
        c_threshold,
        l_threshold,
    };
    let v = experiment::small_world_verdict(&network.record()?, &er.record()?, &config).map_err(py_err)?;
    Ok(PyVerdict {
        c_ratio: v.c_ratio,
        l_ratio: v.l_ratio,
        is_small_world: v.is_small_world,
        diagnostic: v.diagnostic,
    })
}

/// Runs the full comparison for a corpus manifest and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (manifest, seed = 42, er_samples = 1))]
fn analyze_manifest(py: Python<'_>, manifest: PathBuf, seed: u64, er_samples: usize) -> PyResult<String> {
    let config = AnalysisConfig {
        seed,
        er_samples,
        ..AnalysisConfig::default()
    };
    py.detach(|| {
        let manifest = CorpusManifest::load(&manifest)?;
        let report = lexnet::analyze_corpus(&manifest, &config)?;
        lexnet::report::report_to_json(&report)
    })
    .map_err(py_err)
}

#[pymodule]
pub fn pylexnet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LexnetError", m.py().get_type::<LexnetError>())?;
    m.add_class::<PyNetwork>()?;
    m.add_class::<PyMetrics>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyTokenStream>()?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(preprocess, m)?)?;
    m.add_function(wrap_pyfunction!(build_cooccurrence, m)?)?;
    m.add_function(wrap_pyfunction!(compute_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(generate_er, m)?)?;
    m.add_function(wrap_pyfunction!(er_reference_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(small_world_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_manifest, m)?)?;
    Ok(())
}
