//! Python bindings. Structured results come back as plain Python objects
//! decoded from the JSON the core types serialize to.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use surface_cluster as sc;

create_exception!(surface_cluster, SurfaceClusterError, PyValueError);

fn err(e: sc::Error) -> PyErr {
    SurfaceClusterError::new_err((e.code(), e.to_string()))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> PyResult<T> {
    serde_json::from_str(text).map_err(|e| SurfaceClusterError::new_err(("parse_error", e.to_string())))
}

/// Marked bordered surface.
#[pyclass(name = "Surface", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySurface(sc::MarkedSurface);

#[pymethods]
impl PySurface {
    #[new]
    #[pyo3(signature = (genus, boundary, punctures))]
    fn new(genus: usize, boundary: Vec<usize>, punctures: usize) -> PyResult<Self> {
        sc::MarkedSurface::new(genus, &boundary, punctures).map(PySurface).map_err(err)
    }

    #[getter]
    fn genus(&self) -> usize {
        self.0.genus()
    }

    #[getter]
    fn boundary(&self) -> Vec<usize> {
        self.0.boundary().to_vec()
    }

    #[getter]
    fn punctures(&self) -> usize {
        self.0.punctures()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &sc::classify(&self.0))
    }

    fn triangulate(&self) -> PyTriangulation {
        PyTriangulation(sc::initial_triangulation(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("Surface({})", self.0)
    }
}

/// Ideal triangulation.
#[pyclass(name = "Triangulation", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTriangulation(sc::IdealTriangulation);

#[pymethods]
impl PyTriangulation {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let t: sc::IdealTriangulation = from_json(text)?;
        t.validate().map_err(err)?;
        Ok(PyTriangulation(t))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("triangulations serialize")
    }

    #[getter]
    fn n_arcs(&self) -> usize {
        self.0.n_arcs()
    }

    fn flip(&self, arc: usize) -> PyResult<Self> {
        self.0.flip(arc).map(PyTriangulation).map_err(err)
    }

    fn flippable_arcs(&self) -> Vec<usize> {
        self.0.flippable_arcs()
    }

    fn b_matrix(&self) -> PyMatrix {
        PyMatrix(self.0.signed_adjacency())
    }

    fn canonical_string(&self) -> String {
        self.0.canonical_string()
    }

    fn tagged(&self) -> PyTaggedTriangulation {
        PyTaggedTriangulation(sc::tag_plain(&self.0))
    }
}

/// Tagged triangulation.
#[pyclass(name = "TaggedTriangulation", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTaggedTriangulation(sc::TaggedTriangulation);

#[pymethods]
impl PyTaggedTriangulation {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        from_json(text).map(PyTaggedTriangulation)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("tagged triangulations serialize")
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn flip(&self, arc: usize) -> PyResult<Self> {
        self.0.flip(arc).map(PyTaggedTriangulation).map_err(err)
    }

    fn b_matrix(&self) -> PyMatrix {
        PyMatrix(self.0.exchange_matrix())
    }

    fn has_notch(&self) -> bool {
        self.0.has_notch()
    }

    fn canonical_string(&self) -> String {
        self.0.canonical_string()
    }

    /// Number of states reached by breadth-first flipping, capped at `max_nodes`.
    #[pyo3(signature = (max_nodes=10_000))]
    fn exchange_graph_size(&self, max_nodes: usize) -> usize {
        sc::tagged::exchange_graph_bfs(&self.0, max_nodes).states.len()
    }
}

/// Skew-symmetric integer matrix.
#[pyclass(name = "Matrix", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyMatrix(sc::ExchangeMatrix);

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        sc::ExchangeMatrix::from_rows(&rows).map(PyMatrix).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.0.rows()
    }

    fn mutate(&self, k: usize) -> PyResult<Self> {
        self.0.mutate(k).map(PyMatrix).map_err(err)
    }

    fn corank(&self) -> usize {
        self.0.corank()
    }

    fn canonical_form(&self) -> PyResult<Self> {
        sc::canonical_form(&self.0).map(PyMatrix).map_err(err)
    }

    fn is_acyclic(&self) -> bool {
        sc::is_acyclic(&self.0)
    }

    /// Canonical representatives (as row lists) and whether the search finished.
    #[pyo3(signature = (max_size=100_000))]
    fn mutation_class(&self, max_size: usize) -> PyResult<(Vec<Vec<Vec<i64>>>, bool)> {
        let class = sc::mutation_class(&self.0, max_size).map_err(err)?;
        Ok((class.representatives.iter().map(|b| b.rows()).collect(), class.is_complete()))
    }

    #[pyo3(signature = (max_size=100_000))]
    fn recognize_type(&self, max_size: usize) -> PyResult<String> {
        sc::recognize_type(&self.0, max_size).map(|t| t.to_string()).map_err(err)
    }

    /// Block decomposition, or `None` when the matrix has none.
    fn decompose<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        sc::decompose(&self.0).map(|d| to_py(py, &d)).transpose()
    }

    /// Distinct cluster variables as strings, and whether the search finished.
    #[pyo3(signature = (limit=10_000))]
    fn cluster_variables(&self, limit: usize) -> PyResult<(Vec<String>, bool)> {
        let vars = sc::all_cluster_variables(&self.0, limit).map_err(err)?;
        Ok((vars.variables.iter().map(|v| v.to_string()).collect(), vars.complete))
    }

    /// Denominator vectors after mutating along `path`, computed symbolically
    /// and by the tropical recurrence.
    fn denominators(&self, path: Vec<usize>) -> PyResult<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
        sc::cluster::denominators_along(&self.0, &path).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?})", self.0.rows())
    }
}

/// Named quiver from the catalog, e.g. `"E6"` or `"AffineA(2,1)"`.
#[pyfunction]
fn quiver(spec: &str) -> PyResult<PyMatrix> {
    let spec: sc::QuiverSpec = spec.parse().map_err(err)?;
    sc::make_quiver(&spec).map(PyMatrix).map_err(err)
}

/// Block-decomposition JSON to the surface and triangulation it glues to.
#[pyfunction]
fn assemble(decomposition: &str) -> PyResult<(PySurface, PyTriangulation)> {
    let d: sc::BlockDecomposition = from_json(decomposition)?;
    let (s, t) = sc::surface_from_decomposition(&d).map_err(err)?;
    Ok((PySurface(s), PyTriangulation(t)))
}

/// Tagged arcs and clusters of the polygon (`"polygon"`) or once-punctured
/// polygon (`"punctured"`) model with `m` boundary points.
#[pyfunction]
fn clusters(model: &str, m: usize) -> PyResult<(Vec<String>, Vec<Vec<usize>>)> {
    let model = match model {
        "polygon" => sc::Model::Polygon(m),
        "punctured" => sc::Model::Punctured(m),
        other => return Err(PyValueError::new_err(format!("unknown model {other:?}"))),
    };
    let c = model.enumerate_clusters().map_err(err)?;
    Ok((c.arcs.iter().map(|a| a.to_string()).collect(), c.clusters))
}

#[pymodule(name = "surface_cluster")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SurfaceClusterError", m.py().get_type::<SurfaceClusterError>())?;
    m.add_class::<PySurface>()?;
    m.add_class::<PyTriangulation>()?;
    m.add_class::<PyTaggedTriangulation>()?;
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(quiver, m)?)?;
    m.add_function(wrap_pyfunction!(assemble, m)?)?;
    m.add_function(wrap_pyfunction!(clusters, m)?)?;
    Ok(())
}
