use probautomata::io::{self, Document};
use probautomata::languages::{self, IsolationStatus, Stability};
use probautomata::linear::{self as la, LaBinary, LaUnary};
use probautomata::{Alphabet, Error, Tolerances, Word};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use std::path::Path;

fn err(e: Error) -> PyErr {
    match e {
        Error::Isolation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn tol(t: Option<f64>) -> Tolerances {
    t.map(Tolerances::uniform).unwrap_or_default()
}

fn word(a: &Alphabet, text: &str) -> PyResult<Word> {
    if text == "ε" {
        return Ok(Vec::new());
    }
    a.parse_word(text).map_err(err)
}

fn words(a: &Alphabet, list: Vec<Word>) -> Vec<String> {
    list.iter().map(|w| a.format_word(w)).collect()
}

#[pyclass(name = "MoorePA", module = "probautomata_py", skip_from_py_object)]
#[derive(Clone)]
struct PyMoore(probautomata::MoorePA);

#[pyclass(name = "GeneralPA", module = "probautomata_py", skip_from_py_object)]
#[derive(Clone)]
struct PyGeneral(probautomata::GeneralPA);

#[pyclass(name = "LinearAutomaton", module = "probautomata_py", skip_from_py_object)]
#[derive(Clone)]
struct PyLinear(probautomata::LinearAutomaton);

#[pyclass(name = "Dfa", module = "probautomata_py", skip_from_py_object)]
#[derive(Clone)]
struct PyDfa(probautomata::Dfa);

fn wrap(py: Python<'_>, doc: Document) -> PyResult<Py<PyAny>> {
    Ok(match doc {
        Document::MoorePA(a) => Py::new(py, PyMoore(a))?.into_any(),
        Document::GeneralPA(a) => Py::new(py, PyGeneral(a))?.into_any(),
        Document::LinearAutomaton(a) => Py::new(py, PyLinear(a))?.into_any(),
        Document::Dfa(a) => Py::new(py, PyDfa(a))?.into_any(),
        other => return Err(PyValueError::new_err(format!("kind `{}` has no Python wrapper", other.kind()))),
    })
}

/// Parse any supported JSON document.
#[pyfunction]
#[pyo3(signature = (text, tolerance=None))]
fn from_json(py: Python<'_>, text: &str, tolerance: Option<f64>) -> PyResult<Py<PyAny>> {
    wrap(py, io::from_json(text, &tol(tolerance)).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (path, tolerance=None))]
fn load(py: Python<'_>, path: &str, tolerance: Option<f64>) -> PyResult<Py<PyAny>> {
    wrap(py, io::load(Path::new(path), &tol(tolerance)).map_err(err)?)
}

#[pymethods]
impl PyMoore {
    #[new]
    #[pyo3(signature = (inputs, trans, initial, output, tolerance=None))]
    fn new(inputs: Vec<String>, trans: Vec<Vec<Vec<f64>>>, initial: Vec<f64>, output: Vec<f64>, tolerance: Option<f64>) -> PyResult<Self> {
        let a = Alphabet::new(inputs).map_err(err)?;
        let m = trans
            .iter()
            .map(|t| probautomata::Matrix::from_rows(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        probautomata::MoorePA::new(a, m, initial, output, &tol(tolerance))
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn states(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn inputs(&self) -> Vec<String> {
        self.0.inputs().symbols().to_vec()
    }

    fn reaction(&self, u: &str) -> PyResult<f64> {
        self.0.avg_reaction(&word(self.0.inputs(), u)?).map_err(err)
    }

    #[pyo3(signature = (tolerance=None))]
    fn reduce(&self, tolerance: Option<f64>) -> Self {
        Self(self.0.reduce_avg(&tol(tolerance)))
    }

    #[pyo3(signature = (other, tolerance=None))]
    fn equivalent(&self, other: &Self, tolerance: Option<f64>) -> PyResult<bool> {
        self.0.avg_equivalent(&other.0, &tol(tolerance)).map_err(err)
    }

    fn member(&self, cutpoint: f64, u: &str) -> PyResult<bool> {
        languages::member(&self.0, cutpoint, &word(self.0.inputs(), u)?).map_err(err)
    }

    fn language(&self, cutpoint: f64, max_len: usize) -> Vec<String> {
        words(self.0.inputs(), languages::enumerate(&self.0, cutpoint, max_len))
    }

    /// (clear, min_gap, witness or None)
    #[pyo3(signature = (cutpoint, delta, max_len=8, tolerance=None))]
    fn isolation(&self, cutpoint: f64, delta: f64, max_len: usize, tolerance: Option<f64>) -> PyResult<(bool, f64, Option<String>)> {
        let r = languages::isolation_scan(&self.0, cutpoint, delta, max_len, &tol(tolerance)).map_err(err)?;
        Ok(match r.status {
            IsolationStatus::ClearUpTo(_) => (true, r.min_gap, None),
            IsolationStatus::Refuted(w) => (false, r.min_gap, Some(self.0.inputs().format_word(&w))),
        })
    }

    /// (dfa, bound)
    fn extract_dfa(&self, cutpoint: f64, delta: f64) -> PyResult<(PyDfa, f64)> {
        let e = languages::extract_dfa(&self.0, cutpoint, delta).map_err(err)?;
        Ok((PyDfa(e.dfa), e.bound))
    }

    #[pyo3(signature = (tolerance=None))]
    fn ergodic(&self, tolerance: Option<f64>) -> bool {
        languages::ergodic_test(&self.0, &tol(tolerance)).ergodic
    }

    /// "all", "positive:<len>" or "unknown"
    #[pyo3(signature = (tolerance=None))]
    fn stability(&self, tolerance: Option<f64>) -> String {
        match languages::stability_check(&self.0, &tol(tolerance)) {
            Stability::StableAll => "all".into(),
            Stability::PositiveWordStable(l) => format!("positive:{}", l),
            Stability::Unknown => "unknown".into(),
        }
    }

    /// Suffix length k of a definite representation, or None.
    #[pyo3(signature = (cutpoint, delta, tolerance=None))]
    fn definite_k(&self, cutpoint: f64, delta: f64, tolerance: Option<f64>) -> PyResult<Option<usize>> {
        Ok(languages::definite_rep(&self.0, cutpoint, delta, &tol(tolerance))
            .map_err(err)?
            .map(|r| r.k))
    }

    fn to_json(&self) -> String {
        io::to_json(&Document::MoorePA(self.0.clone()))
    }

    fn __repr__(&self) -> String {
        format!("MoorePA(states={}, inputs={:?})", self.0.n(), self.0.inputs().symbols())
    }
}

#[pymethods]
impl PyGeneral {
    #[getter]
    fn states(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn inputs(&self) -> Vec<String> {
        self.0.inputs().symbols().to_vec()
    }

    #[getter]
    fn outputs(&self) -> Vec<String> {
        self.0.outputs().symbols().to_vec()
    }

    fn reaction(&self, u: &str, v: &str) -> PyResult<f64> {
        self.0
            .reaction(&word(self.0.inputs(), u)?, &word(self.0.outputs(), v)?)
            .map_err(err)
    }

    #[pyo3(signature = (tolerance=None))]
    fn reduce(&self, tolerance: Option<f64>) -> Self {
        Self(self.0.reduce(&tol(tolerance)))
    }

    #[pyo3(signature = (other, tolerance=None))]
    fn equivalent(&self, other: &Self, tolerance: Option<f64>) -> PyResult<bool> {
        self.0.equivalent(&other.0, &tol(tolerance)).map_err(err)
    }

    fn to_json(&self) -> String {
        io::to_json(&Document::GeneralPA(self.0.clone()))
    }

    fn __repr__(&self) -> String {
        format!(
            "GeneralPA(states={}, inputs={:?}, outputs={:?})",
            self.0.n(),
            self.0.inputs().symbols(),
            self.0.outputs().symbols()
        )
    }
}

#[pymethods]
impl PyLinear {
    #[new]
    fn new(inputs: Vec<String>, initial: Vec<f64>, trans: Vec<Vec<Vec<f64>>>, output: Vec<f64>) -> PyResult<Self> {
        let a = Alphabet::new(inputs).map_err(err)?;
        let m = trans
            .iter()
            .map(|t| probautomata::Matrix::from_rows(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        probautomata::LinearAutomaton::new(a, initial, m, output).map(Self).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn reaction(&self, u: &str) -> PyResult<f64> {
        self.0.reaction(&word(self.0.inputs(), u)?).map_err(err)
    }

    /// Values on all strings up to `depth`, in shortlex order.
    fn table(&self, depth: usize) -> Vec<f64> {
        self.0.table(depth).values().to_vec()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.combine(LaBinary::Sum, &other.0).map(Self).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.combine(LaBinary::Product, &other.0).map(Self).map_err(err)
    }

    fn convolve(&self, other: &Self) -> PyResult<Self> {
        self.0.combine(LaBinary::Convolution, &other.0).map(Self).map_err(err)
    }

    fn scale(&self, factor: f64) -> PyResult<Self> {
        self.0.unary(LaUnary::Scale(factor), &tol(None)).map(Self).map_err(err)
    }

    fn reverse(&self) -> PyResult<Self> {
        self.0.unary(LaUnary::Reverse, &tol(None)).map(Self).map_err(err)
    }

    fn iterate(&self) -> PyResult<Self> {
        self.0.unary(LaUnary::Iterate, &tol(None)).map(Self).map_err(err)
    }

    #[pyo3(signature = (other, tolerance=None))]
    fn equivalent(&self, other: &Self, tolerance: Option<f64>) -> PyResult<bool> {
        self.0.equivalent(&other.0, &tol(tolerance)).map_err(err)
    }

    /// Minimal automaton rebuilt from the Hankel matrix.
    #[pyo3(signature = (rank_bound=None, tolerance=None))]
    fn realize(&self, rank_bound: Option<usize>, tolerance: Option<f64>) -> PyResult<Self> {
        let bound = rank_bound.unwrap_or(self.0.dim());
        la::realize(&self.0.table(2 * bound), bound, &tol(tolerance)).map(Self).map_err(err)
    }

    fn expr(&self) -> String {
        la::la_to_rational_expr(&self.0).to_sexpr(self.0.inputs())
    }

    /// (pa, a) with pa(u) = a^{|u|+1}·f(u) + 1/(dim+2)
    #[pyo3(signature = (tolerance=None))]
    fn embed_pa(&self, tolerance: Option<f64>) -> PyResult<(PyMoore, f64)> {
        let (pa, a) = la::la_to_pa_affine(&self.0, &tol(tolerance)).map_err(err)?;
        Ok((PyMoore(pa), a))
    }

    #[pyo3(signature = (cutpoint, tolerance=None))]
    fn language_pa(&self, cutpoint: f64, tolerance: Option<f64>) -> PyResult<PyMoore> {
        la::la_language_pa(&self.0, cutpoint, &tol(tolerance)).map(PyMoore).map_err(err)
    }

    fn to_json(&self) -> String {
        io::to_json(&Document::LinearAutomaton(self.0.clone()))
    }

    fn __repr__(&self) -> String {
        format!("LinearAutomaton(dim={}, inputs={:?})", self.0.dim(), self.0.inputs().symbols())
    }
}

#[pymethods]
impl PyDfa {
    #[getter]
    fn states(&self) -> usize {
        self.0.n()
    }

    fn accepts(&self, u: &str) -> PyResult<bool> {
        Ok(self.0.accepts(&word(self.0.alphabet(), u)?))
    }

    fn language(&self, max_len: usize) -> Vec<String> {
        words(self.0.alphabet(), self.0.language(max_len))
    }

    fn minimize(&self) -> Self {
        Self(self.0.minimize())
    }

    fn to_pa(&self) -> PyMoore {
        PyMoore(probautomata::moore_pa::dfa_to_pa(&self.0))
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }

    fn to_json(&self) -> String {
        io::to_json(&Document::Dfa(self.0.clone()))
    }

    fn __repr__(&self) -> String {
        format!("Dfa(states={}, alphabet={:?})", self.0.n(), self.0.alphabet().symbols())
    }
}

#[pymodule]
fn probautomata_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMoore>()?;
    m.add_class::<PyGeneral>()?;
    m.add_class::<PyLinear>()?;
    m.add_class::<PyDfa>()?;
    m.add_function(wrap_pyfunction!(from_json, m)?)?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    Ok(())
}
