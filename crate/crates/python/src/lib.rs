//! Python bindings. Polynomials cross the boundary as `Poly` objects; any
//! argument that expects one also accepts an expression string or an int.
//! Reports come back as plain dicts.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use qlogcvx::cfrac;
use qlogcvx::logcvx::{self, Order};
use qlogcvx::posmat::{self, PolyMatrix, TpMode};
use qlogcvx::seqspec::{boros_moll_poly, family_spec, CoeffSeqSpec, FamilyId};
use qlogcvx::triangle::generate;

fn err(e: qlogcvx::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_dict<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Poly", module = "pyqlogcvx", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPoly(qlogcvx::Poly);

fn poly_arg(obj: &Bound<'_, PyAny>) -> PyResult<qlogcvx::Poly> {
    if let Ok(p) = obj.cast::<PyPoly>() {
        return Ok(p.get().0.clone());
    }
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(qlogcvx::Poly::from_int(n));
    }
    let text: String = obj.extract()?;
    text.parse().map_err(err)
}

fn poly_list(items: &Bound<'_, PyAny>) -> PyResult<Vec<qlogcvx::Poly>> {
    items.try_iter()?.map(|x| poly_arg(&x?)).collect()
}

fn wrap(polys: Vec<qlogcvx::Poly>) -> Vec<PyPoly> {
    polys.into_iter().map(PyPoly).collect()
}

#[pymethods]
impl PyPoly {
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        poly_arg(value).map(PyPoly)
    }

    #[staticmethod]
    fn from_coeffs(coeffs: Vec<i64>) -> Self {
        PyPoly(qlogcvx::Poly::from_ints(&coeffs))
    }

    /// Coefficients from `q^0` upward, as exact rational strings.
    fn coeffs(&self) -> Vec<String> {
        self.0.to_json_coeffs()
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn is_q_nonneg(&self) -> bool {
        self.0.is_q_nonneg()
    }

    /// Value at a rational point given as `"a/b"` or an int.
    fn eval(&self, x: &Bound<'_, PyAny>) -> PyResult<String> {
        let text = x.str()?.to_string();
        let r = qlogcvx::poly::parse_rational(&text)
            .ok_or_else(|| PyValueError::new_err(format!("not a rational: {text}")))?;
        Ok(qlogcvx::poly::rational_to_string(&self.0.eval(&r)))
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPoly(&self.0 + &poly_arg(other)?))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPoly(&self.0 - &poly_arg(other)?))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPoly(&poly_arg(other)? - &self.0))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPoly(&self.0 * &poly_arg(other)?))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __neg__(&self) -> Self {
        PyPoly(-&self.0)
    }

    fn __pow__(&self, exp: u32, _modulo: Option<u32>) -> Self {
        PyPoly(self.0.pow(exp))
    }

    /// Exact division; raises if the divisor does not divide.
    fn __floordiv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let d = poly_arg(other)?;
        if d.is_zero() {
            return Err(PyZeroDivisionError::new_err("division by the zero polynomial"));
        }
        self.0
            .exact_div(&d)
            .map(PyPoly)
            .ok_or_else(|| PyValueError::new_err(format!("{d} does not divide {}", self.0)))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// A family id or a JSON spec document.
fn spec_arg(spec: &str) -> PyResult<CoeffSeqSpec> {
    if spec.trim_start().starts_with('{') {
        CoeffSeqSpec::from_json(spec).map_err(err)
    } else {
        family_spec(family_arg(spec)?).map_err(err)
    }
}

fn family_arg(name: &str) -> PyResult<FamilyId> {
    name.parse().map_err(err)
}

#[pyfunction]
fn family_ids() -> Vec<&'static str> {
    FamilyId::ALL.iter().map(|id| id.name()).collect()
}

/// JSON for the spec of a family (or the spec itself, normalised).
#[pyfunction]
fn spec_json(spec: &str) -> PyResult<String> {
    Ok(spec_arg(spec)?.to_json())
}

/// `T_0..=T_n` of the continued-fraction expansion.
#[pyfunction]
#[pyo3(signature = (spec, n = 10))]
fn expand(spec: &str, n: usize) -> PyResult<Vec<PyPoly>> {
    if spec == FamilyId::BorosMoll.name() {
        return Ok((0..=n).map(|i| PyPoly(boros_moll_poly(i))).collect());
    }
    cfrac::expand(&spec_arg(spec)?, n).map(wrap).map_err(err)
}

#[pyfunction]
fn contract(spec: &str) -> PyResult<String> {
    Ok(cfrac::contract(&spec_arg(spec)?).map_err(err)?.to_json())
}

/// Rows `0..=n` of the recurrence triangle.
#[pyfunction]
#[pyo3(signature = (spec, n = 5))]
fn triangle(spec: &str, n: usize) -> PyResult<Vec<Vec<PyPoly>>> {
    let t = generate(&spec_arg(spec)?, n).map_err(err)?;
    Ok(t.rows().iter().map(|r| wrap(r.clone())).collect())
}

#[pyfunction]
fn l_operator(seq: &Bound<'_, PyAny>) -> PyResult<Vec<PyPoly>> {
    logcvx::l_operator(&poly_list(seq)?).map(wrap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (seq, m = 3))]
fn is_m_q_log_convex<'py>(py: Python<'py>, seq: &Bound<'py, PyAny>, m: usize) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &logcvx::is_m_q_log_convex(&poly_list(seq)?, m))
}

#[pyfunction]
#[pyo3(signature = (seq, size, offset = 0))]
fn hankel_det(seq: &Bound<'_, PyAny>, size: usize, offset: usize) -> PyResult<PyPoly> {
    let h = posmat::hankel(&poly_list(seq)?, size, offset).map_err(err)?;
    h.det().map(PyPoly).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (rows, order, mode = "all"))]
fn is_q_tp<'py>(py: Python<'py>, rows: &Bound<'py, PyList>, order: usize, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    let rows = rows.iter().map(|r| poly_list(&r)).collect::<PyResult<Vec<_>>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    let mode: TpMode = mode.parse().map_err(err)?;
    let m = PolyMatrix::from_rows(rows);
    to_dict(py, &posmat::is_q_tp(&m, order, mode).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (spec, order = 3, kmax = 20))]
fn check_thm_main<'py>(py: Python<'py>, spec: &str, order: usize, kmax: usize) -> PyResult<Bound<'py, PyAny>> {
    let which = Order::from_level(order).map_err(err)?;
    to_dict(py, &logcvx::check_thm_main(&spec_arg(spec)?, which, kmax).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (spec, kmax = 20))]
fn check_stieltjes<'py>(py: Python<'py>, spec: &str, kmax: usize) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &logcvx::check_stieltjes(&spec_arg(spec)?, kmax).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (e, g, h, order = 3))]
fn check_riordan<'py>(
    py: Python<'py>,
    e: &Bound<'py, PyAny>,
    g: &Bound<'py, PyAny>,
    h: &Bound<'py, PyAny>,
    order: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let v = logcvx::check_riordan(&poly_arg(e)?, &poly_arg(g)?, &poly_arg(h)?, order).map_err(err)?;
    to_dict(py, &v)
}

#[pyfunction]
#[pyo3(signature = (trials = 100, seed = 42, window = 5, order = 1))]
fn explore_conjecture(py: Python<'_>, trials: u64, seed: u64, window: usize, order: usize) -> PyResult<Bound<'_, PyAny>> {
    let report = py
        .detach(|| logcvx::explore_conjecture(trials, seed, window, order))
        .map_err(err)?;
    to_dict(py, &report)
}

#[pymodule]
pub fn pyqlogcvx(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(family_ids, m)?)?;
    m.add_function(wrap_pyfunction!(spec_json, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(contract, m)?)?;
    m.add_function(wrap_pyfunction!(triangle, m)?)?;
    m.add_function(wrap_pyfunction!(l_operator, m)?)?;
    m.add_function(wrap_pyfunction!(is_m_q_log_convex, m)?)?;
    m.add_function(wrap_pyfunction!(hankel_det, m)?)?;
    m.add_function(wrap_pyfunction!(is_q_tp, m)?)?;
    m.add_function(wrap_pyfunction!(check_thm_main, m)?)?;
    m.add_function(wrap_pyfunction!(check_stieltjes, m)?)?;
    m.add_function(wrap_pyfunction!(check_riordan, m)?)?;
    m.add_function(wrap_pyfunction!(explore_conjecture, m)?)?;
    Ok(())
}
