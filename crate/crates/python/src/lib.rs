//! Python bindings: heights, instances, bounds and verification.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use logbound::balls::{verify_instance, RealEnclosure};
use logbound::boundengine::json::DIGITS;
use logbound::boundengine::{bound, c5, BoundMode};
use logbound::cli::{self, family_generate, Family, FieldSpec};
use logbound::heights::{height_projective, subspace_height, HeightVariant};
use logbound::liematrix::exp_exact;
use logbound::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) | Error::Dimension(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let json = PyModule::import(py, "json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

/// A closed interval with decimal endpoints rounded outward.
#[pyclass(frozen, skip_from_py_object, module = "logbound_py")]
#[derive(Clone)]
struct Interval {
    #[pyo3(get)]
    lower: String,
    #[pyo3(get)]
    upper: String,
    mid: f64,
}

impl From<&RealEnclosure> for Interval {
    fn from(x: &RealEnclosure) -> Self {
        let (lower, upper) = x.to_decimal_strings(DIGITS);
        Interval { lower, upper, mid: x.to_f64() }
    }
}

#[pymethods]
impl Interval {
    /// Midpoint as a float.
    fn __float__(&self) -> f64 {
        self.mid
    }

    fn contains(&self, x: f64) -> bool {
        let lo: f64 = self.lower.parse().unwrap_or(f64::NEG_INFINITY);
        let hi: f64 = self.upper.parse().unwrap_or(f64::INFINITY);
        lo <= x && x <= hi
    }

    fn __repr__(&self) -> String {
        format!("Interval([{}, {}])", self.lower, self.upper)
    }
}

fn parse_variant(s: &str) -> PyResult<HeightVariant> {
    s.parse().map_err(to_py)
}

fn parse_mode(s: &str) -> PyResult<BoundMode> {
    s.parse().map_err(to_py)
}

/// Height of a projective point given as a JSON array string or a list of
/// integers / "p/q" strings.
#[pyfunction]
#[pyo3(signature = (point, field = "Q", variant = "h", precision = 128))]
fn height(point: &Bound<'_, PyAny>, field: &str, variant: &str, precision: u32) -> PyResult<Interval> {
    let text = match point.extract::<String>() {
        Ok(s) => s,
        Err(_) => {
            let json = PyModule::import(point.py(), "json")?;
            json.call_method1("dumps", (point,))?.extract()?
        }
    };
    let k = FieldSpec::from_shorthand(field).and_then(|f| f.build()).map_err(to_py)?;
    let p = cli::parse_point(&k, &text).map_err(to_py)?;
    let h = height_projective(&p, parse_variant(variant)?, precision).map_err(to_py)?;
    Ok(Interval::from(&h))
}

/// `2^(32m+24) m^(m^2+8m+13) D^(m+5)` as a decimal integer string.
#[pyfunction]
fn c5_exact(m: usize, degree: usize) -> String {
    c5(m, degree, 64).integer_factor.to_string()
}

/// A validated instance: a K-point `u` and a subspace `W` of its Lie algebra.
#[pyclass(module = "logbound_py")]
struct Instance {
    inner: cli::Instance,
}

#[pymethods]
impl Instance {
    /// A member of a built-in family (`remark10`, `remark11`).
    #[staticmethod]
    #[pyo3(signature = (name, k, precision = 128))]
    fn family(name: &str, k: u64, precision: u32) -> PyResult<Self> {
        let fam: Family = name.parse().map_err(to_py)?;
        Ok(Instance { inner: family_generate(fam, k, precision).map_err(to_py)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Instance { inner: cli::Instance::from_json(text).map_err(to_py)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn id(&self) -> String {
        self.inner.id.clone()
    }

    #[pyo3(signature = (variant = "h"))]
    fn subspace_height(&self, variant: &str) -> PyResult<Interval> {
        let h = subspace_height(&self.inner.subspace, parse_variant(variant)?, self.inner.options.precision).map_err(to_py)?;
        Ok(Interval::from(&h))
    }

    /// `exp(u)` exactly, as rows of coefficient-string lists.
    fn exp_u(&self) -> Vec<Vec<Vec<String>>> {
        exp_exact(&self.inner.kpoint).entries().iter().map(|r| r.iter().map(|x| x.to_strings()).collect()).collect()
    }

    /// Full bound report as a dict.
    #[pyo3(signature = (mode = "theorem"))]
    fn bound(&self, py: Python<'_>, mode: &str) -> PyResult<Py<PyAny>> {
        let m = parse_mode(mode)?;
        let i = &self.inner;
        let r = py
            .detach(|| bound(&i.kpoint, &i.subspace, m, i.options.search_budget, i.options.precision))
            .map_err(to_py)?;
        json_to_py(py, &r.to_json())
    }

    /// Verification report as a dict; `ok` is true when the bound holds.
    #[pyo3(signature = (mode = "theorem"))]
    fn verify(&self, py: Python<'_>, mode: &str) -> PyResult<Py<PyAny>> {
        let m = parse_mode(mode)?;
        let i = &self.inner;
        let r = py
            .detach(|| verify_instance(&i.id, &i.kpoint, &i.subspace, m, i.options.search_budget, i.options.precision))
            .map_err(to_py)?;
        json_to_py(py, &r.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Instance({:?}, m={}, dim W={})", self.inner.id, self.inner.kpoint.m(), self.inner.subspace.dim())
    }
}

#[pymodule]
fn logbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Interval>()?;
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(height, m)?)?;
    m.add_function(wrap_pyfunction!(c5_exact, m)?)?;
    Ok(())
}
