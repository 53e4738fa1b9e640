//! Python bindings: degenerations, mixed Hodge structures and the
//! closed-form tables. Reports come back as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use lmhs::filtration::{check_weight_axioms, weight_filtration as weight_filtration_core};
use lmhs::geomodels::{
    fiber_product_dim_check, full_signature, hashimoto_sano_pic_fixture, kahler_index_formula, kodaira_degeneration,
    odp_index_formula, odp_input, odp_semistable_model, random_resolution, sano_negatives as sano_negatives_core,
    HodgeNumbers, PencilData,
};
use lmhs::mhs::{random_polarized_mhs, signature_table, MhsData, MhsJson, RandomMhsConfig};
use lmhs::orbit::{verify_identities as verify_identities_core, verify_main_theorem, OrbitOptions};
use lmhs::steenbrink::{nearby_hodge_index, validate, DegenerationData};
use lmhs::{Matrix, Scalar};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn value_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any().unbind(),
            (_, Some(u)) => u.into_pyobject(py)?.into_any().unbind(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, value_to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn to_py<T: Serialize>(py: Python<'_>, report: &T) -> PyResult<Py<PyAny>> {
    value_to_py(py, &serde_json::to_value(report).map_err(err)?)
}

/// Entries may be ints or strings such as `"1/2"` or `"1/2+3*i"`.
fn matrix_from_py(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Matrix<Scalar>> {
    let parsed = rows
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.str()?.to_string().parse::<Scalar>().map_err(err)).collect())
        .collect::<PyResult<Vec<Vec<Scalar>>>>()?;
    Matrix::from_rows(parsed).map_err(err)
}

/// Central-fiber data of a semistable degeneration.
#[pyclass(name = "Degeneration", module = "lmhs_py")]
pub struct PyDegeneration {
    inner: DegenerationData,
}

#[pymethods]
impl PyDegeneration {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDegeneration { inner: DegenerationData::from_json(text).map_err(err)? })
    }

    /// Kodaira's degeneration of Hopf surfaces with Hirzebruch index `e`.
    #[staticmethod]
    #[pyo3(signature = (e = 1))]
    fn kodaira(e: i64) -> PyResult<Self> {
        Ok(PyDegeneration { inner: kodaira_degeneration(e).map_err(err)? })
    }

    /// Semistable model of a random ordinary-double-point degeneration.
    #[staticmethod]
    #[pyo3(signature = (m, l, r, seed = 0))]
    fn odp(m: usize, l: usize, r: usize, seed: u64) -> PyResult<Self> {
        let res = random_resolution(m, l, r, seed).map_err(err)?;
        let input = odp_input(&res).map_err(err)?;
        Ok(PyDegeneration { inner: odp_semistable_model(&res, &input).map_err(err)? })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &validate(&self.inner))
    }

    /// Weight criterion in every degree and, when it holds, the nearby index.
    fn nearby_hodge_index(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &nearby_hodge_index(&self.inner).map_err(err)?)
    }
}

/// A mixed Hodge structure `(H, W, F, N, S)` with central weight `d`.
#[pyclass(name = "MixedHodgeStructure", module = "lmhs_py")]
pub struct PyMhs {
    inner: MhsData,
}

#[pymethods]
impl PyMhs {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: MhsJson = serde_json::from_str(text).map_err(err)?;
        Ok(PyMhs { inner: MhsData::from_json(&j).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (seed, max_dim = 10, max_d = 4))]
    fn random_polarized(seed: u64, max_dim: usize, max_d: i64) -> PyResult<Self> {
        let cfg = RandomMhsConfig { max_dim, max_d, ..RandomMhsConfig::default() };
        Ok(PyMhs { inner: random_polarized_mhs(seed, &cfg).map_err(err)?.0 })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn d(&self) -> i64 {
        self.inner.d
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner.to_json()).map_err(err)
    }

    fn signature_table(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &signature_table(&self.inner).map_err(err)?)
    }

    /// Orbit signatures against the closed formula, with `z = a + it`.
    #[pyo3(signature = (a = "0", t0 = "1024"))]
    fn verify_main_theorem(&self, py: Python<'_>, a: &str, t0: &str) -> PyResult<Py<PyAny>> {
        let opts = OrbitOptions { a: a.parse().map_err(err)?, t0: t0.parse().map_err(err)?, ..OrbitOptions::default() };
        to_py(py, &verify_main_theorem(&self.inner, &opts).map_err(err)?)
    }
}

/// `W(N, d)` as `{k: dim W_k}` plus an axiom check.
#[pyfunction]
fn weight_filtration(py: Python<'_>, n: Vec<Vec<Bound<'_, PyAny>>>, d: i64) -> PyResult<Py<PyAny>> {
    let n = matrix_from_py(n)?;
    let w = weight_filtration_core(&n, d).map_err(err)?;
    let axioms = check_weight_axioms(&w, &n, d);
    let dims: Vec<(i64, usize)> = match w.range() {
        Some((lo, hi)) => (lo..=hi).map(|k| (k, w.get(k).dim())).collect(),
        None => Vec::new(),
    };
    to_py(py, &serde_json::json!({ "dims": dims, "axioms_ok": axioms.ok, "failures": axioms.failures }))
}

/// Number of identities checked, and whether all hold.
#[pyfunction]
fn verify_identities(max_n: usize) -> PyResult<(usize, bool)> {
    let checks = verify_identities_core(max_n, None).map_err(err)?;
    Ok((checks.len(), checks.iter().all(|c| c.ok)))
}

#[pyfunction]
fn kahler_index(hodge: Vec<Vec<usize>>, m: usize, p: i64) -> PyResult<(usize, usize)> {
    kahler_index_formula(&HodgeNumbers { h: hodge }, m, p).map_err(err)
}

#[pyfunction]
fn hodge_signature(hodge: Vec<Vec<usize>>) -> i64 {
    full_signature(&HodgeNumbers { h: hodge })
}

#[pyfunction]
fn sano_negatives(py: Python<'_>, m: usize, a: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &sano_negatives_core(m, a).map_err(err)?)
}

#[pyfunction]
fn hashimoto_sano(py: Python<'_>, a: i64) -> PyResult<Py<PyAny>> {
    to_py(py, &hashimoto_sano_pic_fixture(a).map_err(err)?)
}

/// Closed form and semistable model for a random ODP degeneration.
#[pyfunction]
#[pyo3(signature = (m, l, r, seed = 0))]
fn odp_two_paths(py: Python<'_>, m: usize, l: usize, r: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let res = random_resolution(m, l, r, seed).map_err(err)?;
    let input = odp_input(&res).map_err(err)?;
    let closed = odp_index_formula(&input).map_err(err)?;
    let model = nearby_hodge_index(&odp_semistable_model(&res, &input).map_err(err)?).map_err(err)?;
    to_py(py, &serde_json::json!({ "closed_form": closed, "model": model.nearby }))
}

/// Fiber-product check for two pencils given as JSON.
#[pyfunction]
fn fiber_product_check(py: Python<'_>, pencils_json: &str) -> PyResult<Py<PyAny>> {
    let pencils: [PencilData; 2] = serde_json::from_str(pencils_json).map_err(err)?;
    to_py(py, &fiber_product_dim_check(&pencils).map_err(err)?)
}

#[pymodule]
fn lmhs_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDegeneration>()?;
    m.add_class::<PyMhs>()?;
    m.add_function(wrap_pyfunction!(weight_filtration, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    m.add_function(wrap_pyfunction!(kahler_index, m)?)?;
    m.add_function(wrap_pyfunction!(hodge_signature, m)?)?;
    m.add_function(wrap_pyfunction!(sano_negatives, m)?)?;
    m.add_function(wrap_pyfunction!(hashimoto_sano, m)?)?;
    m.add_function(wrap_pyfunction!(odp_two_paths, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_product_check, m)?)?;
    Ok(())
}
