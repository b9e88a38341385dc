//! Python bindings: characters, local representations, cusps and newforms.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cuspvan::cusps::{all_cusps, Cusp};
use cuspvan::gauss_eps;
use cuspvan::global::{self, NewformLocalData};
use cuspvan::local_reps::{self, AbstractLocalData, LocalData, LocalRepDescriptor};
use cuspvan::padic_chars::{self, PadicCharacter};
use cuspvan::verify::Suite;
use cuspvan::whittaker;

create_exception!(cuspvan, CuspvanError, PyValueError);

fn err(e: cuspvan::Error) -> PyErr {
    CuspvanError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    CuspvanError::new_err(format!("invalid JSON: {e}"))
}

/// Parse a JSON string into Python objects with the standard `json` module.
fn to_python<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (s,))
}

#[pyclass(name = "PadicCharacter", frozen, module = "cuspvan")]
struct PyCharacter {
    inner: PadicCharacter,
}

#[pymethods]
impl PyCharacter {
    #[new]
    #[pyo3(signature = (p, k, exponents, varpi = Complex64::new(1.0, 0.0)))]
    fn new(p: u64, k: u32, exponents: Vec<i64>, varpi: Complex64) -> PyResult<Self> {
        Ok(PyCharacter {
            inner: PadicCharacter::new(p, k, &exponents, varpi).map_err(err)?,
        })
    }

    #[staticmethod]
    fn trivial(p: u64) -> PyResult<Self> {
        Ok(PyCharacter {
            inner: PadicCharacter::trivial(p, 0).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyCharacter {
            inner: serde_json::from_str(s).map_err(json_err)?,
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("character serializes")
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    #[getter]
    fn exponents(&self) -> Vec<u64> {
        self.inner.exponents().to_vec()
    }

    #[getter]
    fn varpi_value(&self) -> Complex64 {
        self.inner.varpi_value()
    }

    fn conductor(&self) -> u32 {
        self.inner.conductor()
    }

    /// Value at a unit `u`.
    fn value(&self, u: i64) -> PyResult<Complex64> {
        self.inner.value(u).map_err(err)
    }

    fn __mul__(&self, other: &PyCharacter) -> PyResult<Self> {
        Ok(PyCharacter {
            inner: self.inner.mul(&other.inner).map_err(err)?,
        })
    }

    fn inverse(&self) -> Self {
        PyCharacter {
            inner: self.inner.inverse(),
        }
    }

    fn __pow__(&self, n: i64, _modulo: Option<i64>) -> Self {
        PyCharacter {
            inner: self.inner.pow(n),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "PadicCharacter(p={}, k={}, exponents={:?}, conductor={})",
            self.inner.p(),
            self.inner.k(),
            self.inner.exponents(),
            self.inner.conductor()
        )
    }
}

/// All characters mod `p^k` (or of conductor exactly `k`).
#[pyfunction]
#[pyo3(signature = (p, k, exact = false))]
fn enumerate_chars(p: u64, k: u32, exact: bool) -> PyResult<Vec<PyCharacter>> {
    Ok(padic_chars::enumerate_chars(p, k, exact)
        .map_err(err)?
        .into_iter()
        .map(|inner| PyCharacter { inner })
        .collect())
}

/// `G(v p^-r, mu)` by direct summation.
#[pyfunction]
fn gauss_sum(v: i64, r: i32, mu: &PyCharacter) -> PyResult<Complex64> {
    Ok(gauss_eps::gauss_sum(v, r, &mu.inner).map_err(err)?.value)
}

#[pyfunction]
fn gauss_sum_closed(v: i64, r: i32, mu: &PyCharacter) -> PyResult<Complex64> {
    gauss_eps::gauss_sum_closed(v, r, &mu.inner).map_err(err)
}

#[pyfunction]
fn root_number(chi: &PyCharacter) -> PyResult<Complex64> {
    gauss_eps::root_number(&chi.inner).map_err(err)
}

#[pyclass(name = "LocalRep", frozen, module = "cuspvan")]
struct PyLocalRep {
    inner: LocalRepDescriptor,
}

#[pymethods]
impl PyLocalRep {
    #[staticmethod]
    fn principal_series(chi1: &PyCharacter, chi2: &PyCharacter) -> PyResult<Self> {
        Ok(PyLocalRep {
            inner: LocalRepDescriptor::principal_series(chi1.inner.clone(), chi2.inner.clone())
                .map_err(err)?,
        })
    }

    #[staticmethod]
    fn steinberg(chi: &PyCharacter) -> Self {
        PyLocalRep {
            inner: LocalRepDescriptor::steinberg(chi.inner.clone()),
        }
    }

    #[staticmethod]
    fn supercuspidal(a0: u32, m0: u32, chi: &PyCharacter) -> PyResult<Self> {
        Ok(PyLocalRep {
            inner: LocalRepDescriptor::supercuspidal(a0, m0, chi.inner.clone()).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyLocalRep {
            inner: serde_json::from_str(s).map_err(json_err)?,
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("descriptor serializes")
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    fn conductor(&self) -> u32 {
        self.inner.conductor()
    }

    fn rep_type(&self) -> String {
        format!("{:?}", self.inner.rep_type())
    }

    fn d_pi(&self, l: u32) -> PyResult<u32> {
        self.inner.d_pi(l).map_err(err)
    }

    /// Closed-form vanishing index.
    fn vanishing_index(&self, l: u32) -> PyResult<u32> {
        local_reps::vanishing_index_table(&self.inner.abstract_data(), self.inner.p(), l).map_err(err)
    }

    fn vanishing_index_oracle(&self, l: u32) -> PyResult<u32> {
        local_reps::vanishing_index_oracle(&self.inner, l).map_err(err)
    }

    fn vanishing_index_definitional(&self, l: u32) -> PyResult<u32> {
        whittaker::vanishing_index_definitional(&self.inner, l).map_err(err)
    }

    /// `W(g(t, l, v))`.
    fn whittaker_value(&self, t: i32, l: u32, v: i64) -> PyResult<Complex64> {
        whittaker::whittaker_value(&self.inner, t, l, v).map_err(err)
    }

    /// `(v, W(g(t, l, v)))` for every unit `v` mod `p^l`.
    fn whittaker_values(&self, t: i32, l: u32) -> PyResult<Vec<(u64, Complex64)>> {
        let table = whittaker::c_table(&self.inner, l, t).map_err(err)?;
        Ok(table
            .values(t)
            .map_err(err)?
            .into_iter()
            .map(|w| (w.v, w.value))
            .collect())
    }

    fn toral_whittaker(&self, r: i32) -> PyResult<Complex64> {
        self.inner.toral_whittaker(r).map_err(err)
    }

    fn contragredient(&self) -> Self {
        PyLocalRep {
            inner: self.inner.contragredient(),
        }
    }

    fn twist(&self, mu: &PyCharacter) -> PyResult<Self> {
        Ok(PyLocalRep {
            inner: self.inner.twist(&mu.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("LocalRep({})", self.to_json())
    }
}

/// Closed-form vanishing index from conductor data given as JSON.
#[pyfunction]
fn vanishing_index_table(p: u64, conductor_data: &str, l: u32) -> PyResult<u32> {
    let a: AbstractLocalData = serde_json::from_str(conductor_data).map_err(json_err)?;
    local_reps::vanishing_index_table(&a, p, l).map_err(err)
}

#[pyclass(name = "Cusp", frozen, module = "cuspvan")]
struct PyCusp {
    inner: Cusp,
}

#[pymethods]
impl PyCusp {
    #[new]
    #[allow(non_snake_case)]
    fn new(a: i64, L: u64, N: u64) -> PyResult<Self> {
        Ok(PyCusp {
            inner: Cusp::new(a, L, N).map_err(err)?,
        })
    }

    #[getter]
    fn a(&self) -> i64 {
        self.inner.a
    }

    #[getter(L)]
    fn denominator(&self) -> u64 {
        self.inner.l
    }

    #[getter(N)]
    fn level(&self) -> u64 {
        self.inner.n
    }

    fn width(&self) -> u64 {
        self.inner.width()
    }

    #[pyo3(signature = (m = 1))]
    fn delta(&self, m: u64) -> PyResult<u64> {
        self.inner.delta(m).map_err(err)
    }

    fn canonical(&self) -> Self {
        PyCusp {
            inner: self.inner.canonical(),
        }
    }

    /// `[[a, b], [L, d]]`, the inverse of the scaling matrix.
    fn scaling_matrix_inverse(&self) -> [[i64; 2]; 2] {
        self.inner.scaling_matrix().sigma_inverse()
    }

    fn __eq__(&self, other: &PyCusp) -> bool {
        cuspvan::cusps::are_equivalent(&self.inner, &other.inner)
    }

    fn __repr__(&self) -> String {
        format!("Cusp({}/{}, N={})", self.inner.a, self.inner.l, self.inner.n)
    }
}

/// Representatives of all cusps of X0(N).
#[pyfunction]
#[allow(non_snake_case)]
fn cusps(N: u64) -> PyResult<Vec<PyCusp>> {
    Ok(all_cusps(N)
        .map_err(err)?
        .into_iter()
        .map(|inner| PyCusp { inner })
        .collect())
}

#[pyfunction]
#[allow(non_snake_case)]
fn cusp_count(N: u64) -> PyResult<u64> {
    cuspvan::cusps::cusp_count(N).map_err(err)
}

#[pyclass(name = "Newform", frozen, module = "cuspvan")]
struct PyNewform {
    inner: NewformLocalData,
}

#[pymethods]
impl PyNewform {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyNewform {
            inner: NewformLocalData::from_json_str(s).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("newform data serializes")
    }

    #[getter(N)]
    fn level(&self) -> u64 {
        self.inner.n
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k
    }

    #[getter(M)]
    fn character_conductor(&self) -> u64 {
        self.inner.m
    }

    /// The vanishing report at denominator `L` as a dict.
    #[allow(non_snake_case)]
    fn e_f<'py>(&self, py: Python<'py>, L: u64) -> PyResult<Bound<'py, PyAny>> {
        let report = global::e_f(&self.inner, L).map_err(err)?;
        to_python(py, &serde_json::to_string(&report).expect("report serializes"))
    }

    /// Ramification index at cusps of denominator `L` for an elliptic-curve newform.
    #[allow(non_snake_case)]
    fn elliptic_ramification(&self, L: u64) -> PyResult<u64> {
        Ok(global::elliptic_ramification(&self.inner, L).map_err(err)?.e)
    }

    /// `a_f(r; cusp)` in the expansion with respect to the standard scaling matrix.
    fn fourier_at_cusp(&self, r: u64, cusp: &PyCusp, a_r0: Complex64) -> PyResult<Complex64> {
        let sigma = cusp.inner.scaling_matrix();
        global::fourier_at_cusp(&self.inner, r, &cusp.inner, &sigma, a_r0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Newform(k={}, N={}, M={})", self.inner.k, self.inner.n, self.inner.m)
    }
}

/// Local data as accepted in the `locals` map of a newform, round-tripped to JSON.
#[pyfunction]
fn normalize_local_json(s: &str) -> PyResult<String> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(json_err)?;
    Ok(LocalData::from_json(&v).map_err(err)?.to_json().to_string())
}

#[pyfunction]
#[pyo3(signature = (max_n2 = 8, max_n3 = 5))]
fn brunault_checks<'py>(py: Python<'py>, max_n2: u32, max_n3: u32) -> PyResult<Bound<'py, PyAny>> {
    let report = global::brunault_checks(max_n2, max_n3).map_err(err)?;
    to_python(py, &serde_json::to_string(&report).expect("report serializes"))
}

/// Run one self-check suite; returns `(passed, cases, smallest failure)`.
#[pyfunction]
fn verify(suite: &str) -> PyResult<(bool, usize, Option<String>)> {
    let s: Suite = suite.parse().map_err(err)?;
    let r = s.run();
    Ok((r.passed(), r.cases, r.witness().map(str::to_owned)))
}

#[pymodule]
#[pyo3(name = "cuspvan")]
fn pycuspvan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CuspvanError", m.py().get_type::<CuspvanError>())?;
    m.add_class::<PyCharacter>()?;
    m.add_class::<PyLocalRep>()?;
    m.add_class::<PyCusp>()?;
    m.add_class::<PyNewform>()?;
    m.add_function(wrap_pyfunction!(enumerate_chars, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_sum, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_sum_closed, m)?)?;
    m.add_function(wrap_pyfunction!(root_number, m)?)?;
    m.add_function(wrap_pyfunction!(vanishing_index_table, m)?)?;
    m.add_function(wrap_pyfunction!(cusps, m)?)?;
    m.add_function(wrap_pyfunction!(cusp_count, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_local_json, m)?)?;
    m.add_function(wrap_pyfunction!(brunault_checks, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
