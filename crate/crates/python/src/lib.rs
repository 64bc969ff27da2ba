//! Python bindings for `cbdiv`. Rationals cross the boundary as reduced
//! `"p/q"` strings, which `fractions.Fraction` parses directly.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cbdiv::certificate::{self, Method, Status};
use cbdiv::divisor::{self as cbd, Partition};
use cbdiv::fusion::FusionRing;
use cbdiv::rational::format;
use cbdiv::{json, AlgebraId, AlgebraTables, Family, Weight};

fn err(e: cbdiv::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn algebra_id(family: &str, rank: usize) -> PyResult<AlgebraId> {
    let f: Family = family.parse().map_err(err)?;
    AlgebraId::new(f, rank).map_err(err)
}

fn ring_and_weights(family: &str, rank: usize, level: u64, weights: &[String]) -> PyResult<(FusionRing, Vec<Weight>)> {
    let id = algebra_id(family, rank)?;
    let ring = FusionRing::for_algebra(id, level).map_err(err)?;
    let entries = weights
        .iter()
        .map(|w| Weight::parse(w, rank))
        .collect::<cbdiv::Result<Vec<_>>>()
        .map_err(err)?;
    Ok((ring, entries))
}

/// Root-system data for one simple Lie algebra.
#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    tables: Arc<AlgebraTables>,
}

#[pymethods]
impl PyAlgebra {
    #[new]
    fn new(family: &str, rank: usize) -> PyResult<Self> {
        let tables = AlgebraTables::build(algebra_id(family, rank)?).map_err(err)?;
        Ok(PyAlgebra {
            tables: Arc::new(tables),
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.tables.rank()
    }

    #[getter]
    fn dual_coxeter(&self) -> u64 {
        self.tables.dual_coxeter
    }

    #[getter]
    fn comarks(&self) -> Vec<u64> {
        self.tables.comarks.clone()
    }

    fn level_weights(&self, level: u64) -> Vec<String> {
        self.tables.level_weights(level).iter().map(|w| w.to_string()).collect()
    }

    fn dual_weight(&self, weight: &str) -> PyResult<String> {
        let w = Weight::parse(weight, self.tables.rank()).map_err(err)?;
        Ok(self.tables.dual_weight(&w).map_err(err)?.to_string())
    }

    fn trace_anomaly(&self, level: u64, weight: &str) -> PyResult<String> {
        let w = Weight::parse(weight, self.tables.rank()).map_err(err)?;
        Ok(format(&self.tables.trace_anomaly(level, &w).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Algebra('{}', {})", self.tables.id.family.letter(), self.tables.rank())
    }
}

/// A class `Σ a_i ψ_i − Σ c_{I,J} D_{I,J}` on M_{0,n}.
#[pyclass(name = "Divisor", frozen, eq)]
#[derive(PartialEq)]
struct PyDivisor {
    inner: cbd::DivisorClass,
}

#[pymethods]
impl PyDivisor {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDivisor {
            inner: json::divisor_from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        json::divisor_to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn psi(&self) -> Vec<String> {
        self.inner.psi().iter().map(format).collect()
    }

    /// Nonzero boundary coefficients as `(side, coeff)` with `1 ∈ side`.
    #[getter]
    fn boundary(&self) -> Vec<(Vec<usize>, String)> {
        self.inner
            .boundary()
            .iter()
            .map(|(p, c)| (p.side().to_vec(), format(c)))
            .collect()
    }

    fn coefficient(&self, side: Vec<usize>) -> PyResult<String> {
        let p = Partition::new(self.inner.n(), &side).map_err(err)?;
        Ok(format(&self.inner.boundary_coefficient(&p)))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __repr__(&self) -> String {
        format!("Divisor({})", self.to_json())
    }
}

/// Rational weights on the edges of the complete graph on `1..n`.
#[pyclass(name = "Weighting", eq)]
#[derive(PartialEq)]
struct PyWeighting {
    inner: certificate::EdgeWeighting,
}

#[pymethods]
impl PyWeighting {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        Ok(PyWeighting {
            inner: certificate::EdgeWeighting::zero(n).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyWeighting {
            inner: json::weighting_from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        json::weighting_to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<String> {
        Ok(format(self.inner.get(i, j).map_err(err)?))
    }

    fn set(&mut self, i: usize, j: usize, w: &str) -> PyResult<()> {
        let x = cbdiv::rational::parse(w).map_err(err)?;
        self.inner.set(i, j, x).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Weighting({})", self.to_json())
    }
}

#[pyfunction]
#[pyo3(signature = (family, rank, weights, level = 1))]
fn rank(family: &str, rank: usize, weights: Vec<String>, level: u64) -> PyResult<u64> {
    let (ring, entries) = ring_and_weights(family, rank, level, &weights)?;
    ring.tuple(entries.clone()).map_err(err)?;
    ring.rank(&entries).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (family, rank, weights, level = 1))]
fn divisor(family: &str, rank: usize, weights: Vec<String>, level: u64) -> PyResult<PyDivisor> {
    let (ring, entries) = ring_and_weights(family, rank, level, &weights)?;
    let t = ring.tuple(entries).map_err(err)?;
    Ok(PyDivisor {
        inner: cbd::conformal_blocks_divisor(&ring, &t).map_err(err)?,
    })
}

/// Vertex residuals, minimum cut slack, failing cuts and the verdict.
#[pyfunction]
fn check_certificate<'py>(py: Python<'py>, d: &PyDivisor, w: &PyWeighting) -> PyResult<Bound<'py, PyDict>> {
    let r = certificate::check_certificate(&d.inner, &w.inner).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("verdict", r.verdict)?;
    out.set_item("min_cut_slack", format(&r.min_cut_slack))?;
    out.set_item("vertex_residuals", r.vertex_residuals.iter().map(format).collect::<Vec<_>>())?;
    out.set_item(
        "failing",
        r.failing
            .iter()
            .map(|(p, s)| (p.side().to_vec(), format(s)))
            .collect::<Vec<_>>(),
    )?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (family, rank, weights, level = 1, lp_cap = certificate::DEFAULT_LP_CAP))]
fn certify<'py>(
    py: Python<'py>,
    family: &str,
    rank: usize,
    weights: Vec<String>,
    level: u64,
    lp_cap: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let (ring, entries) = ring_and_weights(family, rank, level, &weights)?;
    let t = ring.tuple(entries).map_err(err)?;
    let d = certificate::decide_effectivity(&ring, &t, lp_cap).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item(
        "status",
        match d.status {
            Status::Certified => "certified",
            Status::NoCertificate => "no-certificate",
            Status::Undecided => "undecided",
        },
    )?;
    out.set_item(
        "method",
        d.method.map(|m| match m {
            Method::ZeroClass => "zero-class",
            Method::ExplicitB => "explicit-B",
            Method::ExplicitD => "explicit-D",
            Method::Lp => "lp",
        }),
    )?;
    out.set_item("divisor", PyDivisor { inner: d.divisor })?;
    out.set_item("weighting", d.witness.map(|w| PyWeighting { inner: w }))?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (d, lp_cap = certificate::DEFAULT_LP_CAP))]
fn lp_search(d: &PyDivisor, lp_cap: usize) -> PyResult<Option<PyWeighting>> {
    Ok(certificate::lp_feasible(&d.inner, lp_cap)
        .map_err(err)?
        .map(|w| PyWeighting { inner: w }))
}

/// Whether the level-N class of `(Nω_1)^n` on B_r is N times the level-one class.
#[pyfunction]
#[allow(non_snake_case)]
fn scale_check(r: usize, n: usize, N: u64) -> PyResult<bool> {
    Ok(cbd::scale_check(r, n, N).map_err(err)?.equal)
}

/// Per-split bound checks for a level-one B/D tuple.
#[pyfunction]
fn verify_proposition<'py>(
    py: Python<'py>,
    family: &str,
    rank: usize,
    weights: Vec<String>,
) -> PyResult<Bound<'py, PyDict>> {
    let (ring, entries) = ring_and_weights(family, rank, 1, &weights)?;
    let t = ring.tuple(entries).map_err(err)?;
    let lt = certificate::LabeledTuple::from_tuple(ring.tables(), &t).map_err(err)?;
    let rep = certificate::verify_proposition(&lt).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("all_hold", rep.all_hold)?;
    out.set_item("min_margin", format(&rep.min_margin))?;
    out.set_item("argmin", rep.argmin)?;
    out.set_item(
        "gaps",
        rep.gaps().map(|s| (s.a1, s.a2, s.b1, s.b2)).collect::<Vec<_>>(),
    )?;
    Ok(out)
}

#[pymodule]
fn cbdiv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyDivisor>()?;
    m.add_class::<PyWeighting>()?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(divisor, m)?)?;
    m.add_function(wrap_pyfunction!(check_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(lp_search, m)?)?;
    m.add_function(wrap_pyfunction!(scale_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_proposition, m)?)?;
    Ok(())
}
