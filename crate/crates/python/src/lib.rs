//! Python bindings: base rings, the catalog, axiom checks, cohomology
//! dimensions, the `.ffgs` loader and the reproduction report.

use std::sync::Arc;

use ffgs::catalog::{self, CatalogParams};
use ffgs::cohomology::{self, Comodule, Complex, DEFAULT_BUDGET};
use ffgs::trace::{self, Grid};
use ffgs::{BaseRing, HopfRef, Scalar};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "BaseRing", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBaseRing(BaseRing);

#[pymethods]
impl PyBaseRing {
    /// `F_p[π]/(π^e)`
    #[staticmethod]
    fn fp_pi(p: u32, e: u32) -> PyResult<Self> {
        BaseRing::fp_pi(p, e).map(Self).map_err(err)
    }

    /// `Z/p^s`
    #[staticmethod]
    fn zmod(p: u32, s: u32) -> PyResult<Self> {
        BaseRing::zmod(p, s).map(Self).map_err(err)
    }

    #[staticmethod]
    fn prime_field(p: u32) -> PyResult<Self> {
        BaseRing::prime_field(p).map(Self).map_err(err)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn size(&self) -> u32 {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyclass(name = "Hopf", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHopf(HopfRef);

#[pymethods]
impl PyHopf {
    #[getter]
    fn name(&self) -> &str {
        self.0.name()
    }

    /// Rank of the coordinate ring over the base.
    #[getter]
    fn order(&self) -> u64 {
        self.0.order()
    }

    /// Comultiplication on generators, as text.
    fn comul(&self) -> Vec<String> {
        self.0.comul().iter().map(|e| e.to_string()).collect()
    }

    /// Axiom name to `(passes, witness)`.
    fn check_axioms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = self.0.check_axioms();
        let out = PyDict::new(py);
        for (name, c) in report.checks() {
            out.set_item(name, (c.pass, c.witness.clone()))?;
        }
        Ok(out)
    }

    fn axioms_pass(&self) -> bool {
        self.0.check_axioms().all_pass()
    }

    fn is_killed_by(&self, n: u64) -> bool {
        self.0.is_killed_by(n)
    }

    /// Least `h` with `[p^h]` trivial.
    fn exponent(&self) -> PyResult<u32> {
        self.0.exponent().map_err(err)
    }

    /// `[n]` on generators, as text.
    fn mult_by_n(&self, n: u64) -> Vec<String> {
        self.0.mult_by_n(n).iter().map(|e| e.to_string()).collect()
    }

    fn __repr__(&self) -> String {
        format!("Hopf({})", self.0.name())
    }
}

#[pyclass(name = "Comodule", frozen)]
struct PyComodule(Comodule);

#[pymethods]
impl PyComodule {
    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    /// `dim H^n`; raises when the matrix-cell budget is exceeded.
    #[pyo3(signature = (n, budget = DEFAULT_BUDGET))]
    fn cohomology_dim(&self, n: u32, budget: u64) -> PyResult<usize> {
        let cx = Complex::new(&self.0).map_err(err)?;
        Ok(cx.cohomology(n, budget).map_err(err)?.report.dim)
    }
}

fn params(base: &PyBaseRing, m: u32, lam: u64) -> PyResult<CatalogParams> {
    CatalogParams::new(base.0, m, lam).map_err(err)
}

fn wrap(h: ffgs::Result<ffgs::Hopf>) -> PyResult<PyHopf> {
    h.map(|h| PyHopf(Arc::new(h))).map_err(err)
}

#[pyfunction]
fn alpha_p(base: &PyBaseRing) -> PyResult<PyHopf> {
    wrap(catalog::alpha_p(base.0))
}

#[pyfunction]
fn mu(base: &PyBaseRing, m: u32) -> PyResult<PyHopf> {
    wrap(catalog::mu(base.0, m))
}

#[pyfunction]
fn g_lambda(base: &PyBaseRing, m: u32, lam: u64) -> PyResult<PyHopf> {
    wrap(catalog::g_lambda(params(base, m, lam)?))
}

#[pyfunction]
fn tilde_h(base: &PyBaseRing, m: u32, a: u32) -> PyResult<PyHopf> {
    wrap(catalog::tilde_h(base.0, m, Scalar(a)))
}

#[pyfunction]
fn oort_tate(base: &PyBaseRing, a: u32, b: u32) -> PyResult<PyHopf> {
    wrap(catalog::oort_tate(base.0, Scalar(a), Scalar(b)))
}

#[pyfunction]
fn vbar(base: &PyBaseRing, m: u32, lam: u64) -> PyResult<PyComodule> {
    cohomology::vbar_rep(params(base, m, lam)?).map(PyComodule).map_err(err)
}

#[pyfunction]
fn adjoint(g: &PyHopf) -> PyResult<PyComodule> {
    cohomology::adjoint_rep(g.0.clone()).map(PyComodule).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, rank = 1))]
fn trivial(g: &PyHopf, rank: usize) -> PyComodule {
    PyComodule(Comodule::trivial(g.0.clone(), rank))
}

/// Parses and elaborates `.ffgs` source; returns the Hopf algebra and the
/// declared comodules by name.
#[pyfunction]
fn load(src: &str) -> PyResult<(PyHopf, Vec<(String, PyComodule)>)> {
    let prog = ffgs::dsl::load(src).map_err(err)?;
    let comodules = prog.comodules.into_iter().map(|c| (c.name.clone(), PyComodule(c))).collect();
    Ok((PyHopf(prog.hopf), comodules))
}

/// Runs the claim grid and returns the report as JSON text.
#[pyfunction]
#[pyo3(signature = (points = None, budget = DEFAULT_BUDGET, jobs = 1))]
fn reproduce(py: Python<'_>, points: Option<Vec<(u32, u32)>>, budget: u64, jobs: usize) -> PyResult<String> {
    let mut grid = Grid { budget, jobs, ..Grid::default() };
    if let Some(points) = points {
        grid.points = points;
    }
    let report = py.detach(|| trace::reproduce(&grid)).map_err(err)?;
    Ok(report.to_json())
}

#[pymodule]
fn pyffgs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBaseRing>()?;
    m.add_class::<PyHopf>()?;
    m.add_class::<PyComodule>()?;
    m.add_function(wrap_pyfunction!(alpha_p, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(g_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(tilde_h, m)?)?;
    m.add_function(wrap_pyfunction!(oort_tate, m)?)?;
    m.add_function(wrap_pyfunction!(vbar, m)?)?;
    m.add_function(wrap_pyfunction!(adjoint, m)?)?;
    m.add_function(wrap_pyfunction!(trivial, m)?)?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    Ok(())
}
