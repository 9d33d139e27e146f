use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lll_core::checker::{
    check_symmetric, dependency_degrees, induction_certificate, DependencyMode, SymmetricVariant,
};
use lll_core::format::{parse_instance, to_text};
use lll_core::instances::{
    cnf_to_instance, gen_circle, gen_firm, gen_hypergraph, gen_latin_random, gen_ramsey, gen_vdw, parse_dimacs,
    FirmParams,
};
use lll_core::measure::measure;
use lll_core::rational::to_exact;
use lll_core::solver::{default_budget, solve_permutation, solve_resample, verify_assignment, RngSpec};
use lll_core::{Assignment, EnumConfig, Rational};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((to_exact(r),))
}

fn dependency_mode(inst: &lll_core::Instance) -> DependencyMode {
    if inst.space().is_permutation() {
        DependencyMode::Exhaustive
    } else {
        DependencyMode::Structural
    }
}

/// A space with its bad events, as stored in an instance file.
#[pyclass(name = "Instance", module = "lll_py")]
pub struct PyInstance {
    inner: lll_core::Instance,
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        parse_instance(text).map(|inner| Self { inner }).map_err(err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(err)?;
        Self::from_text(&text)
    }

    fn to_text(&self) -> String {
        to_text(&self.inner)
    }

    #[getter]
    fn family(&self) -> &str {
        &self.inner.family
    }

    #[getter]
    fn num_vars(&self) -> usize {
        self.inner.space().num_vars()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn event_ids(&self) -> Vec<String> {
        self.inner.events().iter().map(|e| e.id().to_string()).collect()
    }

    /// `None` when the family declares no gate.
    #[getter]
    fn gate_passed(&self) -> Option<bool> {
        self.inner.gate.as_ref().map(|g| g.passed)
    }

    fn meta(&self, key: &str) -> Option<String> {
        self.inner.meta(key).map(str::to_string)
    }

    /// Exact measure of every bad event, as `fractions.Fraction`.
    fn measures<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let cfg = EnumConfig::from_env();
        self.inner
            .events()
            .iter()
            .map(|e| fraction(py, &measure(self.inner.space(), e, &cfg).map_err(err)?))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Instance(family={:?}, events={}, vars={})", self.inner.family, self.inner.len(), self.num_vars())
    }
}

#[pyfunction]
#[pyo3(signature = (jobs=100, specialists=8, overlap_cap=30, seed=0))]
fn firm(jobs: usize, specialists: usize, overlap_cap: usize, seed: u64) -> PyResult<PyInstance> {
    let params = FirmParams { jobs, specialists, overlap_cap, workers: None };
    gen_firm(params, seed).map(|inner| PyInstance { inner }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (groups=100, size=16, seed=0))]
fn circle(groups: usize, size: usize, seed: u64) -> PyResult<PyInstance> {
    gen_circle(groups, size, seed).map(|inner| PyInstance { inner }).map_err(err)
}

#[pyfunction]
fn vdw(n: usize, k: usize) -> PyResult<PyInstance> {
    gen_vdw(n, k).map(|inner| PyInstance { inner }).map_err(err)
}

#[pyfunction]
fn ramsey(k: usize, n: usize) -> PyResult<PyInstance> {
    gen_ramsey(k, n).map(|inner| PyInstance { inner }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (k, size, seed=0))]
fn hypergraph(k: usize, size: usize, seed: u64) -> PyResult<PyInstance> {
    gen_hypergraph(k, size, seed).map(|inner| PyInstance { inner }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, per_color=1, seed=0))]
fn latin(n: usize, per_color: usize, seed: u64) -> PyResult<PyInstance> {
    gen_latin_random(n, per_color, seed).map(|inner| PyInstance { inner }).map_err(err)
}

#[pyfunction]
fn ksat_from_dimacs(text: &str) -> PyResult<PyInstance> {
    let f = parse_dimacs(text).map_err(err)?;
    cnf_to_instance(&f).map(|inner| PyInstance { inner }).map_err(err)
}

/// Symmetric check; `variant` is `"4d"` or `"e"`. Returns a dict with
/// `applicable`, `d`, `guaranteed_fraction` and the text `report`.
#[pyfunction]
#[pyo3(signature = (instance, d=None, variant="4d"))]
fn check<'py>(py: Python<'py>, instance: &PyInstance, d: Option<u64>, variant: &str) -> PyResult<Bound<'py, PyDict>> {
    let variant = match variant {
        "4d" => SymmetricVariant::FourD,
        "e" => SymmetricVariant::E,
        other => return Err(PyValueError::new_err(format!("unknown variant {other:?}"))),
    };
    let inst = &instance.inner;
    let cfg = EnumConfig::from_env();
    let deps = dependency_degrees(inst, dependency_mode(inst), &cfg).map_err(err)?;
    let cert = check_symmetric(inst, &deps, d, variant, &cfg).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("applicable", cert.applicable())?;
    out.set_item("d", cert.d)?;
    out.set_item("guaranteed_fraction", fraction(py, &cert.guaranteed_fraction)?)?;
    out.set_item("report", cert.to_report())?;
    Ok(out)
}

/// Runs the resampling solver (swap moves on permutation spaces).
#[pyfunction]
#[pyo3(signature = (instance, seed=0, budget=None))]
fn solve<'py>(py: Python<'py>, instance: &PyInstance, seed: u64, budget: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let inst = &instance.inner;
    let budget = budget.unwrap_or_else(|| default_budget(inst.len(), inst.dependency_bound));
    let result = if inst.space().is_permutation() {
        solve_permutation(inst, RngSpec::new(seed), budget)
    } else {
        solve_resample(inst, RngSpec::new(seed), budget)
    }
    .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("solved", result.solved())?;
    out.set_item("resamples", result.resample_count)?;
    out.set_item("assignment", result.assignment.values.clone())?;
    out.set_item("trace", result.trace_dump(inst))?;
    Ok(out)
}

/// Ids of the bad events that hold under `assignment`.
#[pyfunction]
fn verify(instance: &PyInstance, assignment: Vec<u32>) -> PyResult<Vec<String>> {
    verify_assignment(&instance.inner, &Assignment::new(assignment)).map_err(err)
}

/// The `I(k+t, t)` table as text.
#[pyfunction]
fn induction_table(instance: &PyInstance, d: u64) -> PyResult<String> {
    induction_certificate(&instance.inner, d, &EnumConfig::from_env())
        .map(|r| r.to_table())
        .map_err(err)
}

#[pymodule]
fn lll_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(firm, m)?)?;
    m.add_function(wrap_pyfunction!(circle, m)?)?;
    m.add_function(wrap_pyfunction!(vdw, m)?)?;
    m.add_function(wrap_pyfunction!(ramsey, m)?)?;
    m.add_function(wrap_pyfunction!(hypergraph, m)?)?;
    m.add_function(wrap_pyfunction!(latin, m)?)?;
    m.add_function(wrap_pyfunction!(ksat_from_dimacs, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(induction_table, m)?)?;
    Ok(())
}
