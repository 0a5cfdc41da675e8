//! Python bindings: multivectors, sampled form fields, the Hodge
//! decomposition and the Green residual.

use std::collections::BTreeMap;

use kahler::green::green_identity_residual;
use kahler::hodge::{decompose_full_space, decompose_region, DecompositionConfig, DecompositionResult, Mode};
use kahler::potential::delta_identity_residual;
use kahler::table::{field_from_csv, field_to_csv};
use kahler::{evaluate_spec, parse_field_spec, BasisIndex, GridSpec, KernelSpec, Region, SelfCellRule};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn self_cell(name: &str) -> PyResult<SelfCellRule> {
    SelfCellRule::parse(name).ok_or_else(|| err(format!("unknown self-cell rule {name:?}")))
}

fn region(grid: &GridSpec, text: Option<&str>) -> PyResult<Region> {
    match text {
        Some(t) => Region::parse(grid, t).map_err(err),
        None => Ok(Region::full(grid)),
    }
}

/// A constant element of the Kähler algebra, with terms keyed by digit
/// labels such as `"0"`, `"2"`, `"13"`.
#[pyclass(name = "Multivector", skip_from_py_object)]
#[derive(Clone)]
struct PyMultivector(kahler::Multivector);

#[pymethods]
impl PyMultivector {
    #[new]
    #[pyo3(signature = (n, terms=None))]
    fn new(n: usize, terms: Option<BTreeMap<String, f64>>) -> PyResult<Self> {
        let terms = terms
            .unwrap_or_default()
            .into_iter()
            .map(|(l, c)| Ok((BasisIndex::parse_label(&l, n).map_err(err)?, c)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self(kahler::Multivector::from_terms(n, terms).map_err(err)?))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.dim()
    }

    fn terms(&self) -> BTreeMap<String, f64> {
        let n = self.0.dim();
        self.0.terms().map(|(b, c)| (b.label(n), c)).collect()
    }

    fn clifford(&self, other: &Self) -> PyResult<Self> {
        self.0.clifford(&other.0).map(Self).map_err(err)
    }

    fn wedge(&self, other: &Self) -> PyResult<Self> {
        self.0.wedge(&other.0).map(Self).map_err(err)
    }

    /// `self ⌟ other`
    fn left_interior(&self, other: &Self) -> PyResult<Self> {
        kahler::Multivector::left_interior(&self.0, &other.0).map(Self).map_err(err)
    }

    /// `self ⌞ other`
    fn right_interior(&self, other: &Self) -> PyResult<Self> {
        kahler::Multivector::right_interior(&self.0, &other.0).map(Self).map_err(err)
    }

    fn reversion(&self) -> Self {
        Self(self.0.reversion())
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.clifford(other)
    }

    fn __xor__(&self, other: &Self) -> PyResult<Self> {
        self.wedge(other)
    }

    fn __repr__(&self) -> String {
        format!("Multivector({}, {:?})", self.0.dim(), self.terms())
    }
}

/// A form field sampled on a uniform grid.
#[pyclass(name = "FormField", skip_from_py_object)]
#[derive(Clone)]
struct PyFormField(kahler::FormField);

#[pymethods]
impl PyFormField {
    /// Parses and samples a field file (`dim`, `axis`, `component` lines).
    #[staticmethod]
    fn from_spec(text: &str) -> PyResult<Self> {
        let spec = parse_field_spec(text).map_err(|e| err(e.record()))?;
        evaluate_spec(&spec).map(Self).map_err(|e| err(e.record()))
    }

    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        field_from_csv(text).map(Self).map_err(err)
    }

    fn to_csv(&self) -> String {
        field_to_csv(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn shape(&self) -> Vec<usize> {
        self.0.grid().shape()
    }

    fn grades(&self) -> Vec<usize> {
        self.0.grades()
    }

    /// Component lattices in row-major node order, keyed by digit label.
    fn components(&self) -> BTreeMap<String, Vec<f64>> {
        let n = self.0.dim();
        self.0.components().map(|(b, v)| (b.label(n), v.to_vec())).collect()
    }

    fn at(&self, node: usize) -> PyResult<PyMultivector> {
        if node >= self.0.grid().len() {
            return Err(err(format!("node {node} outside the grid")));
        }
        Ok(PyMultivector(self.0.at(node)))
    }

    fn grade_part(&self, k: usize) -> Self {
        Self(self.0.grade_part(k))
    }

    fn d(&self) -> Self {
        Self(self.0.exterior_derivative())
    }

    fn delta(&self) -> Self {
        Self(self.0.interior_derivative())
    }

    fn kahler_derivative(&self) -> Self {
        Self(self.0.kahler_derivative())
    }

    fn laplacian(&self) -> Self {
        Self(self.0.laplacian())
    }

    fn clifford(&self, other: &Self) -> PyResult<Self> {
        self.0.clifford(&other.0).map(Self).map_err(err)
    }

    fn wedge(&self, other: &Self) -> PyResult<Self> {
        self.0.wedge(&other.0).map(Self).map_err(err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.add(&other.0).map(Self).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.sub(&other.0).map(Self).map_err(err)
    }

    /// Volume-weighted L2 norm over nodes at least `offset` cells inside.
    #[pyo3(signature = (offset=0))]
    fn norm(&self, offset: usize) -> f64 {
        self.0.l2_norm(offset)
    }

    #[pyo3(signature = (offset=0))]
    fn max_abs(&self, offset: usize) -> f64 {
        self.0.max_abs(offset)
    }

    fn __repr__(&self) -> String {
        format!("FormField(n={}, shape={:?}, grades={:?})", self.0.dim(), self.shape(), self.grades())
    }
}

#[pyclass(name = "Decomposition", get_all)]
struct PyDecomposition {
    closed: Py<PyFormField>,
    coclosed: Py<PyFormField>,
    harmonic: Py<PyFormField>,
    diagnostics: BTreeMap<String, f64>,
}

fn diagnostics(res: &DecompositionResult) -> BTreeMap<String, f64> {
    let d = &res.diagnostics;
    let mut m = BTreeMap::from([
        ("region_mode".to_string(), if d.mode == Mode::Region { 1.0 } else { 0.0 }),
        ("grade".into(), d.grade as f64),
        ("alpha_norm".into(), d.alpha_norm),
        ("closed_norm".into(), d.closed_norm),
        ("coclosed_norm".into(), d.coclosed_norm),
        ("harmonic_norm".into(), d.harmonic_norm),
        ("reconstruction_error".into(), d.reconstruction_error),
        ("closed_exterior_residual".into(), d.closed_exterior_residual),
        ("coclosed_interior_residual".into(), d.coclosed_interior_residual),
        ("decay_ratio".into(), d.decay_ratio),
    ]);
    if let Some((a, b)) = d.hyperharmonic {
        m.insert("hyperharmonic_delta_d".into(), a);
        m.insert("hyperharmonic_d_delta".into(), b);
    }
    if let Some(c) = d.boundary_exterior {
        m.insert("boundary_exterior_error".into(), c.relative_error());
    }
    if let Some(c) = d.boundary_interior {
        m.insert("boundary_interior_error".into(), c.relative_error());
    }
    m
}

/// Splits a homogeneous field into closed, co-closed and harmonic parts.
/// Without `region` the whole-space potentials are used; with a region such
/// as `"2:9,0:11,3:10"` the results live on that sub-grid.
#[pyfunction]
#[pyo3(signature = (field, region=None, self_cell="stencil-consistent", offset=2, boundary=true))]
fn decompose(
    py: Python<'_>,
    field: &PyFormField,
    region: Option<&str>,
    self_cell: &str,
    offset: usize,
    boundary: bool,
) -> PyResult<PyDecomposition> {
    let cfg = DecompositionConfig {
        self_cell: crate::self_cell(self_cell)?,
        offset,
        boundary_diagnostics: boundary,
        ..Default::default()
    };
    let alpha = field.0.clone();
    let res = match region {
        Some(text) => {
            let r = Region::parse(alpha.grid(), text).map_err(err)?;
            py.detach(|| decompose_region(&alpha, &r, &cfg))
        }
        None => py.detach(|| decompose_full_space(&alpha, &cfg)),
    }
    .map_err(err)?;
    let diagnostics = diagnostics(&res);
    Ok(PyDecomposition {
        closed: Py::new(py, PyFormField(res.closed))?,
        coclosed: Py::new(py, PyFormField(res.coclosed))?,
        harmonic: Py::new(py, PyFormField(res.harmonic))?,
        diagnostics,
    })
}

/// Pointwise and integrated residuals of the Green identity for `u`, `v`.
#[pyfunction]
#[pyo3(signature = (u, v, region=None))]
fn green_residual(u: &PyFormField, v: &PyFormField, region: Option<&str>) -> PyResult<BTreeMap<String, f64>> {
    let r = crate::region(u.0.grid(), region)?;
    let g = green_identity_residual(&u.0, &v.0, &r).map_err(err)?;
    Ok(BTreeMap::from([
        ("pointwise".to_string(), g.pointwise),
        ("integrated".into(), g.integrated),
        ("integrated_relative".into(), g.integrated_relative()),
        ("surface".into(), g.surface),
        ("volume".into(), g.volume),
    ]))
}

/// `max |φ − c V Σ K ∂'∂'φ|` over nodes two cells inside the region.
#[pyfunction]
#[pyo3(signature = (phi, region=None, self_cell="stencil-consistent"))]
fn delta_residual(py: Python<'_>, phi: &PyFormField, region: Option<&str>, self_cell: &str) -> PyResult<f64> {
    let r = crate::region(phi.0.grid(), region)?;
    let spec = KernelSpec::new(phi.0.dim(), crate::self_cell(self_cell)?).map_err(err)?;
    let f = phi.0.clone();
    py.detach(|| delta_identity_residual(&f, &r, &spec, None)).map_err(err)
}

#[pymodule]
fn kahler_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMultivector>()?;
    m.add_class::<PyFormField>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(green_residual, m)?)?;
    m.add_function(wrap_pyfunction!(delta_residual, m)?)?;
    Ok(())
}
