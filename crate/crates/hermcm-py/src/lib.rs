//! Python bindings: fields, lattices, L-values, heights and the verification suite.

use hermcm::cmcycles::{a_f_zero, deg_big, parse_alpha, EisensteinContext};
use hermcm::fields::{CMExtension, FieldDescriptor, ImagQuadField, TotallyRealField};
use hermcm::heights::{hfalt_k, hfalt_k_gamma_product, height_report};
use hermcm::lattices::{aut_count, HermitianLattice, LatticeFile, ThetaTable};
use hermcm::lfun::{hecke_l, Mode};
use hermcm::suite::{run_suite, Format, RunConfig, Suite};
use hermcm::{Error, Rat};
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    match e {
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        Error::SelfCheck(_) | Error::Newform(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &impl serde::Serialize) -> PyResult<PyObject> {
    let s = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import_bound("json")?.call_method1("loads", (s,))?.unbind())
}

fn mode(s: &str) -> PyResult<Mode> {
    s.parse().map_err(err)
}

fn rat(s: &str) -> PyResult<Rat> {
    let bad = || PyValueError::new_err(format!("bad rational '{s}'"));
    let (a, b): (i128, i128) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    if b == 0 {
        return Err(bad());
    }
    Ok(Rat::new(a, b))
}

/// Imaginary quadratic field k = Q(sqrt(-D)).
#[pyclass(name = "ImagQuadField", module = "hermcm", frozen)]
struct PyImagQuad(ImagQuadField);

#[pymethods]
impl PyImagQuad {
    #[new]
    fn new(d: u64) -> PyResult<Self> {
        ImagQuadField::new(d).map(PyImagQuad).map_err(err)
    }
    #[getter]
    fn d(&self) -> u64 {
        self.0.d
    }
    #[getter]
    fn h(&self) -> u64 {
        self.0.h
    }
    #[getter]
    fn w(&self) -> u64 {
        self.0.w
    }
    /// (trace, norm) of the chosen generator pi of the ideal above D.
    #[getter]
    fn pi(&self) -> (i64, i64) {
        (self.0.pi_trace, self.0.pi_norm)
    }
    /// Faltings height of an elliptic curve with CM by O_k.
    fn faltings_height(&self) -> PyResult<f64> {
        hfalt_k(self.0.d).map_err(err)
    }
    /// Same height from the gamma-product formula.
    fn faltings_height_gamma(&self) -> PyResult<f64> {
        hfalt_k_gamma_product(self.0.d).map_err(err)
    }
    fn __repr__(&self) -> String {
        format!("ImagQuadField(D={}, h={}, w={})", self.0.d, self.0.h, self.0.w)
    }
}

/// CM field E = kF.
#[pyclass(name = "CMField", module = "hermcm", frozen)]
struct PyCM(CMExtension);

#[pymethods]
impl PyCM {
    #[new]
    fn new(d: u64, min_poly: Vec<i64>) -> PyResult<Self> {
        let k = ImagQuadField::new(d).map_err(err)?;
        let mp: Vec<i128> = min_poly.into_iter().map(i128::from).collect();
        let f = TotallyRealField::new(&mp, None).map_err(err)?;
        CMExtension::new(k, f).map(PyCM).map_err(err)
    }
    /// Build from a field descriptor JSON string.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        FieldDescriptor::parse(text).and_then(|d| d.build()).map(PyCM).map_err(err)
    }
    #[getter]
    fn d(&self) -> u64 {
        self.0.k.d
    }
    #[getter]
    fn degree(&self) -> usize {
        self.0.n()
    }
    #[getter]
    fn min_poly(&self) -> Vec<i128> {
        self.0.f.min_poly.clone()
    }
    /// Places of F ramified in E, archimedean included.
    #[getter]
    fn r(&self) -> u32 {
        self.0.r
    }
    /// (L(s, chi_E), L'(s, chi_E)).
    #[pyo3(signature = (s = 0.0, mode = "abelian"))]
    fn l_value(&self, s: f64, mode: &str) -> PyResult<(f64, f64)> {
        let l = hecke_l(&self.0, self::mode(mode)?, s, None).map_err(err)?;
        Ok((l.value, l.derivative))
    }
    #[pyo3(signature = (mode = "abelian"))]
    fn deg_big(&self, mode: &str) -> PyResult<f64> {
        deg_big(&self.0, self::mode(mode)?).map_err(err)
    }
    /// Constant term of the Eisenstein series on the trivial coset.
    #[pyo3(signature = (mode = "abelian"))]
    fn eisenstein_constant(&self, mode: &str) -> PyResult<f64> {
        a_f_zero(&self.0, true, self::mode(mode)?).map_err(err)
    }
    /// Coefficient at alpha, given as comma-separated rationals in the power basis.
    fn eisenstein_coefficient(&self, alpha: &str) -> PyResult<f64> {
        let a = parse_alpha(alpha, self.0.n()).map_err(err)?;
        let ctx = EisensteinContext::new(&self.0).map_err(err)?;
        ctx.a_f_alpha(&a).map(|c| c.value).map_err(err)
    }
    /// Height report as a dict.
    #[pyo3(signature = (mode = "abelian"))]
    fn heights(&self, py: Python<'_>, mode: &str) -> PyResult<PyObject> {
        let r = height_report(&self.0, self::mode(mode)?).map_err(err)?;
        to_py(py, &r)
    }
    fn __repr__(&self) -> String {
        format!("CMField(D={}, F={:?})", self.0.k.d, self.0.f.min_poly)
    }
}

/// Hermitian O_k-lattice.
#[pyclass(name = "HermitianLattice", module = "hermcm", frozen)]
struct PyLattice(HermitianLattice);

#[pymethods]
impl PyLattice {
    /// Build from a lattice JSON string {"D": .., "gram": ..}.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        LatticeFile::parse(text).and_then(|f| f.build()).map(PyLattice).map_err(err)
    }
    #[getter]
    fn d(&self) -> u64 {
        self.0.k.d
    }
    #[getter]
    fn rank(&self) -> usize {
        self.0.m
    }
    /// Integral Gram matrix of the trace form.
    #[getter]
    fn zgram(&self) -> Vec<Vec<i128>> {
        self.0.zgram.clone()
    }
    fn automorphisms(&self) -> PyResult<u64> {
        aut_count(&self.0).map_err(err)
    }
    /// Vector-valued theta coefficients as rows (m, coset_index, count), m as a string.
    #[pyo3(signature = (prec = "10", naive = false))]
    fn theta(&self, prec: &str, naive: bool) -> PyResult<Vec<(String, usize, u64)>> {
        let p = rat(prec)?;
        let t = if naive { ThetaTable::naive(&self.0.zgram, p) } else { ThetaTable::new(&self.0, p) }.map_err(err)?;
        let mut rows = Vec::new();
        for (mu, counts) in t.counts.iter().enumerate() {
            for (j, &c) in counts.iter().enumerate() {
                if c > 0 {
                    rows.push((Rat::new(j as i128, t.den).to_string(), mu, c));
                }
            }
        }
        rows.sort_by(|a, b| rat(&a.0).unwrap().cmp(&rat(&b.0).unwrap()).then(a.1.cmp(&b.1)));
        Ok(rows)
    }
    fn __repr__(&self) -> String {
        format!("HermitianLattice(D={}, rank={})", self.0.k.d, self.0.m)
    }
}

/// Run the verification suites; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suites = None, config = None))]
fn verify(py: Python<'_>, suites: Option<Vec<String>>, config: Option<String>) -> PyResult<PyObject> {
    let cfg = match config {
        Some(p) => RunConfig::load(std::path::Path::new(&p)).map_err(err)?,
        None => RunConfig::default(),
    };
    let sel: Option<Vec<Suite>> = suites
        .map(|v| v.iter().map(|s| s.parse()).collect::<hermcm::Result<_>>())
        .transpose()
        .map_err(err)?;
    let report = py.allow_threads(|| run_suite(&cfg, sel.as_deref())).map_err(err)?;
    let json = report.render(Format::Json).map_err(err)?;
    Ok(py.import_bound("json")?.call_method1("loads", (json,))?.unbind())
}

#[pymodule]
#[pyo3(name = "hermcm")]
fn hermcm_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyImagQuad>()?;
    m.add_class::<PyCM>()?;
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
