//! Python bindings for `conconic-core`.
//!
//! Exact inputs accept ints, strings such as `"3/4"` or `"0.25"`, and
//! `fractions.Fraction`; exact outputs come back as `"p/q"` strings.

use conconic_core::io::scene::{FeetSpec, Num, Tolerances};
use conconic_core::io::{run_morley, run_verify, IoError, Mode, MorleyArgs, Scene};
use conconic_core::scalar::Scalar;
use conconic_core::{
    build_config, ConconicVerdict, Conic, HLine, HPoint, RankClass, Tolerance, Triangle,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyString};

fn geometry_err(e: conconic_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn io_err(e: IoError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn tolerance(eps: Option<f64>) -> Tolerance {
    eps.map(Tolerance::new).unwrap_or_default()
}

fn text(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    match obj.cast::<PyString>() {
        Ok(s) => Ok(s.to_str()?.to_owned()),
        Err(_) => Ok(obj.str()?.to_str()?.to_owned()),
    }
}

fn number<S: Scalar>(obj: &Bound<'_, PyAny>) -> PyResult<S> {
    let t = text(obj)?;
    S::parse(&t).ok_or_else(|| PyValueError::new_err(format!("not a number: {t:?}")))
}

fn numbers<S: Scalar, const N: usize>(objs: &[Bound<'_, PyAny>]) -> PyResult<[S; N]> {
    if objs.len() != N {
        return Err(PyValueError::new_err(format!("expected {N} values, got {}", objs.len())));
    }
    let v = objs.iter().map(number).collect::<PyResult<Vec<S>>>()?;
    Ok(v.try_into().unwrap_or_else(|_| unreachable!()))
}

fn affine<S: Scalar>(pt: &[Bound<'_, PyAny>]) -> PyResult<HPoint<S>> {
    let [x, y] = numbers::<S, 2>(pt)?;
    Ok(HPoint::affine(x, y))
}

fn scene_nums(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Num>> {
    objs.iter().map(|o| Ok(Num::Text(text(o)?))).collect()
}

fn scene_triangle(triangle: &[Vec<Bound<'_, PyAny>>]) -> PyResult<[[Num; 2]; 3]> {
    let rows = triangle
        .iter()
        .map(|p| {
            let v = scene_nums(p)?;
            <[Num; 2]>::try_from(v).map_err(|_| PyValueError::new_err("triangle vertices are (x, y) pairs"))
        })
        .collect::<PyResult<Vec<_>>>()?;
    rows.try_into().map_err(|_| PyValueError::new_err("a triangle has three vertices"))
}

fn json_to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

// ---------------------------------------------------------------------------
// Classes
// ---------------------------------------------------------------------------

/// Float conic `a x² + b xy + c y² + d xz + e yz + f z²`.
#[pyclass(name = "Conic", module = "conconic", frozen)]
struct PyConic {
    inner: Conic<f64>,
}

#[pymethods]
impl PyConic {
    #[new]
    fn new(coefficients: [f64; 6]) -> PyResult<Self> {
        Conic::from_coefficients(coefficients).map(|inner| PyConic { inner }).map_err(geometry_err)
    }

    /// Conic through five affine points.
    #[staticmethod]
    #[pyo3(signature = (points, eps=None))]
    fn through_points(points: Vec<Vec<Bound<'_, PyAny>>>, eps: Option<f64>) -> PyResult<Self> {
        let pts = points.iter().map(|p| affine::<f64>(p)).collect::<PyResult<Vec<_>>>()?;
        let pts: [HPoint<f64>; 5] =
            pts.try_into().map_err(|_| PyValueError::new_err("expected five points"))?;
        conconic_core::conic_through_points(&pts, &tolerance(eps))
            .map(|inner| PyConic { inner })
            .map_err(geometry_err)
    }

    #[staticmethod]
    #[pyo3(signature = (radius, center=(0.0, 0.0)))]
    fn circle(radius: f64, center: (f64, f64)) -> PyResult<Self> {
        let (a, b) = center;
        Self::new([1.0, 0.0, 1.0, -2.0 * a, -2.0 * b, a * a + b * b - radius * radius])
    }

    fn coefficients(&self) -> [f64; 6] {
        self.inner.coefficients()
    }

    fn matrix(&self) -> [[f64; 3]; 3] {
        self.inner.matrix().clone()
    }

    fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.inner.evaluate(&HPoint::affine(x, y))
    }

    /// `"nondegenerate"`, `"line_pair"` or `"double_line"`.
    #[pyo3(signature = (eps=None))]
    fn classify(&self, eps: Option<f64>) -> &'static str {
        match self.inner.classify(&tolerance(eps)) {
            RankClass::Nondegenerate => "nondegenerate",
            RankClass::LinePair => "line_pair",
            RankClass::DoubleLine => "double_line",
        }
    }

    #[pyo3(signature = (eps=None))]
    fn dual(&self, eps: Option<f64>) -> PyResult<Self> {
        self.inner.dual(&tolerance(eps)).map(|inner| PyConic { inner }).map_err(geometry_err)
    }

    /// `(x, y, r)` when the conic is a real circle.
    #[pyo3(signature = (eps=None))]
    fn as_circle(&self, eps: Option<f64>) -> Option<(f64, f64, f64)> {
        self.inner.as_circle(&tolerance(eps))
    }

    fn __repr__(&self) -> String {
        format!("Conic({:?})", self.inner.coefficients())
    }
}

/// Outcome of a six-point or six-line test.
#[pyclass(name = "Verdict", module = "conconic", frozen, get_all)]
struct PyVerdict {
    holds: bool,
    degenerate: bool,
    residual: String,
    /// Witness conic coefficients, when one exists.
    witness: Option<Vec<String>>,
}

impl<S: Scalar> From<ConconicVerdict<S>> for PyVerdict {
    fn from(v: ConconicVerdict<S>) -> Self {
        PyVerdict {
            holds: v.holds,
            degenerate: v.degenerate,
            residual: v.residual.to_text(),
            witness: v.witness.map(|w| w.coefficients().iter().map(Scalar::to_text).collect()),
        }
    }
}

#[pymethods]
impl PyVerdict {
    fn __bool__(&self) -> bool {
        self.holds
    }

    fn __repr__(&self) -> String {
        format!("Verdict(holds={}, degenerate={}, residual={:?})", self.holds, self.degenerate, self.residual)
    }
}

/// A traced Poncelet chain.
#[pyclass(name = "Chain", module = "conconic", frozen, get_all)]
struct PyChain {
    /// Homogeneous points `P1, P2, ...`.
    points: Vec<[f64; 3]>,
    closure_step: Option<usize>,
    gap: f64,
    tangential: bool,
}

#[pymethods]
impl PyChain {
    fn __repr__(&self) -> String {
        format!("Chain(steps={}, closure_step={:?}, gap={:e})", self.points.len() - 1, self.closure_step, self.gap)
    }
}

#[pyclass(name = "PorismReport", module = "conconic", frozen, get_all)]
struct PyPorismReport {
    expected_n: usize,
    all_closed: bool,
    max_gap: f64,
    steps: Vec<Option<usize>>,
    gaps: Vec<f64>,
}

#[pymethods]
impl PyPorismReport {
    fn __repr__(&self) -> String {
        format!("PorismReport(expected_n={}, all_closed={}, max_gap={:e})", self.expected_n, self.all_closed, self.max_gap)
    }
}

// ---------------------------------------------------------------------------
// Functions
// ---------------------------------------------------------------------------

fn conconic_with<S: Scalar>(points: &[Vec<Bound<'_, PyAny>>], tol: &Tolerance) -> PyResult<PyVerdict> {
    let pts = points.iter().map(|p| affine::<S>(p)).collect::<PyResult<Vec<_>>>()?;
    let pts: [HPoint<S>; 6] = pts.try_into().map_err(|_| PyValueError::new_err("expected six points"))?;
    conconic_core::conconic(&pts, tol).map(PyVerdict::from).map_err(geometry_err)
}

fn cotangent_with<S: Scalar>(lines: &[Vec<Bound<'_, PyAny>>], tol: &Tolerance) -> PyResult<PyVerdict> {
    let ls = lines
        .iter()
        .map(|l| HLine::from_coeffs(numbers::<S, 3>(l)?).map_err(geometry_err))
        .collect::<PyResult<Vec<_>>>()?;
    let ls: [HLine<S>; 6] = ls.try_into().map_err(|_| PyValueError::new_err("expected six lines"))?;
    conconic_core::cotangent(&ls, tol).map(PyVerdict::from).map_err(geometry_err)
}

/// Whether six affine points lie on one conic.
#[pyfunction]
#[pyo3(signature = (points, exact=true, eps=None))]
fn conconic(points: Vec<Vec<Bound<'_, PyAny>>>, exact: bool, eps: Option<f64>) -> PyResult<PyVerdict> {
    let tol = tolerance(eps);
    if exact {
        conconic_with::<conconic_core::BigRational>(&points, &tol)
    } else {
        conconic_with::<f64>(&points, &tol)
    }
}

/// Whether six lines `(a, b, c)` with `ax + by + cz = 0` touch one conic.
#[pyfunction]
#[pyo3(signature = (lines, exact=true, eps=None))]
fn cotangent(lines: Vec<Vec<Bound<'_, PyAny>>>, exact: bool, eps: Option<f64>) -> PyResult<PyVerdict> {
    let tol = tolerance(eps);
    if exact {
        cotangent_with::<conconic_core::BigRational>(&lines, &tol)
    } else {
        cotangent_with::<f64>(&lines, &tol)
    }
}

fn conditions_with<'py, S: Scalar>(
    py: Python<'py>,
    scene: &Scene,
    tol: &Tolerance,
) -> PyResult<Bound<'py, PyDict>> {
    let tri: Triangle<S> = scene.build_triangle().map_err(io_err)?;
    let feet = scene.build_feet(&tri, tol).map_err(io_err)?;
    let cfg = build_config(&tri, &feet).map_err(geometry_err)?;
    let c = conconic_core::check_conditions(&cfg, tol).map_err(geometry_err)?;
    let out = PyDict::new(py);
    let [outer6, inner6, tangent6, concurrent] = [c.outer6, c.inner6, c.tangent6, c.concurrent];
    for (name, v) in [("outer6", outer6), ("inner6", inner6), ("tangent6", tangent6), ("concurrent", concurrent)] {
        out.set_item(name, Py::new(py, PyVerdict::from(v))?)?;
    }
    Ok(out)
}

/// The four verdicts for a triangle and six side parameters
/// `[A1, B1, C1, A2, B2, C2]`.
#[pyfunction]
#[pyo3(signature = (triangle, params, exact=true, eps=None))]
fn check_conditions<'py>(
    py: Python<'py>,
    triangle: Vec<Vec<Bound<'py, PyAny>>>,
    params: Vec<Bound<'py, PyAny>>,
    exact: bool,
    eps: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let nums: [Num; 6] =
        scene_nums(&params)?.try_into().map_err(|_| PyValueError::new_err("expected six parameters"))?;
    let scene = Scene {
        triangle: scene_triangle(&triangle)?,
        feet: FeetSpec::Params(nums),
        mode: Mode::default(),
        tolerances: Tolerances::default(),
    };
    let tol = tolerance(eps);
    if exact {
        conditions_with::<conconic_core::BigRational>(py, &scene, &tol)
    } else {
        conditions_with::<f64>(py, &scene, &tol)
    }
}

fn partner_feet(
    triangle: &[Vec<Bound<'_, PyAny>>],
    params: &[Bound<'_, PyAny>],
    rule: fn(
        &Triangle<conconic_core::BigRational>,
        &conconic_core::CevianTriple<conconic_core::BigRational>,
    ) -> conconic_core::Result<conconic_core::CevianTriple<conconic_core::BigRational>>,
) -> PyResult<Vec<[String; 2]>> {
    let verts = triangle.iter().map(|p| numbers::<conconic_core::BigRational, 2>(p)).collect::<PyResult<Vec<_>>>()?;
    let verts: [[conconic_core::BigRational; 2]; 3] =
        verts.try_into().map_err(|_| PyValueError::new_err("a triangle has three vertices"))?;
    let tri = Triangle::from_affine(verts.map(|[x, y]| (x, y))).map_err(geometry_err)?;
    let t = numbers::<conconic_core::BigRational, 3>(params)?;
    let first = conconic_core::CevianTriple::from_parameters(&tri, t).map_err(geometry_err)?;
    let second = rule(&tri, &first).map_err(geometry_err)?;
    [second.a, second.b, second.c]
        .iter()
        .map(|p| {
            let (x, y) = p.to_affine().ok_or_else(|| PyValueError::new_err("foot at infinity"))?;
            Ok([x.to_text(), y.to_text()])
        })
        .collect()
}

/// Feet of the isogonal partner of the cevians at side parameters `[a, b, c]`.
#[pyfunction]
fn isogonal_feet(triangle: Vec<Vec<Bound<'_, PyAny>>>, params: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<[String; 2]>> {
    partner_feet(&triangle, &params, conconic_core::isogonal_feet)
}

/// Feet of the isotomic partner of the cevians at side parameters `[a, b, c]`.
#[pyfunction]
fn isotomic_feet(triangle: Vec<Vec<Bound<'_, PyAny>>>, params: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<[String; 2]>> {
    partner_feet(&triangle, &params, conconic_core::isotomic_feet)
}

/// Runs a JSON scene and returns the report as JSON text.
#[pyfunction]
fn verify_scene(scene: &str) -> PyResult<String> {
    let parsed = Scene::parse(scene).map_err(io_err)?;
    let out = run_verify(&parsed, parsed.mode, &parsed.tolerance(), false).map_err(io_err)?;
    serde_json::to_string_pretty(&out.report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Morley configuration of a float triangle, with the porism check on
/// its two conics. Returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (triangle, samples=25, eps=None))]
fn morley<'py>(py: Python<'py>, triangle: [(f64, f64); 3], samples: usize, eps: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
    let spec = triangle.iter().map(|(x, y)| format!("{x:?},{y:?}")).collect::<Vec<_>>().join(" ");
    let args = MorleyArgs { triangle: spec, samples };
    let out = run_morley(&args, &tolerance(eps), false).map_err(io_err)?;
    json_to_py(py, &out.report)
}

/// Follows the chain from `start` for at most `max_steps` steps.
#[pyfunction]
#[pyo3(signature = (outer, inner, start, max_steps=100, eps=None))]
fn trace_chain(outer: &PyConic, inner: &PyConic, start: (f64, f64), max_steps: usize, eps: Option<f64>) -> PyResult<PyChain> {
    let start = HPoint::affine(start.0, start.1);
    let c = conconic_core::trace_chain(&outer.inner, &inner.inner, &start, max_steps, &tolerance(eps))
        .map_err(geometry_err)?;
    Ok(PyChain {
        points: c.points.iter().map(|p| p.coords().clone()).collect(),
        closure_step: c.closure_step,
        gap: c.gap,
        tangential: c.tangential,
    })
}

/// Checks closure at `expected_n` from evenly spread starting points.
#[pyfunction]
#[pyo3(signature = (outer, inner, expected_n, samples=20, eps=None))]
fn porism_check(outer: &PyConic, inner: &PyConic, expected_n: usize, samples: usize, eps: Option<f64>) -> PyResult<PyPorismReport> {
    let r = conconic_core::porism_check(&outer.inner, &inner.inner, expected_n, samples, &tolerance(eps))
        .map_err(geometry_err)?;
    Ok(PyPorismReport {
        expected_n: r.expected_n,
        all_closed: r.all_closed,
        max_gap: r.max_gap,
        steps: r.steps,
        gaps: r.gaps,
    })
}

#[pymodule]
#[pyo3(name = "conconic")]
fn conconic_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyConic>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyChain>()?;
    m.add_class::<PyPorismReport>()?;
    m.add_function(wrap_pyfunction!(conconic, m)?)?;
    m.add_function(wrap_pyfunction!(cotangent, m)?)?;
    m.add_function(wrap_pyfunction!(check_conditions, m)?)?;
    m.add_function(wrap_pyfunction!(isogonal_feet, m)?)?;
    m.add_function(wrap_pyfunction!(isotomic_feet, m)?)?;
    m.add_function(wrap_pyfunction!(verify_scene, m)?)?;
    m.add_function(wrap_pyfunction!(morley, m)?)?;
    m.add_function(wrap_pyfunction!(trace_chain, m)?)?;
    m.add_function(wrap_pyfunction!(porism_check, m)?)?;
    Ok(())
}
