//! Python bindings for the tractscope core.
//!
//! Reports are returned as plain dicts built from the same JSON the CLI
//! prints, so the two front ends stay in step.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;
use tractscope::be::{self, SegmentKind, TreeSegment};
use tractscope::critpoints::{self, Rect};
use tractscope::field::{extract_contours, sample_field, Window};
use tractscope::poisson::{self, HalfPlaneDensity, PoissonModel};
use tractscope::report::{self, AnalyzeOptions, ChannelSpec};
use tractscope::Expr;

create_exception!(tractscope, TractscopeError, PyException);
create_exception!(tractscope, ParseError, TractscopeError);

fn err(e: impl std::fmt::Display) -> PyErr {
    TractscopeError::new_err(e.to_string())
}

fn parse_expr(text: &str) -> PyResult<Expr> {
    tractscope::parse(text).map_err(|e| ParseError::new_err((e.to_string(), e.offset())))
}

fn window(bounds: (f64, f64, f64, f64), res: usize) -> PyResult<Window> {
    Window::new(bounds.0, bounds.1, bounds.2, bounds.3, res, res).map_err(err)
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A parsed expression in `z`.
#[pyclass(name = "Expr", frozen)]
struct PyExpr {
    inner: Expr,
}

#[pymethods]
impl PyExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyExpr {
            inner: parse_expr(text)?,
        })
    }

    fn eval(&self, z: Complex64) -> PyResult<Complex64> {
        self.inner.eval(z).map_err(err)
    }

    /// `(log|f|, arg f)` with the argument left unreduced.
    fn eval_log(&self, z: Complex64) -> PyResult<(f64, f64)> {
        let v = self.inner.eval_log(z).map_err(err)?;
        Ok((v.log_mod, v.arg))
    }

    fn derivative(&self) -> PyExpr {
        PyExpr {
            inner: self.inner.derivative(),
        }
    }

    /// Zeros of this expression inside the rectangle, with multiplicity.
    fn count_zeros(&self, rect: (f64, f64, f64, f64)) -> PyResult<u32> {
        critpoints::count_zeros(&self.inner, Rect::new(rect.0, rect.1, rect.2, rect.3)).map_err(err)
    }

    /// `[(z, multiplicity), ...]` for the zeros inside the rectangle.
    fn zeros(&self, rect: (f64, f64, f64, f64)) -> PyResult<Vec<(Complex64, u32)>> {
        let found =
            critpoints::count_and_locate(&self.inner, Rect::new(rect.0, rect.1, rect.2, rect.3))
                .map_err(err)?;
        Ok(found
            .refined_zeros
            .iter()
            .map(|z| (z.z, z.multiplicity))
            .collect())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", self.inner.to_string())
    }
}

/// Run the full pipeline and return the report as a dict.
#[pyfunction]
#[allow(non_snake_case)]
#[pyo3(signature = (expr, window, res = 601, R = 1.0, channels = true, r_min = None, r_max = None, n_radii = None, critpoints = true))]
#[allow(clippy::too_many_arguments)]
fn analyze(
    py: Python<'_>,
    expr: &str,
    window: (f64, f64, f64, f64),
    res: usize,
    R: f64,
    channels: bool,
    r_min: Option<f64>,
    r_max: Option<f64>,
    n_radii: Option<usize>,
    critpoints: bool,
) -> PyResult<Py<PyAny>> {
    let mut opts = AnalyzeOptions::new(self::window(window, res)?);
    opts.r = R;
    opts.critpoints = critpoints;
    if !channels {
        opts.channels = None;
    } else if let Some(r_min) = r_min {
        opts.channels = Some(ChannelSpec {
            r_min,
            r_max,
            n_radii,
        });
    } else if let Some(ch) = opts.channels.as_mut() {
        ch.r_max = r_max;
        ch.n_radii = n_radii;
    }
    let parsed = parse_expr(expr)?;
    let rep = py
        .detach(|| report::analyze(expr, &parsed, &opts))
        .map_err(err)?;
    json_to_py(py, &rep.to_json())
}

/// Binary PPM bytes of the tract picture.
#[pyfunction]
#[allow(non_snake_case)]
#[pyo3(signature = (expr, window, res = 601, R = 1.0))]
fn render_ppm<'py>(
    py: Python<'py>,
    expr: &str,
    window: (f64, f64, f64, f64),
    res: usize,
    R: f64,
) -> PyResult<Bound<'py, PyBytes>> {
    let parsed = parse_expr(expr)?;
    let field = sample_field(&parsed, self::window(window, res)?, R).map_err(err)?;
    let contours = extract_contours(&field, 0.0);
    let image = tractscope::render::render(&field, &contours);
    Ok(PyBytes::new(py, &image.to_ppm()))
}

/// `R·exp(iθ + Σ c_k (ζ_k + t)/(ζ_k − t))` on the unit disc.
#[pyclass(name = "PoissonModel", frozen)]
struct PyPoissonModel {
    inner: PoissonModel,
}

#[pymethods]
impl PyPoissonModel {
    #[new]
    #[allow(non_snake_case)]
    #[pyo3(signature = (R, theta, singularities, weights))]
    fn new(R: f64, theta: f64, singularities: Vec<Complex64>, weights: Vec<f64>) -> PyResult<Self> {
        Ok(PyPoissonModel {
            inner: PoissonModel::new(R, theta, singularities, weights).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn u(&self, t: Complex64) -> PyResult<f64> {
        self.inner.u(t).map_err(err)
    }

    fn eval(&self, t: Complex64) -> PyResult<Complex64> {
        Ok(self.inner.eval(t).map_err(err)?.to_complex())
    }

    /// `[(t, in_disc), ...]` for the finite critical points of `u`.
    fn critical_points(&self) -> Vec<(Complex64, bool)> {
        poisson::model_critical_points(&self.inner)
            .roots
            .iter()
            .map(|r| (r.t, r.in_disc))
            .collect()
    }

    /// Whether the critical points are symmetric under `t ↦ 1/conj(t)`.
    fn reflection_pairing(&self) -> bool {
        let cp = poisson::model_critical_points(&self.inner);
        poisson::check_reflection_pairing(&cp.finite_roots(), cp.roots_at_infinity())
    }

    /// `[(j, t_j), ...]` with `f(t_j) = w` for `|j| <= jmax`.
    fn fibers(&self, w: Complex64, jmax: i64) -> PyResult<Vec<(i64, Complex64)>> {
        let f = poisson::fiber_enumerate(&self.inner, w, -jmax..=jmax).map_err(err)?;
        Ok(f.iter().map(|f| (f.j, f.t)).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "PoissonModel(R={}, theta={}, n={})",
            self.inner.r,
            self.inner.theta,
            self.inner.n()
        )
    }
}

/// `(center, radius)` of the horodisc `{c·P(t, 1) > Rj}`.
#[pyfunction]
#[allow(non_snake_case)]
fn horodisc(c: f64, Rj: f64) -> PyResult<(f64, f64)> {
    let h = poisson::horodisc_geometry(c, Rj).map_err(err)?;
    Ok((h.center, h.radius))
}

/// `x₀` beyond which the half-plane potential increases in `x`.
#[pyfunction]
fn monotonicity_threshold(intervals: Vec<(f64, f64, f64)>, c: f64) -> PyResult<f64> {
    let d = HalfPlaneDensity::new(intervals, c).map_err(err)?;
    poisson::monotonicity_threshold(&d).map_err(err)
}

/// `g(z) = Σ (z/2^k)^(2^k)`.
#[pyfunction]
#[pyo3(signature = (z, tol = be::G_TOL))]
fn eval_g(z: Complex64, tol: f64) -> PyResult<Complex64> {
    be::eval_g(z, tol).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (r, samples = 1024))]
fn winding_of_g(r: f64, samples: usize) -> PyResult<i64> {
    Ok(be::winding_of_g(r, samples).map_err(err)?.winding)
}

/// `(ok, margin)` for one tree segment; `kind` is "B", "C+" or "C-".
#[pyfunction]
#[pyo3(signature = (n, j, kind = "B", eps = 0.125, samples = 64))]
fn verify_tree_bound(
    n: u32,
    j: u64,
    kind: &str,
    eps: f64,
    samples: usize,
) -> PyResult<(bool, f64)> {
    let kind = match kind {
        "B" => SegmentKind::B,
        "C+" => SegmentKind::CPlus,
        "C-" => SegmentKind::CMinus,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown segment kind `{other}`"
            )))
        }
    };
    let seg = TreeSegment::new(kind, n, j, eps).map_err(err)?;
    let b = be::verify_tree_bound(&seg, samples).map_err(err)?;
    Ok((b.ok, b.margin))
}

#[pymodule]
#[pyo3(name = "tractscope")]
pub fn tractscope_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TractscopeError", m.py().get_type::<TractscopeError>())?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add_class::<PyExpr>()?;
    m.add_class::<PyPoissonModel>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(render_ppm, m)?)?;
    m.add_function(wrap_pyfunction!(horodisc, m)?)?;
    m.add_function(wrap_pyfunction!(monotonicity_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(eval_g, m)?)?;
    m.add_function(wrap_pyfunction!(winding_of_g, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tree_bound, m)?)?;
    Ok(())
}
