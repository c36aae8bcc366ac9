use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use tractscope::be::{self, TreeBound, TreeSegment};
use tractscope::field::{extract_contours, sample_field, Window};
use tractscope::poisson::{self, HalfPlaneDensity, PoissonModel};
use tractscope::report::{analyze_text, AnalyzeOptions, ChannelSpec};
use tractscope::{parse, render as draw};

use crate::args::{
    AnalyzeArgs, BeArgs, Bounds, ChannelFlag, FieldArgs, ModelAction, ModelArgs, RenderArgs, Switch,
};
use crate::error::CliError;

/// Samples on each circle of the winding check.
const WINDING_SAMPLES: usize = 1024;
/// Relative tolerance for `|f(t_j) − w|` in the fiber check.
const FIBER_TOL: f64 = 1e-9;
/// `| |t| − 1 |` below which a critical point counts as on the circle.
const CIRCLE_TOL: f64 = 1e-9;

fn window(b: Bounds, nx: usize, ny: usize) -> Result<Window, CliError> {
    let [x0, x1, y0, y1] = b.0;
    Ok(Window::new(x0, x1, y0, y1, nx, ny)?)
}

fn field_window(f: &FieldArgs) -> Result<Window, CliError> {
    window(f.window, f.res, f.res)
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(value: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(value).expect("output is serializable");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

pub fn analyze(a: &AnalyzeArgs) -> Result<(), CliError> {
    let mut opts = AnalyzeOptions::new(field_window(&a.field)?);
    opts.r = a.field.r;
    opts.critpoints = a.critpoints == Switch::On;
    match a.channels {
        None => {}
        Some(ChannelFlag::Off) => opts.channels = None,
        Some(ChannelFlag::On { r_min, r_max, n }) => {
            opts.channels = Some(ChannelSpec {
                r_min,
                r_max,
                n_radii: n,
            })
        }
    }
    let report = analyze_text(&a.field.expr, &opts)?;
    let mut text = report.to_json();
    text.push('\n');
    match &a.out {
        Some(p) => write_bytes(p, text.as_bytes()),
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

pub fn render(a: &RenderArgs) -> Result<(), CliError> {
    let expr = parse(&a.field.expr).map_err(|e| CliError::Analyze(e.into()))?;
    let field = sample_field(&expr, field_window(&a.field)?, a.field.r)?;
    let contours = extract_contours(&field, 0.0);
    let image = draw::render(&field, &contours);
    write_bytes(&a.out, &image.to_ppm())
}

fn parse_model(text: &str) -> Result<PoissonModel, CliError> {
    let m: PoissonModel = serde_json::from_str(text).map_err(CliError::ModelJson)?;
    m.validate()?;
    Ok(m)
}

#[derive(Deserialize)]
struct DensityJson {
    intervals: Vec<(f64, f64, f64)>,
    c: f64,
}

pub fn model(a: &ModelArgs) -> Result<(), CliError> {
    let m = parse_model(&a.model)?;
    let out = match &a.action {
        ModelAction::Critpoints => {
            let cp = poisson::model_critical_points(&m);
            let pairing =
                poisson::check_reflection_pairing(&cp.finite_roots(), cp.roots_at_infinity());
            let in_disc = cp.in_disc_count();
            let bound = m.n() - 1;
            let off_circle = cp.min_circle_distance.is_none_or(|d| d >= CIRCLE_TOL);
            json!({
                "n": m.n(),
                "roots": cp.roots,
                "nominal_degree": cp.nominal_degree,
                "degree": cp.degree,
                "roots_at_infinity": cp.roots_at_infinity(),
                "in_disc": in_disc,
                "bound": bound,
                "bound_ok": in_disc <= bound,
                "bound_attained": in_disc == bound,
                "pairing": pairing,
                "min_circle_distance": cp.min_circle_distance,
                "no_roots_on_circle": off_circle,
            })
        }
        ModelAction::Fibers { w, jmax } => {
            let w = Complex64::new(w.0, w.1);
            let fibers = poisson::fiber_enumerate(&m, w, -jmax..=*jmax)?;
            let mut max_residual = 0.0f64;
            let mut all_in_disc = true;
            for f in &fibers {
                let v = m.eval(f.t)?.to_complex();
                max_residual = max_residual.max((v - w).norm() / w.norm());
                all_in_disc &= f.t.norm() < 1.0;
            }
            json!({
                "w": w,
                "fibers": fibers,
                "count": fibers.len(),
                "all_in_disc": all_in_disc,
                "max_relative_residual": max_residual,
                "residual_ok": max_residual < FIBER_TOL,
            })
        }
        ModelAction::Horodisc { rj, c } => {
            let h = poisson::horodisc_geometry(c.unwrap_or(m.weights[0]), *rj)?;
            json!({
                "horodisc": h,
                "tangency_residual": (h.center + h.radius - 1.0).abs(),
            })
        }
        ModelAction::Monotone { density } => {
            let d = match density {
                Some(text) => {
                    let d: DensityJson = serde_json::from_str(text).map_err(CliError::ModelJson)?;
                    HalfPlaneDensity::new(d.intervals, d.c)?
                }
                None => HalfPlaneDensity::new(vec![(-1.0, 1.0, 1.0)], m.weights[0])?,
            };
            let check = poisson::check_monotonicity(&d, 200, 200)?;
            json!({
                "density": d,
                "threshold": check.x0,
                "check": check,
            })
        }
    };
    emit(&out);
    Ok(())
}

fn claim(name: &str, pass: bool, detail: Value) -> Value {
    json!({ "claim": name, "pass": pass, "detail": detail })
}

pub fn be_verify(a: &BeArgs) -> Result<(), CliError> {
    if a.nmax < 1 || a.nmax > be::MAX_TREE_LEVEL {
        return Err(be::BeError::LevelOutOfRange(a.nmax).into());
    }
    if !(a.eps > 0.0 && a.eps <= be::MAX_EPSILON) {
        return Err(be::BeError::EpsilonOutOfRange(a.eps).into());
    }

    let segments: Vec<TreeSegment> = (1..=a.nmax)
        .map(|n| TreeSegment::level(n, a.eps))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let bounds: Vec<TreeBound> = segments
        .par_iter()
        .map(|s| be::verify_tree_bound(s, a.samples))
        .collect::<Result<_, _>>()?;
    let per_level: Vec<Value> = (1..=a.nmax)
        .map(|n| {
            let level: Vec<&TreeBound> = bounds.iter().filter(|b| b.segment.n == n).collect();
            let worst = level
                .iter()
                .map(|b| b.margin)
                .fold(f64::NEG_INFINITY, f64::max);
            json!({
                "n": n,
                "bound": level[0].bound,
                "segments": level.len(),
                "worst_margin": worst,
                "pass": level.iter().all(|b| b.ok),
            })
        })
        .collect();
    let tree = claim(
        "tree_bound",
        bounds.iter().all(|b| b.ok),
        json!({ "levels": per_level, "segments": bounds }),
    );

    let windings: Vec<be::GWinding> = (1..=a.nmax)
        .map(|n| be::winding_of_g(5.0 * 2f64.powi(n as i32 - 1), WINDING_SAMPLES))
        .collect::<Result<_, _>>()?;
    let winding_pass = windings
        .iter()
        .zip(1..=a.nmax)
        .all(|(w, n)| w.monotone && w.winding == 1i64 << n);
    let winding = claim("winding", winding_pass, json!(windings));

    let mut claims = vec![tree, winding];
    if a.single_curve == Switch::On {
        let r = a.log_r.exp();
        let rep = be::verify_single_curve_tracts(window(a.window, a.res, a.res)?, r, a.eps)?;
        claims.push(claim("single_curve", rep.ok, json!(rep)));
    }
    let all = claims.iter().all(|c| c["pass"] == true);
    emit(
        &json!({ "eps": a.eps, "nmax": a.nmax, "samples": a.samples, "claims": claims, "pass": all }),
    );
    Ok(())
}
