//! Zero counting and location for holomorphic expressions via the argument
//! principle, and critical-point counts restricted to a tract.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{EvalError, Expr};
use crate::field::{Labels, ScalarField};
use crate::logcomplex::{wrap_angle, LogComplex};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Rect { x0, x1, y0, y1 }
    }

    pub fn centered(c: Complex64, half: f64) -> Self {
        Rect::new(c.re - half, c.re + half, c.im - half, c.im + half)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn max_side(&self) -> f64 {
        self.width().max(self.height())
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.x0 && z.re <= self.x1 && z.im >= self.y0 && z.im <= self.y1
    }

    pub fn shifted(&self, dx: f64, dy: f64) -> Rect {
        Rect::new(self.x0 + dx, self.x1 + dx, self.y0 + dy, self.y1 + dy)
    }

    /// Counter-clockwise corners starting at the lower-left.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x0, self.y0),
            Complex64::new(self.x1, self.y0),
            Complex64::new(self.x1, self.y1),
            Complex64::new(self.x0, self.y1),
        ]
    }

    fn split_at(&self, fx: f64, fy: f64) -> [Rect; 4] {
        let xm = self.x0 + fx * self.width();
        let ym = self.y0 + fy * self.height();
        [
            Rect::new(self.x0, xm, self.y0, ym),
            Rect::new(xm, self.x1, self.y0, ym),
            Rect::new(self.x0, xm, ym, self.y1),
            Rect::new(xm, self.x1, ym, self.y1),
        ]
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CritError {
    #[error("zero on the contour of [{}, {}]x[{}, {}] after perturbation retries", .0.x0, .0.x1, .0.y0, .0.y1)]
    BoundaryZero(Rect),
    #[error("winding {winding} is not close to an integer")]
    NonInteger { winding: f64 },
    #[error("negative winding {0}: expression has poles inside the contour")]
    NegativeWinding(i64),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    /// Initial samples per rectangle side before adaptive halving.
    pub initial_samples: usize,
    /// Shift unit used when a zero sits on the contour; `None` means 1/64 of
    /// the shorter side.
    pub perturb_step: Option<f64>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            initial_samples: 32,
            perturb_step: None,
        }
    }
}

/// Largest accepted argument increment between neighbouring samples.
pub const MAX_ARG_STEP: f64 = FRAC_PI_2;
/// Tolerated distance of the winding from an integer.
pub const WINDING_RESIDUAL_TOL: f64 = 0.05;
/// Fixed shift sequence (in units of the perturbation step) tried when a zero
/// lies on the contour.
pub const PERTURBATIONS: [(f64, f64); 3] = [(0.5, 0.5), (-0.5, -0.5), (0.25, -0.25)];
/// Finest subdivision of a contour segment, relative to its original length.
const MIN_STEP_FRACTION: f64 = 1.0 / (1u64 << 36) as f64;
/// log-modulus drop that marks a zero (rather than a branch jump of the
/// principal argument) at an unresolved segment.
const ZERO_DROP: f64 = 10.0;

enum SegErr {
    OnContour,
    Eval(EvalError),
}

impl From<EvalError> for SegErr {
    fn from(e: EvalError) -> Self {
        SegErr::Eval(e)
    }
}

fn sample(d: &Expr, z: Complex64) -> Result<LogComplex, SegErr> {
    let l = d.eval_log(z)?;
    if l.is_zero {
        return Err(SegErr::OnContour);
    }
    Ok(l)
}

// Argument change of `d` along the straight segment a -> b, halving until
// each continued increment is below MAX_ARG_STEP.
fn segment_change(
    d: &Expr,
    a: Complex64,
    b: Complex64,
    la: LogComplex,
    lb: LogComplex,
    min_step: f64,
) -> Result<f64, SegErr> {
    let delta = lb.arg - la.arg;
    if delta.abs() < MAX_ARG_STEP {
        return Ok(delta);
    }
    let m = 0.5 * (a + b);
    if (b - a).norm() <= min_step || m == a || m == b {
        // Either a jump of a principal argument somewhere inside the
        // expression (a multiple of 2π, harmless) or a zero on the segment.
        let dir = (b - a) / (b - a).norm();
        let probe = 1e6 * min_step;
        let pa = sample(d, a - dir * probe)?;
        let pb = sample(d, b + dir * probe)?;
        let scale = pa.log_mod.max(pb.log_mod);
        let wrapped = wrap_angle(delta);
        if la.log_mod.min(lb.log_mod) < scale - ZERO_DROP || wrapped.abs() >= MAX_ARG_STEP {
            return Err(SegErr::OnContour);
        }
        return Ok(wrapped);
    }
    let lm = sample(d, m)?;
    Ok(segment_change(d, a, m, la, lm, min_step)? + segment_change(d, m, b, lm, lb, min_step)?)
}

/// Total argument change of `d` around a closed polygon.
fn polygon_change(d: &Expr, vertices: &[Complex64], per_side: usize) -> Result<f64, SegErr> {
    let n = vertices.len();
    let mut total = 0.0;
    for k in 0..n {
        let p = vertices[k];
        let q = vertices[(k + 1) % n];
        let resolution = 16.0 * f64::EPSILON * (p.norm() + q.norm());
        let min_step = ((q - p).norm() * MIN_STEP_FRACTION).max(resolution);
        let mut prev_z = p;
        let mut prev = sample(d, p)?;
        for s in 1..=per_side {
            let z = p + (q - p) * (s as f64 / per_side as f64);
            let l = sample(d, z)?;
            total += segment_change(d, prev_z, z, prev, l, min_step)?;
            prev_z = z;
            prev = l;
        }
    }
    Ok(total)
}

fn winding_to_count(total: f64) -> Result<i64, CritError> {
    let w = total / TAU;
    let n = w.round();
    if (w - n).abs() >= WINDING_RESIDUAL_TOL {
        return Err(CritError::NonInteger { winding: w });
    }
    Ok(n as i64)
}

/// Winding number of `d` around the rectangle, no perturbation.
fn winding_exact(d: &Expr, rect: &Rect, per_side: usize) -> Result<Option<i64>, CritError> {
    match polygon_change(d, &rect.corners(), per_side) {
        Ok(total) => Ok(Some(winding_to_count(total)?)),
        Err(SegErr::OnContour) => Ok(None),
        Err(SegErr::Eval(e)) => Err(e.into()),
    }
}

/// Winding number of `d` around `rect`, with the deterministic shift
/// sequence applied when a zero sits on the contour. Returns the rectangle
/// actually used.
pub fn winding(d: &Expr, rect: Rect, opts: &CountOptions) -> Result<(i64, Rect), CritError> {
    if let Some(n) = winding_exact(d, &rect, opts.initial_samples)? {
        return Ok((n, rect));
    }
    let step = opts
        .perturb_step
        .unwrap_or(rect.width().min(rect.height()) / 64.0);
    for (fx, fy) in PERTURBATIONS {
        let r = rect.shifted(fx * step, fy * step);
        if let Some(n) = winding_exact(d, &r, opts.initial_samples)? {
            return Ok((n, r));
        }
    }
    Err(CritError::BoundaryZero(rect))
}

/// Number of zeros of `d` (with multiplicity) inside `rect`.
pub fn count_zeros(d: &Expr, rect: Rect) -> Result<u32, CritError> {
    count_zeros_with(d, rect, &CountOptions::default())
}

pub fn count_zeros_with(d: &Expr, rect: Rect, opts: &CountOptions) -> Result<u32, CritError> {
    let (n, _) = winding(d, rect, opts)?;
    u32::try_from(n).map_err(|_| CritError::NegativeWinding(n))
}

/// Winding of `d` around the circle `|z - center| = radius`.
pub fn circle_winding(d: &Expr, center: Complex64, radius: f64) -> Result<Option<i64>, CritError> {
    let verts: Vec<Complex64> = (0..64)
        .map(|k| center + Complex64::from_polar(radius, TAU * k as f64 / 64.0))
        .collect();
    match polygon_change(d, &verts, 1) {
        Ok(total) => Ok(Some(winding_to_count(total)?)),
        Err(SegErr::OnContour) => Ok(None),
        Err(SegErr::Eval(e)) => Err(e.into()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocatedZero {
    pub z: Complex64,
    pub multiplicity: u32,
    /// False when Newton failed; `z` is then the centre of the cell that
    /// holds `multiplicity` zeros.
    pub resolved: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroCount {
    pub rect: Rect,
    pub count: u32,
    pub refined_zeros: Vec<LocatedZero>,
}

/// Radius of the circle used to read off the multiplicity of a converged zero.
pub const MULTIPLICITY_RADIUS: f64 = 1e-3;
/// Quadtree cells at most this large are handed to Newton.
const LEAF_SIZE: f64 = 5e-4;
/// Off-centre split fraction so symmetric zeros do not land on cell edges.
const SPLIT: f64 = 0.482_7;

fn newton(
    f: &Expr,
    fp: &Expr,
    z0: Complex64,
    m: f64,
    bound: &Rect,
) -> Result<Option<Complex64>, CritError> {
    let mut z = z0;
    for _ in 0..100 {
        let lf = f.eval_log(z)?;
        if lf.is_zero {
            return Ok(Some(z));
        }
        let lfp = fp.eval_log(z)?;
        let Some(ratio) = lf.div(lfp) else {
            return Ok(None);
        };
        let step = ratio.to_complex() * m;
        if !(step.re.is_finite() && step.im.is_finite()) {
            return Ok(None);
        }
        z -= step;
        if !bound.contains(z) {
            return Ok(None);
        }
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            return Ok(Some(z));
        }
    }
    Ok(Some(z))
}

fn refine_cluster(derivs: &[Expr], cell: &Rect, count: u32) -> Result<LocatedZero, CritError> {
    let d = &derivs[0];
    let unresolved = LocatedZero {
        z: cell.center(),
        multiplicity: count,
        resolved: false,
    };
    let wide = Rect::centered(
        cell.center(),
        4.0 * cell.max_side().max(MULTIPLICITY_RADIUS),
    );
    let Some(z) = newton(d, &derivs[1], cell.center(), count as f64, &wide)? else {
        return Ok(unresolved);
    };
    let m = match circle_winding(d, z, MULTIPLICITY_RADIUS)? {
        Some(m) if m > 0 => m as u32,
        _ => return Ok(unresolved),
    };
    // a zero of multiplicity m is a simple zero of the (m-1)-th derivative
    let z = if (m as usize) < derivs.len() {
        let k = m as usize - 1;
        newton(&derivs[k], &derivs[k + 1], z, 1.0, &wide)?.unwrap_or(z)
    } else {
        z
    };
    Ok(LocatedZero {
        z,
        multiplicity: m,
        resolved: true,
    })
}

/// Derivative tower `d, d', d'', ...` used by [`locate_zeros`].
pub fn derivative_tower(d: &Expr, depth: usize) -> Vec<Expr> {
    let mut out = vec![d.clone()];
    for _ in 0..depth {
        let next = out.last().unwrap().derivative();
        out.push(next);
    }
    out
}

/// Locate the zeros of `d` in `rect` by quadtree subdivision and Newton
/// refinement. `target_count` is the known winding count of `rect`.
pub fn locate_zeros(
    d: &Expr,
    rect: Rect,
    target_count: u32,
) -> Result<Vec<LocatedZero>, CritError> {
    let derivs = derivative_tower(d, 5);
    locate_with(&derivs, rect, target_count, &CountOptions::default())
}

fn locate_with(
    derivs: &[Expr],
    rect: Rect,
    target_count: u32,
    opts: &CountOptions,
) -> Result<Vec<LocatedZero>, CritError> {
    let d = &derivs[0];
    let mut out = Vec::new();
    let mut stack = vec![(rect, target_count)];
    while let Some((cell, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if cell.max_side() <= LEAF_SIZE {
            out.push(refine_cluster(derivs, &cell, count)?);
            continue;
        }
        for child in cell.split_at(SPLIT, SPLIT) {
            let (n, used) = winding(d, child, opts)?;
            let n = u32::try_from(n).map_err(|_| CritError::NegativeWinding(n))?;
            stack.push((used, n));
        }
    }
    // merge clusters that converged to the same point from neighbouring cells
    out.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    let mut merged: Vec<LocatedZero> = Vec::new();
    for zr in out {
        if let Some(last) = merged.last_mut() {
            if zr.resolved && last.resolved && (zr.z - last.z).norm() < 1e-7 {
                // the micro-circle already saw every zero at that point
                continue;
            }
        }
        merged.push(zr);
    }
    Ok(merged)
}

/// Count and locate in one go.
pub fn count_and_locate(d: &Expr, rect: Rect) -> Result<ZeroCount, CritError> {
    let (n, used) = winding(d, rect, &CountOptions::default())?;
    let count = u32::try_from(n).map_err(|_| CritError::NegativeWinding(n))?;
    let refined_zeros = locate_zeros(d, used, count)?;
    Ok(ZeroCount {
        rect: used,
        count,
        refined_zeros,
    })
}

/// Drop factors that never vanish (`exp(..)` and non-zero constants) from a
/// product. The winding of `exp(b)` around any closed curve is zero, so the
/// result has the same zeros with the same multiplicities, while its
/// argument varies far more slowly where `Im b` is large.
pub fn strip_nonvanishing(d: &Expr) -> Expr {
    fn go(e: &Expr) -> Option<Expr> {
        match e {
            Expr::Exp(_) => None,
            Expr::Const(c) if *c != Complex64::new(0.0, 0.0) => None,
            Expr::Neg(a) => go(a),
            Expr::Mul(a, b) => match (go(a), go(b)) {
                (None, None) => None,
                (Some(x), None) | (None, Some(x)) => Some(x),
                (Some(x), Some(y)) => Some(Expr::Mul(Box::new(x), Box::new(y))),
            },
            Expr::Div(a, b) => {
                let num = go(a).unwrap_or(Expr::Const(Complex64::new(1.0, 0.0)));
                match go(b) {
                    None => Some(num),
                    Some(den) => Some(Expr::Div(Box::new(num), Box::new(den))),
                }
            }
            Expr::Pow(a, n) => go(a).map(|x| Expr::Pow(Box::new(x), *n)),
            other => Some(other.clone()),
        }
    }
    go(d).unwrap_or(Expr::Const(Complex64::new(1.0, 0.0)))
}

/// Critical points counted inside one component of the field.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentCriticalCount {
    pub count: u32,
    pub zeros: Vec<LocatedZero>,
    pub tiles: usize,
}

/// Tile edge length, in grid cells, for [`component_critical_count`].
pub const TILE_CELLS: usize = 16;
/// A zero found in a boundary cell counts only if `u` exceeds this there.
pub const INTERIOR_U_TOL: f64 = 1e-8;

#[derive(Clone, Copy)]
struct Tile {
    i0: usize,
    i1: usize,
    j0: usize,
    j1: usize,
}

enum TileKind {
    Inside,
    Outside,
    Straddle,
}

/// Count zeros of `d` inside the grid component `id` of `labels`.
///
/// The component's bounding box is tiled; tiles whose nodes all belong to the
/// component are counted whole, tiles straddling its boundary are subdivided
/// down to single cells, and zeros found in a single boundary cell count only
/// if `u_at` is positive there.
pub fn component_critical_count<U>(
    field: &ScalarField,
    labels: &Labels,
    id: u32,
    d: &Expr,
    u_at: U,
) -> Result<ComponentCriticalCount, CritError>
where
    U: Fn(Complex64) -> Option<f64> + Sync,
{
    let w = &field.window;
    let (mut imin, mut imax, mut jmin, mut jmax) = (usize::MAX, 0, usize::MAX, 0);
    for (k, _) in labels.ids.iter().enumerate().filter(|(_, &v)| v == id) {
        let (i, j) = w.coords(k);
        imin = imin.min(i);
        imax = imax.max(i);
        jmin = jmin.min(j);
        jmax = jmax.max(j);
    }
    if imin == usize::MAX {
        return Ok(ComponentCriticalCount {
            count: 0,
            zeros: Vec::new(),
            tiles: 0,
        });
    }
    // a straddling tile needs at least one cell around the component
    let imin = imin.saturating_sub(1);
    let jmin = jmin.saturating_sub(1);
    let imax = (imax + 1).min(w.nx - 1);
    let jmax = (jmax + 1).min(w.ny - 1);

    let mut tiles = Vec::new();
    let mut i0 = imin;
    while i0 < imax {
        let i1 = (i0 + TILE_CELLS).min(imax);
        let mut j0 = jmin;
        while j0 < jmax {
            let j1 = (j0 + TILE_CELLS).min(jmax);
            tiles.push(Tile { i0, i1, j0, j1 });
            j0 = j1;
        }
        i0 = i1;
    }
    let d = &strip_nonvanishing(d);
    let derivs = derivative_tower(d, 4);
    let opts = CountOptions {
        initial_samples: 16,
        perturb_step: Some(0.5 * w.dx().min(w.dy())),
    };
    let kind = |t: &Tile| {
        let mut any_in = false;
        let mut any_out = false;
        for j in t.j0..=t.j1 {
            for i in t.i0..=t.i1 {
                if labels.ids[w.index(i, j)] == id {
                    any_in = true;
                } else {
                    any_out = true;
                }
            }
        }
        match (any_in, any_out) {
            (true, false) => TileKind::Inside,
            (false, _) => TileKind::Outside,
            _ => TileKind::Straddle,
        }
    };
    let rect_of = |t: &Tile| Rect::new(w.x(t.i0), w.x(t.i1), w.y(t.j0), w.y(t.j1));

    let results: Vec<Result<Vec<LocatedZero>, CritError>> = tiles
        .par_iter()
        .map(|t| {
            let mut found = Vec::new();
            let mut stack = vec![*t];
            while let Some(t) = stack.pop() {
                let k = kind(&t);
                if matches!(k, TileKind::Outside) {
                    continue;
                }
                let (n, used) = winding(d, rect_of(&t), &opts)?;
                let n = u32::try_from(n).map_err(|_| CritError::NegativeWinding(n))?;
                if n == 0 {
                    continue;
                }
                match k {
                    TileKind::Inside => found.extend(locate_with(&derivs, used, n, &opts)?),
                    _ if t.i1 - t.i0 <= 1 && t.j1 - t.j0 <= 1 => {
                        for zr in locate_with(&derivs, used, n, &opts)? {
                            if u_at(zr.z).is_some_and(|u| u > INTERIOR_U_TOL) {
                                found.push(zr);
                            }
                        }
                    }
                    _ => {
                        let im = (t.i0 + t.i1).div_ceil(2).max(t.i0 + 1).min(t.i1);
                        let jm = (t.j0 + t.j1).div_ceil(2).max(t.j0 + 1).min(t.j1);
                        for (a0, a1) in [(t.i0, im), (im, t.i1)] {
                            for (b0, b1) in [(t.j0, jm), (jm, t.j1)] {
                                if a1 > a0 && b1 > b0 {
                                    stack.push(Tile {
                                        i0: a0,
                                        i1: a1,
                                        j0: b0,
                                        j1: b1,
                                    });
                                }
                            }
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect();

    let mut zeros = Vec::new();
    for r in results {
        zeros.extend(r?);
    }
    zeros.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    let count = zeros.iter().map(|z| z.multiplicity).sum();
    Ok(ComponentCriticalCount {
        count,
        zeros,
        tiles: tiles.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn dz(src: &str) -> Expr {
        parse(src).unwrap().derivative()
    }

    #[test]
    fn triple_zero_of_exp_z4_derivative() {
        let d = dz("2*exp(z^4)");
        let r = Rect::new(-1.0, 1.0, -1.0, 1.0);
        assert_eq!(count_zeros(&d, r).unwrap(), 3);
        let zs = locate_zeros(&d, r, 3).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs[0].multiplicity, 3);
        assert!(zs[0].resolved);
        assert!(zs[0].z.norm() < 1e-8);
    }

    #[test]
    fn exp_exp_has_no_critical_points() {
        let d = dz("exp(exp(z))");
        for r in [
            Rect::new(-1.0, 1.0, -1.0, 1.0),
            Rect::new(-6.0, 6.0, -6.0, 6.0),
            Rect::new(2.0, 5.5, -3.0, 0.5),
        ] {
            assert_eq!(count_zeros(&d, r).unwrap(), 0);
        }
        assert!(locate_zeros(&d, Rect::new(-1.0, 1.0, -1.0, 1.0), 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn double_zero_at_minus_two_pi() {
        let d = dz("exp(sin(z)-z)");
        let c = Complex64::new(-TAU, 0.0);
        let r = Rect::centered(c, 0.5);
        assert_eq!(count_zeros(&d, r).unwrap(), 2);
        let zs = locate_zeros(&d, r, 2).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs[0].multiplicity, 2);
        assert!((zs[0].z - c).norm() < 1e-8, "{}", zs[0].z);
    }

    #[test]
    fn zero_on_the_contour_is_perturbed() {
        // triple zero of 8z^3 e^{z^4} sits on the left side of this rectangle
        let d = dz("2*exp(z^4)");
        let r = Rect::new(0.0, 1.0, -0.5, 0.5);
        let (n, used) = winding(&d, r, &CountOptions::default()).unwrap();
        assert_ne!(used, r);
        assert_eq!(
            n,
            if used.contains(Complex64::new(0.0, 0.0)) {
                3
            } else {
                0
            }
        );
    }

    #[test]
    fn refined_zero_is_small() {
        let d = dz("exp(sin(z)-z)");
        let zs = locate_zeros(&d, Rect::centered(Complex64::new(-2.0 * TAU, 0.0), 0.5), 2).unwrap();
        let z = zs[0].z;
        let at = d.eval(z).unwrap().norm();
        let scale = (0..16)
            .map(|k| {
                d.eval(z + Complex64::from_polar(MULTIPLICITY_RADIUS, TAU * k as f64 / 16.0))
                    .unwrap()
                    .norm()
            })
            .fold(0.0, f64::max);
        assert!(at < 1e-8 * scale);
    }

    #[test]
    fn stable_under_extra_sampling() {
        let d = dz("exp(sin(z)-z)");
        let r = Rect::new(-13.0, -5.0, -1.3, 2.2);
        let counts: Vec<u32> = [16, 32, 64]
            .iter()
            .map(|&n| {
                count_zeros_with(
                    &d,
                    r,
                    &CountOptions {
                        initial_samples: n,
                        perturb_step: None,
                    },
                )
                .unwrap()
            })
            .collect();
        assert_eq!(counts, vec![4, 4, 4]);
    }

    #[test]
    fn stripping_keeps_the_zero_factor() {
        let d = dz("exp(sin(z)-z)");
        assert_eq!(strip_nonvanishing(&d).to_string(), "cos(z) - 1");
        let d = dz("2*exp(z^4)");
        let s = strip_nonvanishing(&d);
        assert!(!s.to_string().contains("exp"), "{s}");
        assert_eq!(count_zeros(&s, Rect::new(-1.0, 1.0, -1.0, 1.0)).unwrap(), 3);
        assert_eq!(strip_nonvanishing(&dz("exp(exp(z))")).to_string(), "1");
    }

    #[test]
    fn polynomial_with_poles_reports_negative() {
        let d = parse("1/z").unwrap();
        assert!(matches!(
            count_zeros(&d, Rect::new(-1.0, 1.0, -1.0, 1.0)),
            Err(CritError::NegativeWinding(-1))
        ));
    }
}
