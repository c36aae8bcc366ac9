//! Sampling of `u(z) = log|f(z)| - log R` on a rectangular grid, zero-level
//! contour extraction (marching squares) and sign-component labeling.
//!
//! Grid node `(i, j)` sits at `x_min + i·Δx, y_min + j·Δy` and is stored at
//! index `j·nx + i`. A node is *positive* when it is unmasked and its value is
//! strictly above the level. Saddle cells are resolved by the sign of the mean
//! of their (unmasked) corners, and the component labeling joins diagonal
//! neighbours through a saddle exactly when the contour tracer keeps them on
//! the same side, so contours and components always agree.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::Expr;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("degenerate window: {0}")]
    DegenerateWindow(String),
    #[error("boundary value R must be positive, got {0}")]
    NonPositiveR(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Window {
    pub fn new(
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        nx: usize,
        ny: usize,
    ) -> Result<Self, FieldError> {
        let w = Window {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
        };
        w.validate()?;
        Ok(w)
    }

    /// Square grid with `n` samples per axis.
    pub fn square(
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        n: usize,
    ) -> Result<Self, FieldError> {
        Self::new(x_min, x_max, y_min, y_max, n, n)
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(FieldError::DegenerateWindow("non-finite bounds".into()));
        }
        if !(self.x_min < self.x_max) || !(self.y_min < self.y_max) {
            return Err(FieldError::DegenerateWindow(format!(
                "need x_min < x_max and y_min < y_max, got [{}, {}]x[{}, {}]",
                self.x_min, self.x_max, self.y_min, self.y_max
            )));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(FieldError::DegenerateWindow(format!(
                "need at least 2 samples per axis, got {}x{}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx % self.nx, idx / self.nx)
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + j as f64 * self.dy()
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.x(i), self.y(j))
    }

    pub fn node_point(&self, idx: usize) -> Complex64 {
        let (i, j) = self.coords(idx);
        self.point(i, j)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.x_min && z.re <= self.x_max && z.im >= self.y_min && z.im <= self.y_max
    }

    /// Radius of the largest origin-centred disc inside the window (0 when the
    /// origin is outside).
    pub fn inradius(&self) -> f64 {
        [self.x_max, -self.x_min, self.y_max, -self.y_min]
            .into_iter()
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    }

    pub fn on_border(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.nx - 1 || j == self.ny - 1
    }

    /// Nearest grid node to `z` (clamped into the window).
    pub fn nearest(&self, z: Complex64) -> usize {
        let fi = ((z.re - self.x_min) / self.dx()).round();
        let fj = ((z.im - self.y_min) / self.dy()).round();
        let i = fi.clamp(0.0, (self.nx - 1) as f64) as usize;
        let j = fj.clamp(0.0, (self.ny - 1) as f64) as usize;
        self.index(i, j)
    }

    /// Same bounds, `factor` times finer spacing.
    pub fn refined(&self, factor: usize) -> Window {
        Window {
            nx: (self.nx - 1) * factor + 1,
            ny: (self.ny - 1) * factor + 1,
            ..*self
        }
    }
}

/// Sampled potential. `mask[k]` marks nodes where `f` vanished or could not
/// be evaluated; their `values` entry is meaningless.
#[derive(Clone, Debug)]
pub struct ScalarField {
    pub window: Window,
    pub values: Vec<f64>,
    pub mask: Vec<bool>,
}

impl ScalarField {
    /// Build a field from an arbitrary potential; `None` masks the node.
    /// Rows are evaluated in parallel on the current rayon pool.
    pub fn from_fn<F>(window: Window, f: F) -> Result<Self, FieldError>
    where
        F: Fn(Complex64) -> Option<f64> + Sync,
    {
        window.validate()?;
        let rows: Vec<Vec<Option<f64>>> = (0..window.ny)
            .into_par_iter()
            .map(|j| {
                (0..window.nx)
                    .map(|i| f(window.point(i, j)).filter(|v| v.is_finite()))
                    .collect()
            })
            .collect();
        let mut values = Vec::with_capacity(window.len());
        let mut mask = Vec::with_capacity(window.len());
        for v in rows.into_iter().flatten() {
            values.push(v.unwrap_or(0.0));
            mask.push(v.is_none());
        }
        Ok(ScalarField {
            window,
            values,
            mask,
        })
    }

    pub fn value(&self, i: usize, j: usize) -> Option<f64> {
        let k = self.window.index(i, j);
        (!self.mask[k]).then_some(self.values[k])
    }

    pub fn is_positive(&self, idx: usize, level: f64) -> bool {
        !self.mask[idx] && self.values[idx] > level
    }

    /// Bilinear interpolation of the unmasked samples; `None` if the cell
    /// containing `z` has a masked corner or `z` is outside the window.
    pub fn bilinear(&self, z: Complex64) -> Option<f64> {
        let w = &self.window;
        if !w.contains(z) {
            return None;
        }
        let fx = (z.re - w.x_min) / w.dx();
        let fy = (z.im - w.y_min) / w.dy();
        let i = (fx.floor() as usize).min(w.nx - 2);
        let j = (fy.floor() as usize).min(w.ny - 2);
        let tx = fx - i as f64;
        let ty = fy - j as f64;
        let v00 = self.value(i, j)?;
        let v10 = self.value(i + 1, j)?;
        let v01 = self.value(i, j + 1)?;
        let v11 = self.value(i + 1, j + 1)?;
        Some(
            v00 * (1.0 - tx) * (1.0 - ty)
                + v10 * tx * (1.0 - ty)
                + v01 * (1.0 - tx) * ty
                + v11 * tx * ty,
        )
    }

    /// Saddle resolution for cell `(i, j)` (lower-left corner): `Some(true)`
    /// when the two positive diagonal corners are joined through the cell,
    /// `Some(false)` when the non-positive ones are, `None` if not a saddle.
    pub fn saddle_joins_positive(&self, i: usize, j: usize, level: f64) -> Option<bool> {
        let w = &self.window;
        let idx = [
            w.index(i, j),
            w.index(i + 1, j),
            w.index(i + 1, j + 1),
            w.index(i, j + 1),
        ];
        let p: Vec<bool> = idx.iter().map(|&k| self.is_positive(k, level)).collect();
        if !(p[0] == p[2] && p[1] == p[3] && p[0] != p[1]) {
            return None;
        }
        let (sum, n) = idx
            .iter()
            .filter(|&&k| !self.mask[k])
            .fold((0.0, 0usize), |(s, n), &k| (s + self.values[k], n + 1));
        Some(n > 0 && sum / n as f64 > level)
    }
}

/// Sample `u = log|f| - log R` for an expression.
pub fn sample_field(expr: &Expr, window: Window, r: f64) -> Result<ScalarField, FieldError> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(FieldError::NonPositiveR(r));
    }
    let log_r = r.ln();
    ScalarField::from_fn(window, |z| match expr.eval_log(z) {
        Ok(l) if !l.is_zero => Some(l.log_mod - log_r),
        _ => None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WindowEdge {
    Left,
    Right,
    Bottom,
    Top,
}

/// One connected piece of the level set. Open contours start and end on the
/// window border; closed ones repeat their first point at the end.
/// Contours are oriented with the positive side on the left.
#[derive(Clone, Debug)]
pub struct Contour {
    pub points: Vec<Complex64>,
    pub closed: bool,
    pub exits: Vec<WindowEdge>,
    /// Grid index of the positive endpoint of each crossed grid edge.
    pub positive_nodes: Vec<usize>,
}

impl Contour {
    pub fn is_open(&self) -> bool {
        !self.closed
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|p| (p[1] - p[0]).norm()).sum()
    }
}

/// Minimum number of points for a contour to be kept.
pub const MIN_CONTOUR_POINTS: usize = 3;

// Grid edges are numbered horizontals first: H(i, j) joins (i, j)-(i+1, j),
// V(i, j) joins (i, j)-(i, j+1).
struct EdgeIndex {
    nx: usize,
    ny: usize,
}

impl EdgeIndex {
    fn h(&self, i: usize, j: usize) -> usize {
        j * (self.nx - 1) + i
    }

    fn v(&self, i: usize, j: usize) -> usize {
        (self.nx - 1) * self.ny + j * self.nx + i
    }

    fn count(&self) -> usize {
        (self.nx - 1) * self.ny + self.nx * (self.ny - 1)
    }

    fn endpoints(&self, e: usize) -> ((usize, usize), (usize, usize)) {
        let nh = (self.nx - 1) * self.ny;
        if e < nh {
            let (i, j) = (e % (self.nx - 1), e / (self.nx - 1));
            ((i, j), (i + 1, j))
        } else {
            let k = e - nh;
            let (i, j) = (k % self.nx, k / self.nx);
            ((i, j), (i, j + 1))
        }
    }

    fn border(&self, e: usize) -> Option<WindowEdge> {
        let ((i0, j0), (i1, j1)) = self.endpoints(e);
        if j0 == j1 {
            if j0 == 0 {
                return Some(WindowEdge::Bottom);
            }
            if j0 == self.ny - 1 {
                return Some(WindowEdge::Top);
            }
        } else {
            if i0 == 0 {
                return Some(WindowEdge::Left);
            }
            if i1 == self.nx - 1 {
                return Some(WindowEdge::Right);
            }
        }
        None
    }
}

const NONE: u32 = u32::MAX;

/// Extract the `level` set of the field as oriented polylines.
pub fn extract_contours(field: &ScalarField, level: f64) -> Vec<Contour> {
    let w = &field.window;
    let ei = EdgeIndex { nx: w.nx, ny: w.ny };
    let pos: Vec<bool> = (0..w.len()).map(|k| field.is_positive(k, level)).collect();

    let interp_value = |k: usize, other: usize| -> f64 {
        if field.mask[k] {
            let o = if field.mask[other] {
                level + 1.0
            } else {
                field.values[other]
            };
            level - (o - level).abs().max(1.0)
        } else {
            field.values[k]
        }
    };

    // crossing point and positive endpoint of a crossed edge
    let crossing = |e: usize| -> (Complex64, usize) {
        let ((i0, j0), (i1, j1)) = ei.endpoints(e);
        let (a, b) = (w.index(i0, j0), w.index(i1, j1));
        let (neg, posn) = if pos[a] { (b, a) } else { (a, b) };
        let vn = interp_value(neg, posn);
        let vp = interp_value(posn, neg);
        let t = (level - vn) / (vp - vn);
        let zn = w.node_point(neg);
        let zp = w.node_point(posn);
        (zn + (zp - zn) * t, posn)
    };

    let mut next = vec![NONE; ei.count()];
    let mut has_prev = vec![false; ei.count()];
    let mut crossed = vec![false; ei.count()];

    for j in 0..w.ny - 1 {
        for i in 0..w.nx - 1 {
            let corners = [
                w.index(i, j),
                w.index(i + 1, j),
                w.index(i + 1, j + 1),
                w.index(i, j + 1),
            ];
            let p = corners.map(|k| pos[k]);
            if p.iter().all(|&b| b) || p.iter().all(|&b| !b) {
                continue;
            }
            // edges in counter-clockwise order: bottom, right, top, left;
            // edge k joins corner k and corner k+1
            let edges = [ei.h(i, j), ei.v(i + 1, j), ei.h(i, j + 1), ei.v(i, j)];
            let mut segs: Vec<(usize, usize)> = Vec::with_capacity(2);
            let crosses: Vec<usize> = (0..4).filter(|&k| p[k] != p[(k + 1) % 4]).collect();
            if crosses.len() == 2 {
                segs.push((crosses[0], crosses[1]));
            } else {
                // saddle: isolate the two corners that are not joined
                let join_pos = field
                    .saddle_joins_positive(i, j, level)
                    .expect("four crossings imply a saddle");
                for (c, &pos) in p.iter().enumerate() {
                    if pos != join_pos {
                        // corner c is cut off by its two incident edges
                        segs.push(((c + 3) % 4, c));
                    }
                }
            }
            for (ka, kb) in segs {
                // positive corners on the left: enter through the edge whose
                // counter-clockwise start corner is positive
                let (from, to) = if p[ka] { (ka, kb) } else { (kb, ka) };
                let (ea, eb) = (edges[from], edges[to]);
                crossed[ea] = true;
                crossed[eb] = true;
                next[ea] = eb as u32;
                has_prev[eb] = true;
            }
        }
    }

    let mut visited = vec![false; ei.count()];
    let mut contours = Vec::new();
    let trace = |start: usize, visited: &mut Vec<bool>| -> Contour {
        let mut points = Vec::new();
        let mut positive_nodes = Vec::new();
        let mut e = start;
        let mut closed = false;
        loop {
            visited[e] = true;
            let (z, pn) = crossing(e);
            points.push(z);
            positive_nodes.push(pn);
            let n = next[e];
            if n == NONE {
                break;
            }
            let n = n as usize;
            if n == start {
                closed = true;
                points.push(points[0]);
                break;
            }
            if visited[n] {
                break;
            }
            e = n;
        }
        let exits = if closed {
            Vec::new()
        } else {
            [ei.border(start), ei.border(e)]
                .into_iter()
                .flatten()
                .collect()
        };
        Contour {
            points,
            closed,
            exits,
            positive_nodes,
        }
    };

    for e in 0..ei.count() {
        if crossed[e] && !has_prev[e] && !visited[e] {
            contours.push(trace(e, &mut visited));
        }
    }
    for e in 0..ei.count() {
        if crossed[e] && !visited[e] {
            contours.push(trace(e, &mut visited));
        }
    }
    contours.retain(|c| c.points.len() >= MIN_CONTOUR_POINTS);
    contours
}

/// Connected-component labels of `{u > level}` (or its complement among
/// unmasked nodes).
#[derive(Clone, Debug)]
pub struct Labels {
    pub ids: Vec<u32>,
    pub count: usize,
    pub positive: bool,
}

impl Labels {
    pub const UNLABELED: u32 = u32::MAX;

    pub fn get(&self, idx: usize) -> Option<u32> {
        let v = self.ids[idx];
        (v != Self::UNLABELED).then_some(v)
    }

    /// Number of nodes in each component.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.count];
        for &v in &self.ids {
            if v != Self::UNLABELED {
                s[v as usize] += 1;
            }
        }
        s
    }
}

/// Label 4-connected components of positive (`positive = true`) or
/// non-positive unmasked nodes, with saddle diagonals joined consistently
/// with [`extract_contours`].
pub fn label_components(field: &ScalarField, positive: bool) -> Labels {
    label_components_at(field, 0.0, positive)
}

pub fn label_components_at(field: &ScalarField, level: f64, positive: bool) -> Labels {
    let w = &field.window;
    let member = |k: usize| !field.mask[k] && (field.values[k] > level) == positive;
    let mut ids = vec![Labels::UNLABELED; w.len()];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..w.len() {
        if ids[start] != Labels::UNLABELED || !member(start) {
            continue;
        }
        ids[start] = count;
        stack.push(start);
        while let Some(k) = stack.pop() {
            let (i, j) = w.coords(k);
            let visit = |ni: usize, nj: usize, ids: &mut Vec<u32>, stack: &mut Vec<usize>| {
                let nk = w.index(ni, nj);
                if ids[nk] == Labels::UNLABELED && member(nk) {
                    ids[nk] = count;
                    stack.push(nk);
                }
            };
            if i > 0 {
                visit(i - 1, j, &mut ids, &mut stack);
            }
            if i + 1 < w.nx {
                visit(i + 1, j, &mut ids, &mut stack);
            }
            if j > 0 {
                visit(i, j - 1, &mut ids, &mut stack);
            }
            if j + 1 < w.ny {
                visit(i, j + 1, &mut ids, &mut stack);
            }
            // diagonals through saddle cells
            for (di, dj) in [(-1i64, -1i64), (1, -1), (1, 1), (-1, 1)] {
                let ni = i as i64 + di;
                let nj = j as i64 + dj;
                if ni < 0 || nj < 0 || ni >= w.nx as i64 || nj >= w.ny as i64 {
                    continue;
                }
                let ci = i.min(ni as usize);
                let cj = j.min(nj as usize);
                if field.saddle_joins_positive(ci, cj, level) == Some(positive) {
                    visit(ni as usize, nj as usize, &mut ids, &mut stack);
                }
            }
        }
        count += 1;
    }
    Labels {
        ids,
        count: count as usize,
        positive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn unit_window(n: usize) -> Window {
        Window::square(-1.0, 1.0, -1.0, 1.0, n).unwrap()
    }

    #[test]
    fn window_validation() {
        assert!(Window::new(1.0, 0.0, 0.0, 1.0, 10, 10).is_err());
        assert!(Window::new(0.0, 1.0, 0.0, 1.0, 1, 10).is_err());
        assert!(Window::new(0.0, 1.0, 0.0, f64::NAN, 10, 10).is_err());
        let w = unit_window(5);
        assert_eq!(w.dx(), 0.5);
        assert_eq!(w.point(4, 0), Complex64::new(1.0, -1.0));
        assert_eq!(w.inradius(), 1.0);
    }

    #[test]
    fn sample_examples() {
        let w = Window::square(-1.0, 1.0, -1.0, 1.0, 3).unwrap();
        let f = sample_field(&parse("2*exp(z^4)").unwrap(), w, 1.0).unwrap();
        assert!((f.value(1, 1).unwrap() - 2f64.ln()).abs() < 1e-15);

        // z = e^{iπ/4}: z^4 = -1
        let z = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let w = Window::square(z.re - 1.0, z.re + 1.0, z.im - 1.0, z.im + 1.0, 3).unwrap();
        let f = sample_field(&parse("2*exp(z^4)").unwrap(), w, 1.0).unwrap();
        assert!((f.value(1, 1).unwrap() - (2f64.ln() - 1.0)).abs() < 1e-12);

        let w = Window::square(-1.0, 1.0, -1.0, 1.0, 3).unwrap();
        let f = sample_field(&parse("exp(sin(z)-z)").unwrap(), w, 1.0).unwrap();
        assert_eq!(f.value(1, 1), Some(0.0));
        assert!(sample_field(&parse("z").unwrap(), w, 0.0).is_err());
    }

    #[test]
    fn zeros_of_f_are_masked() {
        let w = Window::square(-1.0, 1.0, -1.0, 1.0, 3).unwrap();
        let f = sample_field(&parse("z").unwrap(), w, 1.0).unwrap();
        assert!(f.mask[w.index(1, 1)]);
        assert_eq!(f.mask.iter().filter(|&&m| m).count(), 1);
        let labels = label_components(&f, false);
        assert_eq!(labels.get(w.index(1, 1)), None);
    }

    #[test]
    fn half_plane_contour() {
        let w = unit_window(41);
        let f = ScalarField::from_fn(w, |z| Some(z.re + 0.013)).unwrap();
        let cs = extract_contours(&f, 0.0);
        assert_eq!(cs.len(), 1);
        let c = &cs[0];
        assert!(c.is_open());
        let mut exits = c.exits.clone();
        exits.sort_by_key(|e| *e as u8);
        assert_eq!(exits, vec![WindowEdge::Bottom, WindowEdge::Top]);
        for p in &c.points {
            assert!((p.re + 0.013).abs() < 1e-12);
            assert!(f.bilinear(*p).unwrap().abs() < 1e-12);
        }
        // positive side on the left: walking with x > 0 on the left means
        // heading downwards
        assert!(c.points.last().unwrap().im < c.points[0].im);
        let l = label_components(&f, true);
        assert_eq!(l.count, 1);
    }

    #[test]
    fn unit_circle_contour() {
        let w = unit_window(101).refined(1);
        let w = Window {
            x_min: -1.5,
            x_max: 1.5,
            y_min: -1.5,
            y_max: 1.5,
            ..w
        };
        let f = ScalarField::from_fn(w, |z| Some(1.0 - z.norm())).unwrap();
        let cs = extract_contours(&f, 0.0);
        assert_eq!(cs.len(), 1);
        let c = &cs[0];
        assert!(c.closed);
        assert_eq!(c.points.first(), c.points.last());
        let h = w.dx().max(w.dy());
        for p in &c.points {
            assert!((p.norm() - 1.0).abs() < 2.0 * h);
            assert!(f.bilinear(*p).unwrap().abs() < 1e-12);
        }
        // counter-clockwise around the positive disc
        let area: f64 = c
            .points
            .windows(2)
            .map(|s| s[0].re * s[1].im - s[1].re * s[0].im)
            .sum();
        assert!(area > 0.0);
    }

    #[test]
    fn saddle_consistency() {
        // checkerboard 2x2 cell: corners +,-,+,- with positive centre
        let w = Window::square(0.0, 1.0, 0.0, 1.0, 2).unwrap();
        let vals = [1.0, -0.5, 1.0, -0.5];
        let f = ScalarField {
            window: w,
            values: vec![vals[0], vals[1], vals[3], vals[2]],
            mask: vec![false; 4],
        };
        assert_eq!(f.saddle_joins_positive(0, 0, 0.0), Some(true));
        let pos = label_components(&f, true);
        let neg = label_components(&f, false);
        assert_eq!(pos.count, 1);
        assert_eq!(neg.count, 2);
        let cs = extract_contours(&f, 0.0);
        // both contours are 2-point corner cuts, dropped as grid noise
        assert!(cs.is_empty());
    }

    #[test]
    fn short_contours_are_dropped() {
        let w = unit_window(11);
        // only the corner node (0, 0) is positive
        let f = ScalarField::from_fn(w, |z| {
            Some(if z.re < -0.95 && z.im < -0.95 {
                1.0
            } else {
                -1.0
            })
        })
        .unwrap();
        assert!(extract_contours(&f, 0.0).is_empty());
    }

    #[test]
    fn exp_z4_has_four_open_contours_and_one_component() {
        let w = Window::square(-3.0, 3.0, -3.0, 3.0, 601).unwrap();
        let f = sample_field(&parse("2*exp(z^4)").unwrap(), w, 1.0).unwrap();
        let cs = extract_contours(&f, 0.0);
        assert_eq!(cs.len(), 4);
        assert!(cs.iter().all(|c| c.is_open() && c.exits.len() == 2));
        assert_eq!(label_components(&f, true).count, 1);
    }

    #[test]
    fn exp_sin_right_half_plane_components() {
        let w = Window::square(0.0, 40.0, -20.0, 20.0, 401).unwrap();
        let f = sample_field(&parse("exp(sin(z)-z)").unwrap(), w, 1.0).unwrap();
        assert!(label_components(&f, true).count >= 3);
    }

    #[test]
    fn border_sign_changes_match_open_contours() {
        let w = Window::square(-3.0, 3.0, -3.0, 3.0, 301).unwrap();
        let f = sample_field(&parse("2*exp(z^4)").unwrap(), w, 1.0).unwrap();
        let mut ring = Vec::new();
        for i in 0..w.nx {
            ring.push(w.index(i, 0));
        }
        for j in 1..w.ny {
            ring.push(w.index(w.nx - 1, j));
        }
        for i in (0..w.nx - 1).rev() {
            ring.push(w.index(i, w.ny - 1));
        }
        for j in (1..w.ny - 1).rev() {
            ring.push(w.index(0, j));
        }
        let changes = (0..ring.len())
            .filter(|&k| {
                f.is_positive(ring[k], 0.0) != f.is_positive(ring[(k + 1) % ring.len()], 0.0)
            })
            .count();
        let open = extract_contours(&f, 0.0)
            .iter()
            .filter(|c| c.is_open())
            .count();
        assert_eq!(changes, 2 * open);
    }
}
