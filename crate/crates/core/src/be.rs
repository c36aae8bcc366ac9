//! The function `g(z) = Σ_{k≥1} (z/2^k)^{2^k}`, the tree `T` on which
//! `Re g` is very negative, and the windowed checks that every direct tract
//! of `h = exp(g)` is bounded by a single curve.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::critpoints::{component_critical_count, CritError, LocatedZero};
use crate::expr::Expr;
use crate::field::{extract_contours, label_components, FieldError, ScalarField, Window};
use crate::logcomplex::wrap_angle;
use crate::tracts::build_tracts;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BeError {
    #[error("|z| = {0} exceeds 700; terms leave double range")]
    TooLarge(f64),
    #[error("n = {0} is out of range (1..=4)")]
    LevelOutOfRange(u32),
    #[error("j = {j} must be below 2^n = {}", 1u64 << .n)]
    BadIndex { n: u32, j: u64 },
    #[error("epsilon must lie in (0, 1/8], got {0}")]
    EpsilonOutOfRange(f64),
    #[error("no term of g dominates the others on |z| = {0}")]
    NoDominance(f64),
    #[error("{samples} samples are too few to follow arg g on |z| = {r}")]
    Undersampled { r: f64, samples: usize },
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Crit(#[from] CritError),
}

pub const MAX_ABS_Z: f64 = 700.0;
/// Largest tree level the bound check accepts.
pub const MAX_TREE_LEVEL: u32 = 4;
pub const MAX_EPSILON: f64 = 0.125;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTruncation {
    /// Last index summed.
    pub k: u32,
    /// Upper bound for `Σ_{k>K} (|z|/2^k)^{2^k}`.
    pub tail_bound: f64,
}

fn term(z: Complex64, k: u32) -> Complex64 {
    (z / 2f64.powi(k as i32)).powu(1 << k)
}

fn log_abs_term(r: f64, k: u32) -> f64 {
    let n = 2f64.powi(k as i32);
    n * (r / n).ln()
}

/// Smallest cutoff `K` with `2^{K+1} ≥ 2|z|` and tail bound below `tol`.
pub fn truncation(abs_z: f64, tol: f64) -> SeriesTruncation {
    let mut k = 1;
    loop {
        let next = 2f64.powi(k as i32 + 1);
        if next >= 2.0 * abs_z {
            let tail = if abs_z == 0.0 {
                0.0
            } else {
                2.0 * log_abs_term(abs_z, k + 1).exp()
            };
            if tail < tol || k >= 30 {
                return SeriesTruncation {
                    k,
                    tail_bound: tail,
                };
            }
        }
        k += 1;
    }
}

/// `g(z)` summed to the truncation rule, with the bound on what was left out.
pub fn eval_g_with(z: Complex64, tol: f64) -> Result<(Complex64, SeriesTruncation), BeError> {
    let r = z.norm();
    if !(r <= MAX_ABS_Z) {
        return Err(BeError::TooLarge(r));
    }
    let t = truncation(r, tol);
    let g = (1..=t.k).map(|k| term(z, k)).sum();
    Ok((g, t))
}

pub fn eval_g(z: Complex64, tol: f64) -> Result<Complex64, BeError> {
    eval_g_with(z, tol).map(|(g, _)| g)
}

/// Default absolute truncation tolerance.
pub const G_TOL: f64 = 1e-16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    B,
    CPlus,
    CMinus,
}

/// One piece `B_{j,n}` or `C^±_{j,n}` of the tree.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeSegment {
    pub kind: SegmentKind,
    pub n: u32,
    pub j: u64,
    pub eps: f64,
}

impl TreeSegment {
    pub fn new(kind: SegmentKind, n: u32, j: u64, eps: f64) -> Result<Self, BeError> {
        if !(eps > 0.0 && eps <= MAX_EPSILON) {
            return Err(BeError::EpsilonOutOfRange(eps));
        }
        if n == 0 || n > 40 {
            return Err(BeError::LevelOutOfRange(n));
        }
        if j >= 1u64 << n {
            return Err(BeError::BadIndex { n, j });
        }
        Ok(TreeSegment { kind, n, j, eps })
    }

    /// `r_n = (1+ε)·2^{n+1}`.
    pub fn r_n(&self) -> f64 {
        (1.0 + self.eps) * 2f64.powi(self.n as i32 + 1)
    }

    /// `r'_n = (1−2ε)·2^{n+2}`.
    pub fn r_prime(&self) -> f64 {
        (1.0 - 2.0 * self.eps) * 2f64.powi(self.n as i32 + 2)
    }

    /// `r_{n+1}`.
    pub fn r_next(&self) -> f64 {
        (1.0 + self.eps) * 2f64.powi(self.n as i32 + 2)
    }

    /// Angle of `B_{j,n}`: `π/2^n + 2πj/2^n`.
    pub fn base_angle(&self) -> f64 {
        let m = 2f64.powi(self.n as i32);
        PI / m + TAU * self.j as f64 / m
    }

    pub fn radial_range(&self) -> (f64, f64) {
        match self.kind {
            SegmentKind::B => (self.r_n(), self.r_prime()),
            _ => (self.r_prime(), self.r_next()),
        }
    }

    pub fn point_at(&self, r: f64) -> Complex64 {
        let theta = match self.kind {
            SegmentKind::B => self.base_angle(),
            _ => {
                let s = if self.kind == SegmentKind::CPlus {
                    1.0
                } else {
                    -1.0
                };
                let frac = (r - self.r_prime()) / (self.r_next() - self.r_prime());
                self.base_angle() + s * frac * PI / 2f64.powi(self.n as i32 + 1)
            }
        };
        Complex64::from_polar(r, theta)
    }

    /// All three pieces for every `j` at level `n`.
    pub fn level(n: u32, eps: f64) -> Result<Vec<TreeSegment>, BeError> {
        let mut out = Vec::new();
        for j in 0..(1u64 << n) {
            for kind in [SegmentKind::B, SegmentKind::CPlus, SegmentKind::CMinus] {
                out.push(TreeSegment::new(kind, n, j, eps)?);
            }
        }
        Ok(out)
    }
}

/// `samples` points at equally spaced radii along the segment.
pub fn tree_points(segment: &TreeSegment, samples: usize) -> Result<Vec<Complex64>, BeError> {
    if samples < 2 {
        return Err(BeError::TooFewSamples(samples));
    }
    let (r0, r1) = segment.radial_range();
    Ok((0..samples)
        .map(|k| segment.point_at(r0 + (r1 - r0) * k as f64 / (samples - 1) as f64))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeBound {
    pub segment: TreeSegment,
    pub bound: f64,
    pub max_re_g: f64,
    /// `max Re g + 2^{2^n}`; negative exactly when the bound holds.
    pub margin: f64,
    pub ok: bool,
}

/// Check `Re g < −2^{2^n}` on the sampled segment.
pub fn verify_tree_bound(segment: &TreeSegment, samples: usize) -> Result<TreeBound, BeError> {
    if segment.n > MAX_TREE_LEVEL {
        return Err(BeError::LevelOutOfRange(segment.n));
    }
    let bound = -(2f64.powi(1 << segment.n));
    let mut max_re_g = f64::NEG_INFINITY;
    for z in tree_points(segment, samples)? {
        max_re_g = max_re_g.max(eval_g(z, G_TOL)?.re);
    }
    Ok(TreeBound {
        segment: *segment,
        bound,
        max_re_g,
        margin: max_re_g - bound,
        ok: max_re_g < bound,
    })
}

/// Index whose term strictly outweighs all others on `|z| = r`.
pub fn dominant_index(r: f64) -> Option<u32> {
    let t = truncation(r, 1e-300);
    let logs: Vec<f64> = (1..=t.k + 1).map(|k| log_abs_term(r, k)).collect();
    let (best, &lmax) = logs.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    let others: f64 = logs
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != best)
        .map(|(_, l)| (l - lmax).exp())
        .sum::<f64>()
        + t.tail_bound * (-lmax).exp();
    (others < 1.0).then_some(best as u32 + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GWinding {
    pub r: f64,
    pub dominant: u32,
    pub winding: i64,
    /// `arg g(re^{iθ})` increased between every pair of samples.
    pub monotone: bool,
}

/// Winding of `g` about 0 along `|z| = r`, where one term dominates.
pub fn winding_of_g(r: f64, samples: usize) -> Result<GWinding, BeError> {
    let dominant = dominant_index(r).ok_or(BeError::NoDominance(r))?;
    if samples < 2 {
        return Err(BeError::TooFewSamples(samples));
    }
    let args: Vec<f64> = (0..=samples)
        .map(|k| {
            eval_g(
                Complex64::from_polar(r, TAU * k as f64 / samples as f64),
                G_TOL,
            )
            .map(|g| g.arg())
        })
        .collect::<Result<_, _>>()?;
    let mut total = 0.0;
    let mut monotone = true;
    for p in args.windows(2) {
        let d = wrap_angle(p[1] - p[0]);
        if d.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(BeError::Undersampled { r, samples });
        }
        monotone &= d > 0.0;
        total += d;
    }
    Ok(GWinding {
        r,
        dominant,
        winding: (total / TAU).round() as i64,
        monotone,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BeTract {
    pub id: u32,
    pub nodes: usize,
    pub m: usize,
    pub closed_curves: usize,
    pub truncated: bool,
    pub complete: bool,
    pub tree_hits: usize,
    pub critical_count: u32,
    pub critical_points: Vec<LocatedZero>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingleCurveReport {
    pub window: Window,
    #[serde(rename = "R")]
    pub r: f64,
    pub eps: f64,
    pub tree_points: usize,
    pub tracts: Vec<BeTract>,
    pub complete_tracts: usize,
    pub all_complete_single: bool,
    pub tree_intersections: usize,
    pub critical_total: u32,
    pub ok: bool,
}

// Tree points inside the window, with at least two samples per grid step.
fn tree_in_window(window: &Window, eps: f64) -> Result<Vec<Complex64>, BeError> {
    let far = [window.x_min, window.x_max]
        .iter()
        .flat_map(|x| [window.y_min, window.y_max].map(|y| Complex64::new(*x, y).norm()))
        .fold(0.0, f64::max);
    let h = 0.5 * window.dx().min(window.dy());
    let mut pts = Vec::new();
    let mut n = 1;
    loop {
        let probe = TreeSegment::new(SegmentKind::B, n, 0, eps)?;
        if probe.r_n() > far {
            break;
        }
        for seg in TreeSegment::level(n, eps)? {
            let (r0, r1) = seg.radial_range();
            let arc = if seg.kind == SegmentKind::B {
                r1 - r0
            } else {
                (r1 - r0) + r1 * PI / 2f64.powi(n as i32 + 1)
            };
            let samples = ((arc / h).ceil() as usize).max(64);
            pts.extend(
                tree_points(&seg, samples)?
                    .into_iter()
                    .filter(|z| window.contains(*z)),
            );
        }
        n += 1;
    }
    Ok(pts)
}

/// Run the tract pipeline on `u = Re g − log R`, check that every complete
/// tract has one boundary curve, that no tract meets the tree and that no
/// tract holds a zero of `g'`.
pub fn verify_single_curve_tracts(
    window: Window,
    r: f64,
    eps: f64,
) -> Result<SingleCurveReport, BeError> {
    if !(eps > 0.0 && eps <= MAX_EPSILON) {
        return Err(BeError::EpsilonOutOfRange(eps));
    }
    let log_r = r.ln();
    let corner_max = [window.x_min, window.x_max]
        .iter()
        .flat_map(|x| [window.y_min, window.y_max].map(|y| Complex64::new(*x, y).norm()))
        .fold(0.0, f64::max);
    if corner_max > MAX_ABS_Z {
        return Err(BeError::TooLarge(corner_max));
    }
    let u = |z: Complex64| eval_g(z, G_TOL).ok().map(|g| g.re - log_r);
    let field = ScalarField::from_fn(window, u)?;
    let contours = extract_contours(&field, 0.0);
    let labels = label_components(&field, true);
    let regions = build_tracts(&field, &contours, &labels, r);

    let tree = tree_in_window(&window, eps)?;
    // a tree point counts against a tract when its grid node is labeled, and
    // as a stray hit when only the exact value is positive there
    let mut hits = vec![0usize; regions.len()];
    let mut stray = 0;
    for z in &tree {
        match labels.get(window.nearest(*z)) {
            Some(id) => hits[id as usize] += 1,
            None if u(*z).is_some_and(|v| v > 0.0) => stray += 1,
            None => {}
        }
    }

    let d = Expr::BeSeries {
        order: 1,
        arg: Box::new(Expr::Var),
    };
    let mut tracts = Vec::with_capacity(regions.len());
    for t in &regions {
        let crit = component_critical_count(&field, &labels, t.id, &d, u)?;
        tracts.push(BeTract {
            id: t.id,
            nodes: t.nodes,
            m: t.boundary_curve_count,
            closed_curves: t.closed_curve_count,
            truncated: t.truncated,
            complete: t.is_complete(),
            tree_hits: hits[t.id as usize],
            critical_count: crit.count,
            critical_points: crit.zeros,
        });
    }
    let complete_tracts = tracts.iter().filter(|t| t.complete).count();
    let all_complete_single = tracts.iter().filter(|t| t.complete).all(|t| t.m == 1);
    let tree_intersections = hits.iter().sum::<usize>() + stray;
    let critical_total = tracts.iter().map(|t| t.critical_count).sum();
    Ok(SingleCurveReport {
        window,
        r,
        eps,
        tree_points: tree.len(),
        tracts,
        complete_tracts,
        all_complete_single,
        tree_intersections,
        critical_total,
        ok: all_complete_single
            && complete_tracts > 0
            && tree_intersections == 0
            && critical_total == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn values_of_g() {
        assert_eq!(eval_g(c(0.0, 0.0), G_TOL).unwrap(), c(0.0, 0.0));
        let g2 = eval_g(c(2.0, 0.0), G_TOL).unwrap();
        assert!((g2.re - 1.062_515_258_789_066).abs() < 1e-15, "{g2}");
        assert!(matches!(
            eval_g(c(701.0, 0.0), G_TOL),
            Err(BeError::TooLarge(_))
        ));
    }

    #[test]
    fn parity_and_conjugation() {
        for z in [c(1.3, -0.7), c(20.0, 33.0), c(-150.0, 80.0)] {
            let g = eval_g(z, G_TOL).unwrap();
            let tol = 1e-13 * g.norm().max(1.0);
            assert!((eval_g(-z, G_TOL).unwrap() - g).norm() <= tol);
            assert!((eval_g(z.conj(), G_TOL).unwrap() - g.conj()).norm() <= tol);
        }
    }

    #[test]
    fn cutoff_is_small_and_honest() {
        let t = truncation(700.0, G_TOL);
        assert!(t.k <= 11, "{t:?}");
        for z in [c(5.0, 1.0), c(100.0, -40.0), c(0.0, 650.0)] {
            let (g, t) = eval_g_with(z, G_TOL).unwrap();
            let extra = g + term(z, t.k + 1);
            assert!((extra - g).norm() <= t.tail_bound.max(G_TOL));
        }
    }

    #[test]
    fn tree_geometry() {
        let b = TreeSegment::new(SegmentKind::B, 1, 0, 0.125).unwrap();
        assert_eq!(b.radial_range(), (4.5, 6.0));
        let pts = tree_points(&b, 8).unwrap();
        assert!(pts
            .iter()
            .all(|z| z.re.abs() < 1e-12 && z.im >= 4.5 - 1e-12 && z.im <= 6.0 + 1e-12));
        let cp = TreeSegment::new(SegmentKind::CPlus, 1, 0, 0.125).unwrap();
        assert!((cp.point_at(cp.r_prime()) - b.point_at(b.r_prime())).norm() < 1e-12);
        let end = cp.point_at(cp.r_next());
        assert!((end.arg() - 3.0 * PI / 4.0).abs() < 1e-12);
        assert!(TreeSegment::new(SegmentKind::B, 1, 2, 0.125).is_err());
        assert!(matches!(
            TreeSegment::new(SegmentKind::B, 1, 0, 0.2),
            Err(BeError::EpsilonOutOfRange(_))
        ));
    }

    #[test]
    fn tree_bound_level_two() {
        for seg in TreeSegment::level(2, 0.125).unwrap() {
            let b = verify_tree_bound(&seg, 64).unwrap();
            assert!(b.ok, "{b:?}");
            assert!(b.margin < 0.0);
        }
    }

    #[test]
    fn positive_axis_is_off_the_tree() {
        for k in 0..16 {
            let r = 4.5 + 1.5 * k as f64 / 15.0;
            assert!(eval_g(c(r, 0.0), G_TOL).unwrap().re > 0.0);
        }
    }

    // Rotating by 2π/2^n fixes every term with k >= n, so only the lower
    // terms move g.
    #[test]
    fn rotation_moves_only_lower_terms() {
        for (n, r) in [(1u32, 5.0), (2, 10.0), (3, 20.0), (4, 40.0)] {
            let omega = Complex64::from_polar(1.0, TAU / 2f64.powi(n as i32));
            for k in 0..12 {
                let z = Complex64::from_polar(r, 0.37 + 0.5 * k as f64);
                let dg = eval_g(omega * z, G_TOL).unwrap() - eval_g(z, G_TOL).unwrap();
                let lower: Complex64 = (1..n).map(|m| term(omega * z, m) - term(z, m)).sum();
                let scale = eval_g(z, G_TOL).unwrap().norm().max(1.0);
                assert!((dg - lower).norm() <= 1e-12 * scale, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn windings() {
        let w1 = winding_of_g(5.0, 1024).unwrap();
        assert_eq!((w1.dominant, w1.winding), (1, 2));
        let w2 = winding_of_g(10.0, 1024).unwrap();
        assert_eq!((w2.dominant, w2.winding), (2, 4));
        assert!(w2.monotone);
        assert!(matches!(
            winding_of_g(8.0, 1024),
            Err(BeError::NoDominance(_))
        ));
    }
}
