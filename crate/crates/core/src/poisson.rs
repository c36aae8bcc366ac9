//! Exactly solvable tract models: `f∘φ(t) = R e^{iθ} exp(Σ c_k (ζ_k+t)/(ζ_k−t))`
//! on the unit disc, their critical points, the covering fibers of the
//! single-kernel model, horodiscs, and the half-plane potential
//! `U(x+iy) = cx + x∫ w(s) ds / (x² + (y−s)²)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logcomplex::LogComplex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoissonError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("point {0} is not inside the unit disc")]
    OutsideDisc(Complex64),
    #[error("fibers need a single-kernel model, got {0} kernels")]
    NotSingleKernel(usize),
    #[error("|w| = {abs} must exceed R = {r}")]
    NotAboveR { abs: f64, r: f64 },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("invalid density: {0}")]
    InvalidDensity(String),
    #[error("x = {0} is not in the right half-plane")]
    NotInHalfPlane(f64),
    #[error("level {level} too small: U({x0}, {y}) = {u} already reaches it at the monotonicity threshold")]
    LevelTooSmall { level: f64, x0: f64, y: f64, u: f64 },
}

const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonModel {
    #[serde(rename = "R")]
    pub r: f64,
    pub theta: f64,
    pub singularities: Vec<Complex64>,
    pub weights: Vec<f64>,
}

impl PoissonModel {
    pub fn new(
        r: f64,
        theta: f64,
        singularities: Vec<Complex64>,
        weights: Vec<f64>,
    ) -> Result<Self, PoissonError> {
        let m = PoissonModel {
            r,
            theta,
            singularities,
            weights,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), PoissonError> {
        let bad = |s: String| Err(PoissonError::InvalidModel(s));
        if !(self.r > 0.0 && self.r.is_finite()) || !self.theta.is_finite() {
            return bad(format!("R = {} must be positive and theta finite", self.r));
        }
        if self.singularities.is_empty() {
            return bad("need at least one singularity".into());
        }
        if self.singularities.len() != self.weights.len() {
            return bad(format!(
                "{} singularities but {} weights",
                self.singularities.len(),
                self.weights.len()
            ));
        }
        for (k, z) in self.singularities.iter().enumerate() {
            if (z.norm() - 1.0).abs() >= UNIT_TOL {
                return bad(format!("singularity {k} = {z} is not on the unit circle"));
            }
            if self.singularities[..k]
                .iter()
                .any(|w| (w - z).norm() < UNIT_TOL)
            {
                return bad(format!("singularity {k} = {z} is repeated"));
            }
        }
        if let Some(c) = self.weights.iter().find(|c| !(**c > 0.0 && c.is_finite())) {
            return bad(format!("weight {c} must be positive"));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.singularities.len()
    }

    fn kernels(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.singularities
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
    }

    // Σ c_k (ζ_k + t)/(ζ_k − t)
    fn herglotz(&self, t: Complex64) -> Result<Complex64, PoissonError> {
        if !(t.norm() < 1.0) {
            return Err(PoissonError::OutsideDisc(t));
        }
        Ok(self.kernels().map(|(z, c)| c * (z + t) / (z - t)).sum())
    }

    /// `u(t) = Σ c_k Re((ζ_k + t)/(ζ_k − t))`.
    pub fn u(&self, t: Complex64) -> Result<f64, PoissonError> {
        Ok(self.herglotz(t)?.re)
    }

    /// `f(φ(t))` in log form: modulus `log R + u(t)`, argument `θ + v(t)`.
    pub fn eval(&self, t: Complex64) -> Result<LogComplex, PoissonError> {
        let h = self.herglotz(t)?;
        Ok(LogComplex::new(self.r.ln() + h.re, self.theta + h.im))
    }
}

/// `u(t) = Σ c_k P(t, ζ_k)`; positive on the disc.
pub fn model_u(model: &PoissonModel, t: Complex64) -> Result<f64, PoissonError> {
    model.u(t)
}

pub fn model_eval(model: &PoissonModel, t: Complex64) -> Result<LogComplex, PoissonError> {
    model.eval(t)
}

// Polynomials are stored lowest degree first.
fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(p: &[Complex64], t: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * t + v;
        v = v * t + c;
    }
    (v, d)
}

/// Relative size below which a leading coefficient counts as cancelled.
pub const DEGREE_DROP_TOL: f64 = 1e-10;

/// Roots of `p` (lowest degree first, leading coefficient non-zero) by the
/// Aberth–Ehrlich iteration followed by Newton polishing.
pub fn poly_roots(p: &[Complex64]) -> Vec<Complex64> {
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = p[deg];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    if deg == 1 {
        return vec![-monic[0]];
    }
    // Cauchy bound for the initial circle
    let bound = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(0.5 * bound, TAU * k as f64 / deg as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..deg {
            let (v, d) = poly_eval(&monic, z[k]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let w = v / d;
            let s: Complex64 = (0..deg)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let step = w / (1.0 - w * s);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = poly_eval(&monic, *r);
            if d == Complex64::new(0.0, 0.0) {
                break;
            }
            let step = v / d;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            *r -= step;
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    z
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalRoot {
    pub t: Complex64,
    pub in_disc: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelCriticalPoints {
    pub roots: Vec<CriticalRoot>,
    /// Degree the polynomial would have without cancellation, `2n − 2`.
    pub nominal_degree: usize,
    pub degree: usize,
    /// Smallest `||t| − 1|` over the roots.
    pub min_circle_distance: Option<f64>,
}

impl ModelCriticalPoints {
    pub fn in_disc_count(&self) -> usize {
        self.roots.iter().filter(|r| r.in_disc).count()
    }

    /// Roots lost to cancellation of leading coefficients; they sit at ∞.
    pub fn roots_at_infinity(&self) -> usize {
        self.nominal_degree - self.degree
    }

    pub fn finite_roots(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.t).collect()
    }
}

/// Coefficients of `Σ c_k 2ζ_k Π_{j≠k} (ζ_j − t)²`, whose roots are the
/// critical points of `u` (zeros of `Σ c_k 2ζ_k/(ζ_k − t)²`).
pub fn critical_polynomial(model: &PoissonModel) -> Vec<Complex64> {
    let n = model.n();
    let mut total = vec![Complex64::new(0.0, 0.0); 2 * n - 1];
    for (k, (zk, ck)) in model.kernels().enumerate() {
        let mut p = vec![2.0 * ck * zk];
        for (j, zj) in model.singularities.iter().enumerate() {
            if j != k {
                let lin = [*zj, Complex64::new(-1.0, 0.0)];
                p = poly_mul(&poly_mul(&p, &lin), &lin);
            }
        }
        for (t, c) in total.iter_mut().zip(p) {
            *t += c;
        }
    }
    total
}

pub fn model_critical_points(model: &PoissonModel) -> ModelCriticalPoints {
    let mut p = critical_polynomial(model);
    let nominal_degree = p.len() - 1;
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    while p.len() > 1 && p.last().unwrap().norm() <= DEGREE_DROP_TOL * scale {
        p.pop();
    }
    let degree = p.len() - 1;
    let roots: Vec<CriticalRoot> = poly_roots(&p)
        .into_iter()
        .map(|t| CriticalRoot {
            t,
            in_disc: t.norm() < 1.0,
        })
        .collect();
    let min_circle_distance = roots
        .iter()
        .map(|r| (r.t.norm() - 1.0).abs())
        .reduce(f64::min);
    ModelCriticalPoints {
        roots,
        nominal_degree,
        degree,
        min_circle_distance,
    }
}

/// Tolerance on `|r·conj(s) − 1|` for a matched reflection pair.
pub const PAIRING_TOL: f64 = 1e-8;

/// True when the finite roots are invariant under `t ↦ 1/conj(t)`, with
/// roots at 0 matched to the roots lost at ∞.
pub fn check_reflection_pairing(roots: &[Complex64], roots_at_infinity: usize) -> bool {
    let mut at_infinity = roots_at_infinity;
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let r = roots[i];
        if r.norm() < PAIRING_TOL {
            if at_infinity == 0 {
                return false;
            }
            at_infinity -= 1;
            continue;
        }
        let best = (0..roots.len())
            .filter(|&j| !used[j])
            .map(|j| (j, (r * roots[j].conj() - 1.0).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((j, err)) if err < PAIRING_TOL => used[j] = true,
            _ => return false,
        }
    }
    at_infinity == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fiber {
    pub j: i64,
    pub t: Complex64,
}

/// Preimages of `w` under the single-kernel model, one per branch `j` of
/// `log(w/R)`: `t_j = ζ(s_j − c)/(s_j + c)` with `s_j = log(w/R) − iθ + 2πij`.
pub fn fiber_enumerate(
    model: &PoissonModel,
    w: Complex64,
    j_range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<Fiber>, PoissonError> {
    if model.n() != 1 {
        return Err(PoissonError::NotSingleKernel(model.n()));
    }
    if !(w.norm() > model.r) {
        return Err(PoissonError::NotAboveR {
            abs: w.norm(),
            r: model.r,
        });
    }
    let zeta = model.singularities[0];
    let c = model.weights[0];
    let base = (w / model.r).ln() - Complex64::new(0.0, model.theta);
    Ok(j_range
        .map(|j| {
            let s = base + Complex64::new(0.0, TAU * j as f64);
            Fiber {
                j,
                t: zeta * (s - c) / (s + c),
            }
        })
        .collect())
}

/// The horodisc `{t ∈ 𝔻 : c·P(t, 1) > R_j}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Horodisc {
    pub c: f64,
    pub rj: f64,
    pub center: f64,
    pub radius: f64,
}

impl Horodisc {
    pub fn contains(&self, t: Complex64) -> bool {
        (t - self.center).norm() < self.radius
    }

    /// Closed containment of `self` in `other`.
    pub fn is_inside(&self, other: &Horodisc) -> bool {
        (self.center - other.center).abs() + self.radius <= other.radius + 1e-15
    }
}

pub fn horodisc_geometry(c: f64, rj: f64) -> Result<Horodisc, PoissonError> {
    if !(c > 0.0) {
        return Err(PoissonError::NonPositive {
            name: "c",
            value: c,
        });
    }
    if !(rj > 0.0) {
        return Err(PoissonError::NonPositive {
            name: "Rj",
            value: rj,
        });
    }
    Ok(Horodisc {
        c,
        rj,
        center: rj / (rj + c),
        radius: c / (rj + c),
    })
}

/// Poisson kernel `P(t, ζ) = Re((ζ + t)/(ζ − t))`.
pub fn poisson_kernel(t: Complex64, zeta: Complex64) -> f64 {
    ((zeta + t) / (zeta - t)).re
}

/// Piecewise-constant density on the imaginary axis plus the linear term `c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneDensity {
    /// `(a_j, b_j, w_j)`.
    pub intervals: Vec<(f64, f64, f64)>,
    pub c: f64,
}

impl HalfPlaneDensity {
    pub fn new(mut intervals: Vec<(f64, f64, f64)>, c: f64) -> Result<Self, PoissonError> {
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let d = HalfPlaneDensity { intervals, c };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), PoissonError> {
        if !(self.c >= 0.0 && self.c.is_finite()) {
            return Err(PoissonError::InvalidDensity(format!(
                "c = {} must be non-negative",
                self.c
            )));
        }
        for (k, &(a, b, w)) in self.intervals.iter().enumerate() {
            if !(a < b && a.is_finite() && b.is_finite()) {
                return Err(PoissonError::InvalidDensity(format!(
                    "interval {k}: need a < b, got [{a}, {b}]"
                )));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(PoissonError::InvalidDensity(format!(
                    "interval {k}: weight {w} must be non-negative"
                )));
            }
            if k > 0 && self.intervals[k - 1].1 > a {
                return Err(PoissonError::InvalidDensity(format!(
                    "interval {k} overlaps its predecessor"
                )));
            }
        }
        Ok(())
    }

    /// `Σ w_j (b_j − a_j)`.
    pub fn mass(&self) -> f64 {
        self.intervals.iter().map(|(a, b, w)| w * (b - a)).sum()
    }

    pub fn u(&self, x: f64, y: f64) -> Result<f64, PoissonError> {
        if !(x > 0.0) {
            return Err(PoissonError::NotInHalfPlane(x));
        }
        Ok(self.c * x
            + self
                .intervals
                .iter()
                .map(|&(a, b, w)| w * (((b - y) / x).atan() - ((a - y) / x).atan()))
                .sum::<f64>())
    }
}

pub fn halfplane_u(density: &HalfPlaneDensity, x: f64, y: f64) -> Result<f64, PoissonError> {
    density.u(x, y)
}

/// `x₀ = sqrt(2·mass/c)`: `∂U/∂x > 0` for every `x > x₀`.
pub fn monotonicity_threshold(density: &HalfPlaneDensity) -> Result<f64, PoissonError> {
    if !(density.c > 0.0) {
        return Err(PoissonError::NonPositive {
            name: "c",
            value: density.c,
        });
    }
    Ok((2.0 * density.mass() / density.c).sqrt())
}

/// Finite-difference check of `∂U/∂x` beyond the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityCheck {
    pub x0: f64,
    pub points: usize,
    /// Smallest central difference `∂U/∂x` seen.
    pub min_derivative: f64,
    /// Smallest `∂U/∂x − (c − 2·mass/x²)`; the bound chain holds when ≥ 0.
    pub min_bound_slack: f64,
    pub ok: bool,
}

/// Sample `∂U/∂x` by central differences on an `nx × ny` grid covering
/// `x ∈ (x₀, x₀ + span]` and the support of the density plus a margin.
pub fn check_monotonicity(
    density: &HalfPlaneDensity,
    nx: usize,
    ny: usize,
) -> Result<MonotonicityCheck, PoissonError> {
    let x0 = monotonicity_threshold(density)?;
    let (lo, hi) = density
        .intervals
        .iter()
        .fold((0.0f64, 0.0f64), |(lo, hi), &(a, b, _)| {
            (lo.min(a), hi.max(b))
        });
    let margin = 1.0 + (hi - lo);
    let span = 4.0 * x0.max(1.0);
    let mass = density.mass();
    let mut min_derivative = f64::INFINITY;
    let mut min_bound_slack = f64::INFINITY;
    for i in 1..=nx {
        let x = x0 + span * i as f64 / nx as f64;
        let h = 1e-5 * x;
        for j in 0..ny {
            let y = lo - margin + (hi - lo + 2.0 * margin) * j as f64 / (ny - 1).max(1) as f64;
            let d = (density.u(x + h, y)? - density.u(x - h, y)?) / (2.0 * h);
            min_derivative = min_derivative.min(d);
            min_bound_slack = min_bound_slack.min(d - (density.c - 2.0 * mass / (x * x)));
        }
    }
    Ok(MonotonicityCheck {
        x0,
        points: nx * ny,
        min_derivative,
        min_bound_slack,
        ok: min_derivative > 0.0 && min_bound_slack >= -1e-6,
    })
}

/// The level curve `U(X(y), y) = level` as a graph over `y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelCurve {
    pub ys: Vec<f64>,
    pub xs: Vec<f64>,
    /// Exactly one sign change of `U − level` was bracketed for every `y`.
    pub single: bool,
}

const CURVE_SCAN: usize = 64;

/// Solve `U(x, y) = level` for each `y` on `[x₀, level/c]`, where `U` is
/// increasing in `x` and the root is therefore unique.
pub fn omega_single_curve(
    density: &HalfPlaneDensity,
    level: f64,
    ys: &[f64],
) -> Result<LevelCurve, PoissonError> {
    let x0 = monotonicity_threshold(density)?;
    let x_hi = level / density.c;
    let mut xs = Vec::with_capacity(ys.len());
    let mut single = true;
    for &y in ys {
        let lo = x0.max(f64::MIN_POSITIVE);
        let u_lo = density.u(lo, y)?;
        if !(u_lo < level) || !(x_hi > lo) {
            return Err(PoissonError::LevelTooSmall {
                level,
                x0,
                y,
                u: u_lo,
            });
        }
        // count sign changes on a coarse scan before bisecting
        let mut changes = 0;
        let mut prev = u_lo - level;
        for k in 1..=CURVE_SCAN {
            let x = lo + (x_hi - lo) * k as f64 / CURVE_SCAN as f64;
            let cur = density.u(x, y)? - level;
            if (prev < 0.0) != (cur < 0.0) {
                changes += 1;
            }
            prev = cur;
        }
        single &= changes == 1;
        let (mut a, mut b) = (lo, x_hi);
        while b - a > 1e-13 * b.max(1.0) {
            let m = 0.5 * (a + b);
            if density.u(m, y)? < level {
                a = m;
            } else {
                b = m;
            }
        }
        xs.push(0.5 * (a + b));
    }
    Ok(LevelCurve {
        ys: ys.to_vec(),
        xs,
        single,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn simple() -> PoissonModel {
        PoissonModel::new(1.0, 0.0, vec![c(1.0, 0.0)], vec![1.0]).unwrap()
    }

    #[test]
    fn u_values() {
        assert_eq!(simple().u(c(0.5, 0.0)).unwrap(), 3.0);
        let m =
            PoissonModel::new(1.0, 0.0, vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![1.0, 1.0]).unwrap();
        assert!((m.u(c(0.0, 0.0)).unwrap() - 2.0).abs() < 1e-15);
        assert!((m.u(c(0.0, 0.5)).unwrap() - 1.2).abs() < 1e-14);
        assert!(matches!(
            m.u(c(1.0, 0.0)),
            Err(PoissonError::OutsideDisc(_))
        ));
    }

    #[test]
    fn eval_is_log_of_formula() {
        let m =
            PoissonModel::new(2.0, 0.3, vec![c(0.0, 1.0), c(0.6, -0.8)], vec![0.5, 1.5]).unwrap();
        let t = c(0.2, -0.4);
        let direct = 2.0
            * Complex64::new(0.0, 0.3).exp()
            * (0.5 * (c(0.0, 1.0) + t) / (c(0.0, 1.0) - t)
                + 1.5 * (c(0.6, -0.8) + t) / (c(0.6, -0.8) - t))
                .exp();
        let got = m.eval(t).unwrap().to_complex();
        assert!((got - direct).norm() < 1e-12 * direct.norm());
        let at0 = simple().eval(c(0.0, 0.0)).unwrap();
        assert_eq!((at0.log_mod, at0.arg), (1.0, 0.0));
    }

    #[test]
    fn symmetric_pair_drops_degree() {
        let m =
            PoissonModel::new(1.0, 0.0, vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![1.0, 1.0]).unwrap();
        let cp = model_critical_points(&m);
        assert_eq!(cp.nominal_degree, 2);
        assert_eq!(cp.degree, 1);
        assert_eq!(cp.roots.len(), 1);
        assert!(cp.roots[0].t.norm() < 1e-15);
        assert_eq!(cp.in_disc_count(), 1);
        assert!(check_reflection_pairing(
            &cp.finite_roots(),
            cp.roots_at_infinity()
        ));
    }

    #[test]
    fn quadratic_case_matches_formula() {
        // (i − t)² + i(1 − t)² = 0
        let m =
            PoissonModel::new(1.0, 0.0, vec![c(1.0, 0.0), c(0.0, 1.0)], vec![1.0, 1.0]).unwrap();
        let cp = model_critical_points(&m);
        assert_eq!(cp.in_disc_count(), 1);
        for r in &cp.roots {
            let t = r.t;
            let v = (c(0.0, 1.0) - t).powu(2) + c(0.0, 1.0) * (1.0 - t).powu(2);
            assert!(v.norm() < 1e-12);
        }
        assert!(check_reflection_pairing(&cp.finite_roots(), 0));
        let mut moved = cp.finite_roots();
        moved[0] += 1e-3;
        assert!(!check_reflection_pairing(&moved, 0));
    }

    #[test]
    fn single_kernel_has_no_critical_points() {
        let cp = model_critical_points(&simple());
        assert!(cp.roots.is_empty());
        assert_eq!(cp.degree, 0);
    }

    #[test]
    fn fibers() {
        let m = simple();
        let f = fiber_enumerate(&m, c(std::f64::consts::E, 0.0), 0..=1).unwrap();
        assert!(f[0].t.norm() < 1e-15);
        let want = c(0.0, TAU) / c(2.0, TAU);
        assert!((f[1].t - want).norm() < 1e-15);
        assert!(
            (f[1].t.norm() - std::f64::consts::PI / (1.0 + std::f64::consts::PI.powi(2)).sqrt())
                .abs()
                < 1e-12
        );
        assert!(matches!(
            fiber_enumerate(&m, c(1.0, 0.0), 0..=0),
            Err(PoissonError::NotAboveR { .. })
        ));
    }

    #[test]
    fn horodiscs() {
        let h = horodisc_geometry(1.0, 1.0).unwrap();
        assert_eq!((h.center, h.radius), (0.5, 0.5));
        let h2 = horodisc_geometry(1.0, 3.0).unwrap();
        assert!(h2.is_inside(&h));
        assert!(horodisc_geometry(1.0, 1e12).unwrap().radius < 1e-11);
        // membership agrees with the kernel inequality
        for t in [c(0.5, 0.2), c(0.9, 0.0), c(0.1, 0.1), c(0.7, -0.45)] {
            assert_eq!(h.contains(t), poisson_kernel(t, c(1.0, 0.0)) > 1.0);
        }
    }

    #[test]
    fn half_plane_values() {
        let empty = HalfPlaneDensity::new(vec![], 1.0).unwrap();
        assert_eq!(empty.u(3.5, -2.0).unwrap(), 3.5);
        assert_eq!(monotonicity_threshold(&empty).unwrap(), 0.0);
        let one = HalfPlaneDensity::new(vec![(-1.0, 1.0, 1.0)], 0.0).unwrap();
        assert!((one.u(1.0, 0.0).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(matches!(
            one.u(0.0, 0.0),
            Err(PoissonError::NotInHalfPlane(_))
        ));
        let d = HalfPlaneDensity::new(vec![(-1.0, 1.0, 1.0)], 1.0).unwrap();
        assert_eq!(monotonicity_threshold(&d).unwrap(), 2.0);
        let chk = check_monotonicity(&d, 50, 50).unwrap();
        assert!(chk.ok, "{chk:?}");
        let heavy = HalfPlaneDensity::new(vec![(-1.0, 1.0, 2.0)], 1.0).unwrap();
        let r = monotonicity_threshold(&heavy).unwrap() / 2.0;
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn level_curves() {
        let empty = HalfPlaneDensity::new(vec![], 1.0).unwrap();
        let ys: Vec<f64> = (-20..=20).map(|k| k as f64).collect();
        let line = omega_single_curve(&empty, 5.0, &ys).unwrap();
        assert!(line.single);
        assert!(line.xs.iter().all(|x| (x - 5.0).abs() < 1e-10));

        let d = HalfPlaneDensity::new(vec![(-1.0, 1.0, 1.0)], 1.0).unwrap();
        let c10 = omega_single_curve(&d, 10.0, &ys).unwrap();
        let c12 = omega_single_curve(&d, 12.0, &ys).unwrap();
        assert!(c10.single && c12.single);
        assert!(c10.xs.iter().all(|&x| x > 8.0 && x < 10.0));
        assert!(c10.xs.iter().zip(&c12.xs).all(|(a, b)| a < b));
        assert!(matches!(
            omega_single_curve(&d, 2.5, &ys),
            Err(PoissonError::LevelTooSmall { .. })
        ));
    }

    #[test]
    fn rejects_bad_models() {
        assert!(PoissonModel::new(1.0, 0.0, vec![c(0.5, 0.0)], vec![1.0]).is_err());
        assert!(PoissonModel::new(1.0, 0.0, vec![c(1.0, 0.0)], vec![-1.0]).is_err());
        assert!(PoissonModel::new(1.0, 0.0, vec![], vec![]).is_err());
        assert!(
            PoissonModel::new(1.0, 0.0, vec![c(1.0, 0.0), c(1.0, 0.0)], vec![1.0, 1.0]).is_err()
        );
    }
}
