//! Tract regions built from the positive components of a field, their
//! channels (single accesses to infinity inside the window) and the verdict
//! on each channel: it either contains a logarithmic tract or carries a
//! finite asymptotic value of modulus `R`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::critpoints::{component_critical_count, ComponentCriticalCount, CritError};
use crate::expr::Expr;
use crate::field::{extract_contours, label_components, Contour, Labels, ScalarField, WindowEdge};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TractError {
    #[error("window too small: need r_min < r_max < inradius, got r_min={r_min}, r_max={r_max}, inradius={inradius}")]
    WindowTooSmall {
        r_min: f64,
        r_max: f64,
        inradius: f64,
    },
    #[error("need at least 2 radii, got {0}")]
    TooFewRadii(usize),
    #[error("no tract with id {0}")]
    UnknownTract(u32),
}

/// One positive component of `u` together with the contours bounding it.
#[derive(Clone, Debug)]
pub struct TractRegion {
    pub id: u32,
    pub boundary: Vec<Contour>,
    /// The region touches the window edge; every open boundary curve is
    /// presumed to continue to infinity.
    pub truncated: bool,
    /// Number of open boundary contours (`m`).
    pub boundary_curve_count: usize,
    pub closed_curve_count: usize,
    pub r: f64,
    pub nodes: usize,
    /// Window edges met by the open boundary contours.
    pub exits: Vec<WindowEdge>,
    /// A window corner lies inside the region, so part of its boundary may
    /// be hidden by the window.
    pub covers_corner: bool,
    /// `[x_min, x_max, y_min, y_max]` of the region's grid nodes.
    pub bbox: [f64; 4],
}

impl TractRegion {
    /// Bounded with a closed boundary: not a direct tract.
    pub fn is_degenerate(&self) -> bool {
        self.boundary_curve_count == 0 && !self.truncated
    }

    /// Every boundary curve is visible in the window and open.
    pub fn is_complete(&self) -> bool {
        self.truncated
            && self.boundary_curve_count >= 1
            && self.closed_curve_count == 0
            && !self.covers_corner
    }
}

/// Group contours by the positive component they border.
pub fn build_tracts(
    field: &ScalarField,
    contours: &[Contour],
    labels: &Labels,
    r: f64,
) -> Vec<TractRegion> {
    let w = &field.window;
    let sizes = labels.sizes();
    let mut regions: Vec<TractRegion> = (0..labels.count as u32)
        .map(|id| TractRegion {
            id,
            boundary: Vec::new(),
            truncated: false,
            boundary_curve_count: 0,
            closed_curve_count: 0,
            r,
            nodes: sizes[id as usize],
            exits: Vec::new(),
            covers_corner: false,
            bbox: [
                f64::INFINITY,
                f64::NEG_INFINITY,
                f64::INFINITY,
                f64::NEG_INFINITY,
            ],
        })
        .collect();
    for (k, &id) in labels.ids.iter().enumerate() {
        if id == Labels::UNLABELED {
            continue;
        }
        let (i, j) = w.coords(k);
        let reg = &mut regions[id as usize];
        let (x, y) = (w.x(i), w.y(j));
        reg.bbox = [
            reg.bbox[0].min(x),
            reg.bbox[1].max(x),
            reg.bbox[2].min(y),
            reg.bbox[3].max(y),
        ];
        if w.on_border(i, j) {
            reg.truncated = true;
            if (i == 0 || i == w.nx - 1) && (j == 0 || j == w.ny - 1) {
                reg.covers_corner = true;
            }
        }
    }
    for c in contours {
        let Some(id) = c.positive_nodes.first().and_then(|&k| labels.get(k)) else {
            continue;
        };
        let reg = &mut regions[id as usize];
        if c.closed {
            reg.closed_curve_count += 1;
        } else {
            reg.boundary_curve_count += 1;
            for e in &c.exits {
                if !reg.exits.contains(e) {
                    reg.exits.push(*e);
                }
            }
        }
        reg.boundary.push(c.clone());
    }
    regions
}

/// Intersection of a channel with one sampled circle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelArc {
    pub radius: f64,
    /// Counter-clockwise angular interval; `end` may exceed `TAU`.
    pub start: f64,
    pub end: f64,
    #[serde(skip)]
    pub points: Vec<Complex64>,
}

impl ChannelArc {
    pub fn mid_angle(&self) -> f64 {
        0.5 * (self.start + self.end)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Channel {
    pub tract_id: u32,
    /// Smallest sampled radius from which on the channel has a single access.
    pub radius: f64,
    pub r_max: f64,
    /// One arc per sampled radius, innermost first.
    pub arcs: Vec<ChannelArc>,
    /// Outward ray angle in `[0, 2π)` taken at the outermost arc.
    pub direction: f64,
    /// Grid nodes of the channel at its starting radius.
    #[serde(skip)]
    pub nodes: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct ChannelOptions {
    pub r_min: f64,
    pub r_max: f64,
    pub n_radii: usize,
}

impl ChannelOptions {
    pub const DEFAULT_N_RADII: usize = 16;

    /// `r_max` defaults to 95% of the window inradius.
    pub fn for_window(field: &ScalarField, r_min: f64) -> Self {
        ChannelOptions {
            r_min,
            r_max: 0.95 * field.window.inradius(),
            n_radii: Self::DEFAULT_N_RADII,
        }
    }

    pub fn radii(&self) -> Vec<f64> {
        let n = self.n_radii;
        let q = (self.r_max / self.r_min).ln() / (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k + 1 == n {
                    self.r_max
                } else {
                    self.r_min * (q * k as f64).exp()
                }
            })
            .collect()
    }
}

// Circle sample points and, for each, the nearest grid node.
fn circle_nodes(field: &ScalarField, rho: f64) -> (Vec<Complex64>, Vec<usize>) {
    let w = &field.window;
    let h = 0.5 * w.dx().min(w.dy());
    let n = ((TAU * rho / h).ceil() as usize).max(64);
    let pts: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(rho, TAU * k as f64 / n as f64))
        .collect();
    let nodes = pts.iter().map(|&z| w.nearest(z)).collect();
    (pts, nodes)
}

// Maximal circular runs of `true`; `None` if the whole circle is inside.
fn runs(member: &[bool]) -> Option<Vec<(usize, usize)>> {
    let n = member.len();
    if member.iter().all(|&b| b) {
        return None;
    }
    let first_out = member.iter().position(|&b| !b).unwrap();
    let mut out = Vec::new();
    let mut k = 0;
    while k < n {
        let idx = (first_out + k) % n;
        if member[idx] {
            let start = first_out + k;
            while k < n && member[(first_out + k) % n] {
                k += 1;
            }
            out.push((start, first_out + k - 1));
        } else {
            k += 1;
        }
    }
    Some(out)
}

// Labels of the tract nodes outside the disc of radius `rho`.
fn outer_labels(field: &ScalarField, labels: &Labels, id: u32, rho: f64) -> Labels {
    let w = &field.window;
    let mut sub = field.clone();
    for k in 0..w.len() {
        if labels.ids[k] != id || w.node_point(k).norm() <= rho {
            sub.mask[k] = false;
            sub.values[k] = sub.values[k].min(0.0) - 1.0;
        }
    }
    label_components(&sub, true)
}

fn arc_of(pts: &[Complex64], n: usize, run: (usize, usize), rho: f64) -> ChannelArc {
    let step = TAU / n as f64;
    ChannelArc {
        radius: rho,
        start: run.0 as f64 * step,
        end: run.1 as f64 * step,
        points: (run.0..=run.1).map(|k| pts[k % n]).collect(),
    }
}

/// Channels of a tract between `r_min` and `r_max`.
///
/// Every arc of the tract on the outermost circle seeds a candidate; moving
/// inwards, the candidate is the component of `tract ∩ {|z| > ρ}` holding
/// that arc, and it stays a channel as long as it meets each sampled circle
/// out to `r_max` in exactly one arc and reaches the window edge.
pub fn detect_channels(
    tract: &TractRegion,
    field: &ScalarField,
    labels: &Labels,
    opts: &ChannelOptions,
) -> Result<Vec<Channel>, TractError> {
    let w = &field.window;
    let inradius = w.inradius();
    if !(opts.r_min > 0.0 && opts.r_min < opts.r_max && opts.r_max < inradius) {
        return Err(TractError::WindowTooSmall {
            r_min: opts.r_min,
            r_max: opts.r_max,
            inradius,
        });
    }
    if opts.n_radii < 2 {
        return Err(TractError::TooFewRadii(opts.n_radii));
    }
    let id = tract.id;
    let radii = opts.radii();
    let circles: Vec<(Vec<Complex64>, Vec<usize>)> =
        radii.iter().map(|&r| circle_nodes(field, r)).collect();
    let guard = w.dx().hypot(w.dy());
    let sub_labels: Vec<Labels> = radii
        .par_iter()
        .map(|&r| outer_labels(field, labels, id, r - guard))
        .collect();

    let top = radii.len() - 1;
    let (top_pts, top_nodes) = &circles[top];
    let in_tract: Vec<bool> = top_nodes.iter().map(|&k| labels.ids[k] == id).collect();
    let Some(seeds) = runs(&in_tract) else {
        return Ok(Vec::new());
    };

    let mut channels = Vec::new();
    for seed in seeds {
        let mid = (seed.0 + seed.1) / 2 % top_pts.len();
        let seed_node = top_nodes[mid];
        let mut arcs_ok: Vec<ChannelArc> = Vec::new();
        let mut nodes_ok: Vec<usize> = Vec::new();
        for k in (0..=top).rev() {
            let sub = &sub_labels[k];
            let Some(comp) = sub.get(seed_node) else {
                break;
            };
            let mut arcs = Vec::with_capacity(top - k + 1);
            let mut single = true;
            for (r, (pts, nodes)) in radii[k..].iter().zip(&circles[k..]) {
                let member: Vec<bool> = nodes.iter().map(|&n| sub.ids[n] == comp).collect();
                match runs(&member) {
                    Some(rs) if rs.len() == 1 => arcs.push(arc_of(pts, pts.len(), rs[0], *r)),
                    _ => {
                        single = false;
                        break;
                    }
                }
            }
            if !single {
                break;
            }
            let nodes: Vec<usize> = (0..w.len()).filter(|&n| sub.ids[n] == comp).collect();
            let reaches_edge = nodes.iter().any(|&n| {
                let (i, j) = w.coords(n);
                w.on_border(i, j)
            });
            if !reaches_edge {
                break;
            }
            arcs_ok = arcs;
            nodes_ok = nodes;
        }
        if arcs_ok.is_empty() {
            continue;
        }
        let direction = arcs_ok.last().unwrap().mid_angle().rem_euclid(TAU);
        channels.push(Channel {
            tract_id: id,
            radius: arcs_ok[0].radius,
            r_max: opts.r_max,
            arcs: arcs_ok,
            direction,
            nodes: nodes_ok,
        });
    }
    channels.sort_by(|a, b| a.direction.total_cmp(&b.direction));
    Ok(channels)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum VerdictKind {
    ContainsLogarithmicTract,
    AsymptoticValue { alpha: Complex64 },
    Undetermined,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelVerdict {
    #[serde(flatten)]
    pub kind: VerdictKind,
    /// `(ρ, max u on the arc)` for each sampled radius.
    pub profile: Vec<(f64, f64)>,
    /// Open and closed boundary curves of the high-level region, when tested.
    pub omega_open_curves: Option<usize>,
    pub omega_closed_curves: Option<usize>,
}

/// Absolute floor of the growth threshold on the max-u profile.
pub const GROWTH_FLOOR: f64 = 10.0;
/// Max u below which a decreasing profile counts as having reached `R`.
pub const DECAY_CEILING: f64 = 0.048_790_164_169_432; // ln 1.05
/// Accepted relative deviation of `|α|` from `R`.
pub const ALPHA_TOL: f64 = 0.05;

fn profile_monotone(m: &[f64], increasing: bool) -> bool {
    m.windows(2).all(|p| {
        let slack = 1e-9 * p[0].abs().max(p[1].abs()).max(1.0);
        if increasing {
            p[1] >= p[0] - slack
        } else {
            p[1] <= p[0] + slack
        }
    })
}

/// Decide between the two alternatives for a channel.
pub fn classify_channel(
    channel: &Channel,
    field: &ScalarField,
    expr: &Expr,
    r: f64,
) -> ChannelVerdict {
    let log_r = r.ln();
    let u = |z: Complex64| match expr.eval_log(z) {
        Ok(l) if !l.is_zero && l.log_mod.is_finite() => Some(l.log_mod - log_r),
        _ => None,
    };
    let profile: Vec<(f64, f64)> = channel
        .arcs
        .iter()
        .map(|a| {
            let m = a
                .points
                .iter()
                .filter_map(|&z| u(z))
                .fold(f64::NEG_INFINITY, f64::max);
            (a.radius, m)
        })
        .collect();
    let m: Vec<f64> = profile.iter().map(|p| p.1).collect();
    let undetermined = |omega: Option<(usize, usize)>| ChannelVerdict {
        kind: VerdictKind::Undetermined,
        profile: profile.clone(),
        omega_open_curves: omega.map(|o| o.0),
        omega_closed_curves: omega.map(|o| o.1),
    };
    if m.len() < 3 || m.iter().any(|v| !v.is_finite()) {
        return undetermined(None);
    }
    let first = m[0];
    let last = *m.last().unwrap();

    if profile_monotone(&m, true) && last > (2.0 * first).max(GROWTH_FLOOR) {
        let level = 0.5 * last;
        let (open, closed) = omega_curves(channel, field, level);
        let kind = if open == 1 && closed == 0 {
            VerdictKind::ContainsLogarithmicTract
        } else {
            VerdictKind::Undetermined
        };
        return ChannelVerdict {
            kind,
            profile,
            omega_open_curves: Some(open),
            omega_closed_curves: Some(closed),
        };
    }

    if profile_monotone(&m, false) && last < DECAY_CEILING {
        let spine: Vec<Complex64> = channel
            .arcs
            .iter()
            .rev()
            .take(3)
            .filter_map(|a| {
                let mid = Complex64::from_polar(a.radius, a.mid_angle());
                expr.eval(mid).ok()
            })
            .collect();
        if spine.len() == 3 {
            let alpha = spine.iter().sum::<Complex64>() / 3.0;
            if ((alpha.norm() - r) / r).abs() < ALPHA_TOL {
                return ChannelVerdict {
                    kind: VerdictKind::AsymptoticValue { alpha },
                    profile,
                    omega_open_curves: None,
                    omega_closed_curves: None,
                };
            }
        }
    }
    undetermined(None)
}

// Boundary curves of the component of {u > level} inside the channel that
// holds the channel's largest sample.
fn omega_curves(channel: &Channel, field: &ScalarField, level: f64) -> (usize, usize) {
    let n = field.window.len();
    let mut inside = vec![false; n];
    for &k in &channel.nodes {
        inside[k] = true;
    }
    let mut sub = field.clone();
    for (k, &ins) in inside.iter().enumerate() {
        if ins && !field.mask[k] {
            sub.values[k] = field.values[k] - level;
        } else {
            sub.mask[k] = false;
            sub.values[k] = -1.0;
        }
    }
    let Some(peak) = channel
        .nodes
        .iter()
        .copied()
        .filter(|&k| !field.mask[k])
        .max_by(|&a, &b| field.values[a].total_cmp(&field.values[b]))
    else {
        return (0, 0);
    };
    let labels = label_components(&sub, true);
    let Some(omega) = labels.get(peak) else {
        return (0, 0);
    };
    let contours = extract_contours(&sub, 0.0);
    let mut open = 0;
    let mut closed = 0;
    for c in &contours {
        if c.positive_nodes.first().and_then(|&k| labels.get(k)) == Some(omega) {
            if c.closed {
                closed += 1;
            } else {
                open += 1;
            }
        }
    }
    (open, closed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TractKind {
    Logarithmic,
    Direct,
    Degenerate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TractClassification {
    pub kind: TractKind,
    pub m: usize,
    pub truncated: bool,
    pub complete: bool,
    pub closed_curves: usize,
    pub critical_count: Option<u32>,
    /// `m - 1`, the most critical points a tract with `m` boundary curves
    /// can hold.
    pub critical_bound: Option<usize>,
    pub bound_ok: Option<bool>,
    pub channels: Vec<ChannelVerdict>,
}

/// Label a tract: a single open boundary curve makes it logarithmic,
/// otherwise it is a direct tract whose critical count must stay at most
/// `m - 1`.
pub fn classify_tract(
    tract: &TractRegion,
    verdicts: Vec<ChannelVerdict>,
    critical_count: Option<u32>,
) -> TractClassification {
    let m = tract.boundary_curve_count;
    let kind = if tract.is_degenerate() {
        TractKind::Degenerate
    } else if m == 1 && tract.closed_curve_count == 0 {
        TractKind::Logarithmic
    } else {
        TractKind::Direct
    };
    let critical_bound = (m >= 1).then(|| m - 1);
    let bound_ok = match (critical_count, critical_bound) {
        (Some(c), Some(b)) => Some(c as usize <= b),
        _ => None,
    };
    TractClassification {
        kind,
        m,
        truncated: tract.truncated,
        complete: tract.is_complete(),
        closed_curves: tract.closed_curve_count,
        critical_count,
        critical_bound,
        bound_ok,
        channels: verdicts,
    }
}

/// Critical points of `f` inside a tract, counted as zeros of `f'`.
pub fn tract_critical_count(
    tract: &TractRegion,
    field: &ScalarField,
    labels: &Labels,
    f: &Expr,
) -> Result<ComponentCriticalCount, CritError> {
    let d = f.derivative();
    let log_r = tract.r.ln();
    component_critical_count(field, labels, tract.id, &d, |z| match f.eval_log(z) {
        Ok(l) if !l.is_zero => Some(l.log_mod - log_r),
        _ => None,
    })
}

/// Field, contours, labels and tracts of `{|f| > R}` on one grid.
pub struct TractSet {
    pub field: ScalarField,
    pub labels: Labels,
    pub tracts: Vec<TractRegion>,
}

impl TractSet {
    pub fn from_field(field: ScalarField, r: f64) -> Self {
        let contours = extract_contours(&field, 0.0);
        let labels = label_components(&field, true);
        let tracts = build_tracts(&field, &contours, &labels, r);
        TractSet {
            field,
            labels,
            tracts,
        }
    }

    pub fn get(&self, id: u32) -> Result<&TractRegion, TractError> {
        self.tracts
            .get(id as usize)
            .ok_or(TractError::UnknownTract(id))
    }

    /// Tract holding the grid node nearest to `z`.
    pub fn tract_at(&self, z: Complex64) -> Option<&TractRegion> {
        let k = self.field.window.nearest(z);
        self.labels.get(k).map(|id| &self.tracts[id as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{sample_field, Window};
    use crate::parse::parse;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn set(src: &str, w: Window) -> (Expr, TractSet) {
        let e = parse(src).unwrap();
        let f = sample_field(&e, w, 1.0).unwrap();
        (e, TractSet::from_field(f, 1.0))
    }

    fn half_plane(w: Window) -> TractSet {
        TractSet::from_field(ScalarField::from_fn(w, |z| Some(z.re)).unwrap(), 1.0)
    }

    #[test]
    fn exp_z4_has_one_tract_with_four_curves() {
        let (_, s) = set(
            "2*exp(z^4)",
            Window::square(-3.0, 3.0, -3.0, 3.0, 301).unwrap(),
        );
        assert_eq!(s.tracts.len(), 1);
        assert_eq!(s.tracts[0].boundary_curve_count, 4);
        assert!(s.tracts[0].truncated);
    }

    #[test]
    fn exp_z4_channels_point_along_axes() {
        let (e, s) = set(
            "2*exp(z^4)",
            Window::square(-3.0, 3.0, -3.0, 3.0, 301).unwrap(),
        );
        let t = &s.tracts[0];
        let opts = ChannelOptions::for_window(&s.field, 1.5);
        let ch = detect_channels(t, &s.field, &s.labels, &opts).unwrap();
        assert_eq!(ch.len(), 4);
        for (c, want) in ch.iter().zip([0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2]) {
            assert!(
                (c.direction - want).abs() < 0.05,
                "{} vs {}",
                c.direction,
                want
            );
            let v = classify_channel(c, &s.field, &e, 1.0);
            assert_eq!(v.kind, VerdictKind::ContainsLogarithmicTract);
        }
    }

    #[test]
    fn half_plane_is_logarithmic() {
        let s = half_plane(Window::square(-2.0, 2.0, -2.0, 2.0, 201).unwrap());
        assert_eq!(s.tracts.len(), 1);
        let t = &s.tracts[0];
        assert_eq!(t.boundary_curve_count, 1);
        let ch = detect_channels(
            t,
            &s.field,
            &s.labels,
            &ChannelOptions::for_window(&s.field, 0.5),
        )
        .unwrap();
        assert_eq!(ch.len(), 1);
        assert!(ch[0].direction.min(TAU - ch[0].direction) < 0.05);
        let c = classify_tract(t, vec![], Some(0));
        assert_eq!(c.kind, TractKind::Logarithmic);
        assert_eq!(c.bound_ok, Some(true));
    }

    #[test]
    fn central_strip_has_two_ends() {
        let (_, s) = set(
            "exp(exp(z))",
            Window::new(-6.0, 6.0, -2.0, 2.0, 601, 201).unwrap(),
        );
        let t = s.tract_at(Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(t.boundary_curve_count, 2);
        let opts = ChannelOptions::for_window(&s.field, 0.5);
        let ch = detect_channels(t, &s.field, &s.labels, &opts).unwrap();
        assert_eq!(ch.len(), 2);
        assert!(ch
            .iter()
            .any(|c| c.direction < 0.1 || c.direction > TAU - 0.1));
        assert!(ch.iter().any(|c| (c.direction - PI).abs() < 0.1));
    }

    #[test]
    fn strip_ends_split_into_the_dichotomy() {
        let (e, s) = set(
            "exp(exp(z))",
            Window::square(-6.0, 6.0, -7.0, 7.0, 301).unwrap(),
        );
        let t = s.tract_at(Complex64::new(0.0, 0.0)).unwrap();
        let opts = ChannelOptions::for_window(&s.field, 2.0);
        let ch = detect_channels(t, &s.field, &s.labels, &opts).unwrap();
        assert_eq!(ch.len(), 2);
        let kinds: Vec<VerdictKind> = ch
            .iter()
            .map(|c| classify_channel(c, &s.field, &e, 1.0).kind)
            .collect();
        assert_eq!(kinds[0], VerdictKind::ContainsLogarithmicTract);
        let VerdictKind::AsymptoticValue { alpha } = kinds[1] else {
            panic!("{:?}", kinds[1]);
        };
        assert!((alpha - 1.0).norm() < 0.05);
    }

    #[test]
    fn bound_violation_is_flagged() {
        let s = half_plane(Window::square(-2.0, 2.0, -2.0, 2.0, 51).unwrap());
        let mut t = s.tracts[0].clone();
        t.boundary_curve_count = 2;
        let c = classify_tract(&t, vec![], Some(2));
        assert_eq!(c.kind, TractKind::Direct);
        assert_eq!(c.bound_ok, Some(false));
    }

    #[test]
    fn rejects_oversized_radius() {
        let s = half_plane(Window::square(-2.0, 2.0, -2.0, 2.0, 51).unwrap());
        let opts = ChannelOptions {
            r_min: 0.5,
            r_max: 2.5,
            n_radii: 16,
        };
        assert!(matches!(
            detect_channels(&s.tracts[0], &s.field, &s.labels, &opts),
            Err(TractError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn runs_wrap_around() {
        let m = [true, false, false, true, true];
        assert_eq!(runs(&m).unwrap(), vec![(3, 5)]);
        assert!(runs(&[true, true]).is_none());
        assert_eq!(runs(&[false, true, false, true]).unwrap().len(), 2);
    }
}
