//! End-to-end analysis of one expression on one window, as a serializable
//! report.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::critpoints::{self, CritError, LocatedZero};
use crate::expr::Expr;
use crate::field::{
    extract_contours, label_components, sample_field, FieldError, Window, WindowEdge,
};
use crate::parse::{parse, ParseError};
use crate::tracts::{
    self, build_tracts, classify_channel, classify_tract, detect_channels, ChannelOptions,
    ChannelVerdict, TractError, TractKind,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Tract(#[from] TractError),
    #[error(transparent)]
    Crit(#[from] CritError),
}

impl AnalyzeError {
    /// 1 for malformed input text, 2 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalyzeError::Parse(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnalyzeError::Parse(_) => "parse",
            AnalyzeError::Field(_) => "field",
            AnalyzeError::Tract(_) => "tracts",
            AnalyzeError::Crit(_) => "critpoints",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ChannelSpec {
    pub r_min: f64,
    pub r_max: Option<f64>,
    pub n_radii: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub window: Window,
    pub r: f64,
    pub channels: Option<ChannelSpec>,
    pub critpoints: bool,
}

impl AnalyzeOptions {
    pub fn new(window: Window) -> Self {
        AnalyzeOptions {
            window,
            r: 1.0,
            // circles about the origin need the origin inside the window
            channels: (window.inradius() > 0.0).then(|| ChannelSpec {
                r_min: 0.25 * window.inradius(),
                r_max: None,
                n_radii: None,
            }),
            critpoints: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub max_arg_step: f64,
    pub winding_residual: f64,
    pub multiplicity_radius: f64,
    pub interior_u: f64,
    pub tile_cells: usize,
    pub growth_floor: f64,
    pub decay_ceiling: f64,
    pub alpha_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            max_arg_step: critpoints::MAX_ARG_STEP,
            winding_residual: critpoints::WINDING_RESIDUAL_TOL,
            multiplicity_radius: critpoints::MULTIPLICITY_RADIUS,
            interior_u: critpoints::INTERIOR_U_TOL,
            tile_cells: critpoints::TILE_CELLS,
            growth_floor: tracts::GROWTH_FLOOR,
            decay_ceiling: tracts::DECAY_CEILING,
            alpha_tol: tracts::ALPHA_TOL,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChannelReport {
    pub direction: f64,
    pub radius: f64,
    pub r_max: f64,
    #[serde(flatten)]
    pub verdict: ChannelVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct TractReport {
    pub id: u32,
    pub nodes: usize,
    pub kind: TractKind,
    pub m: usize,
    pub truncated: bool,
    pub complete: bool,
    pub closed_curves: usize,
    /// `[x_min, x_max, y_min, y_max]` of the tract's grid nodes.
    pub bbox: [f64; 4],
    pub exits: Vec<WindowEdge>,
    pub channels: Vec<ChannelReport>,
    pub critical_count: Option<u32>,
    pub critical_bound: Option<usize>,
    pub bound_ok: Option<bool>,
    pub critical_points: Vec<LocatedZero>,
}

/// Work counters; deterministic for fixed input, unlike wall time.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Stats {
    pub grid_nodes: usize,
    pub masked_nodes: usize,
    pub open_contours: usize,
    pub closed_contours: usize,
    pub tracts: usize,
    pub channels: usize,
    pub critical_tiles: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub expression: String,
    pub window: Window,
    #[serde(rename = "R")]
    pub r: f64,
    pub resolution: [usize; 2],
    pub tolerances: Tolerances,
    pub tracts: Vec<TractReport>,
    pub stats: Stats,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}

/// Parse and analyze.
pub fn analyze_text(source: &str, opts: &AnalyzeOptions) -> Result<AnalysisReport, AnalyzeError> {
    let expr = parse(source)?;
    analyze(source, &expr, opts)
}

/// Sample, contour, label, build tracts, detect and classify channels and
/// count critical points in every tract.
pub fn analyze(
    source: &str,
    expr: &Expr,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, AnalyzeError> {
    let field = sample_field(expr, opts.window, opts.r)?;
    let contours = extract_contours(&field, 0.0);
    let labels = label_components(&field, true);
    let regions = build_tracts(&field, &contours, &labels, opts.r);

    let channel_opts = opts.channels.map(|c| {
        let mut o = ChannelOptions::for_window(&field, c.r_min);
        if let Some(r) = c.r_max {
            o.r_max = r;
        }
        if let Some(n) = c.n_radii {
            o.n_radii = n;
        }
        o
    });

    let mut stats = Stats {
        grid_nodes: field.window.len(),
        masked_nodes: field.mask.iter().filter(|&&m| m).count(),
        open_contours: contours.iter().filter(|c| c.is_open()).count(),
        closed_contours: contours.iter().filter(|c| c.closed).count(),
        tracts: regions.len(),
        ..Stats::default()
    };

    let mut tracts_out = Vec::with_capacity(regions.len());
    for t in &regions {
        let channels = match &channel_opts {
            Some(o) => detect_channels(t, &field, &labels, o)?,
            None => Vec::new(),
        };
        let verdicts: Vec<ChannelVerdict> = channels
            .par_iter()
            .map(|c| classify_channel(c, &field, expr, opts.r))
            .collect();
        let crit = if opts.critpoints {
            Some(tracts::tract_critical_count(t, &field, &labels, expr)?)
        } else {
            None
        };
        stats.channels += channels.len();
        stats.critical_tiles += crit.as_ref().map_or(0, |c| c.tiles);
        let class = classify_tract(t, verdicts.clone(), crit.as_ref().map(|c| c.count));
        tracts_out.push(TractReport {
            id: t.id,
            nodes: t.nodes,
            kind: class.kind,
            m: class.m,
            truncated: class.truncated,
            complete: class.complete,
            closed_curves: class.closed_curves,
            bbox: t.bbox,
            exits: t.exits.clone(),
            channels: channels
                .iter()
                .zip(verdicts)
                .map(|(c, v)| ChannelReport {
                    direction: c.direction,
                    radius: c.radius,
                    r_max: c.r_max,
                    verdict: v,
                })
                .collect(),
            critical_count: class.critical_count,
            critical_bound: class.critical_bound,
            bound_ok: class.bound_ok,
            critical_points: crit.map(|c| c.zeros).unwrap_or_default(),
        });
    }

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        expression: source.to_string(),
        window: opts.window,
        r: opts.r,
        resolution: [opts.window.nx, opts.window.ny],
        tolerances: Tolerances::default(),
        tracts: tracts_out,
        stats,
    })
}
