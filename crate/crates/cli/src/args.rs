use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};

fn parse_list(s: &str, want: &[usize]) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    if !want.contains(&v.len()) {
        return Err(format!(
            "expected {want:?} comma-separated numbers, got {}",
            v.len()
        ));
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug)]
pub struct Bounds(pub [f64; 4]);

fn parse_bounds(s: &str) -> Result<Bounds, String> {
    let v = parse_list(s, &[4])?;
    Ok(Bounds([v[0], v[1], v[2], v[3]]))
}

/// `off`, or `r_min[,r_max[,n]]`.
#[derive(Clone, Copy, Debug)]
pub enum ChannelFlag {
    Off,
    On {
        r_min: f64,
        r_max: Option<f64>,
        n: Option<usize>,
    },
}

fn parse_channels(s: &str) -> Result<ChannelFlag, String> {
    if s == "off" {
        return Ok(ChannelFlag::Off);
    }
    let v = parse_list(s, &[1, 2, 3])?;
    let n = match v.get(2) {
        Some(&n) if n >= 2.0 && n.fract() == 0.0 => Some(n as usize),
        Some(n) => return Err(format!("radius count must be an integer >= 2, got {n}")),
        None => None,
    };
    Ok(ChannelFlag::On {
        r_min: v[0],
        r_max: v.get(1).copied(),
        n,
    })
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v = parse_list(s, &[2])?;
    Ok((v[0], v[1]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Expression in z, e.g. "2*exp(z^4)".
    #[arg(long)]
    pub expr: String,
    /// Boundary value R of the tracts {|f| > R}.
    #[arg(long = "R", default_value_t = 1.0)]
    pub r: f64,
    /// X0,X1,Y0,Y1
    #[arg(long, value_parser = parse_bounds, allow_hyphen_values = true, default_value = "-3,3,-3,3")]
    pub window: Bounds,
    /// Samples per axis.
    #[arg(long, default_value_t = 601)]
    pub res: usize,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `off` or r_min[,r_max,n]; defaults to a quarter of the window inradius.
    #[arg(long, value_parser = parse_channels)]
    pub channels: Option<ChannelFlag>,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub critpoints: Switch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ImageFormat {
    Ppm,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = ImageFormat::Ppm)]
    pub format: ImageFormat,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    /// {"R": .., "theta": .., "singularities": [[re, im], ..], "weights": [..]}
    #[arg(long)]
    pub model: String,
    #[command(subcommand)]
    pub action: ModelAction,
}

#[derive(Subcommand, Debug)]
pub enum ModelAction {
    /// Critical points of u and their reflection pairing.
    Critpoints,
    /// Preimages of w under a single-kernel model.
    Fibers {
        /// RE,IM
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        w: (f64, f64),
        #[arg(long, default_value_t = 3)]
        jmax: i64,
    },
    /// The horodisc {c·P(t,1) > Rj}; c defaults to the first weight.
    Horodisc {
        #[arg(long = "Rj")]
        rj: f64,
        #[arg(long)]
        c: Option<f64>,
    },
    /// Monotonicity threshold of the half-plane potential.
    Monotone {
        /// {"intervals": [[a, b, w], ..], "c": ..}; defaults to one unit
        /// interval [-1, 1] with c equal to the first weight.
        #[arg(long)]
        density: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct BeArgs {
    /// Highest tree level checked (at most 4).
    #[arg(long, default_value_t = 2)]
    pub nmax: u32,
    #[arg(long, default_value_t = 0.125)]
    pub eps: f64,
    /// Samples per tree segment.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    /// Window of the single-curve tract check.
    #[arg(long, value_parser = parse_bounds, allow_hyphen_values = true, default_value = "0,250,0,250")]
    pub window: Bounds,
    #[arg(long, default_value_t = 1001)]
    pub res: usize,
    /// log R of the single-curve tract check.
    #[arg(long, default_value_t = 10.0)]
    pub log_r: f64,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub single_curve: Switch,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_flag() {
        assert!(matches!(parse_channels("off"), Ok(ChannelFlag::Off)));
        assert!(matches!(
            parse_channels("1.5"),
            Ok(ChannelFlag::On { r_min, r_max: None, n: None }) if r_min == 1.5
        ));
        assert!(matches!(
            parse_channels("1,2.5,8"),
            Ok(ChannelFlag::On {
                r_max: Some(_),
                n: Some(8),
                ..
            })
        ));
        assert!(parse_channels("1,2,3.5").is_err());
        assert!(parse_channels("a").is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(parse_bounds("-3,3,-3,3").unwrap().0, [-3.0, 3.0, -3.0, 3.0]);
        assert!(parse_bounds("1,2,3").is_err());
    }
}
