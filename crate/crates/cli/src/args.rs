use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadrisect::Tolerances;

/// Environment variable that multiplies every tolerance.
pub const SCALE_VAR: &str = "QUADRISECT_TOLERANCE_SCALE";

#[derive(Debug, Parser)]
#[command(
    name = "quadrisect",
    version,
    about = "Quadrisections of triangles: solve, count, classify, render"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Output format of the main document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the main document here instead of stdout.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Residual bound for the area and perpendicularity equations.
    #[arg(long, global = true, value_name = "TOL", value_parser = positive, allow_hyphen_values = true)]
    pub tol_eq: Option<f64>,

    /// Residual below which a sample counts as a root.
    #[arg(long, global = true, value_name = "TOL", value_parser = positive, allow_hyphen_values = true)]
    pub tol_root: Option<f64>,

    /// Residual bound for a tangential (double) root.
    #[arg(long, global = true, value_name = "TOL", value_parser = positive, allow_hyphen_values = true)]
    pub tol_tangent: Option<f64>,

    /// Relative deviation allowed in each quarter area.
    #[arg(long, global = true, value_name = "TOL", value_parser = positive, allow_hyphen_values = true)]
    pub tol_area: Option<f64>,

    /// Normalised dot product allowed between the two segments.
    #[arg(long, global = true, value_name = "TOL", value_parser = positive, allow_hyphen_values = true)]
    pub tol_perp: Option<f64>,

    /// Band around the region boundaries of the triangle space.
    #[arg(long, global = true, value_name = "EPS", value_parser = positive, allow_hyphen_values = true)]
    pub eps_region: Option<f64>,

    /// Band around the envelope.
    #[arg(long, global = true, value_name = "EPS", value_parser = positive, allow_hyphen_values = true)]
    pub eps_env: Option<f64>,
}

impl ConfigArgs {
    /// Defaults, then flags, then the environment scale.
    pub fn tolerances(&self, scale: f64) -> Tolerances {
        let d = Tolerances::default();
        Tolerances {
            eq: self.tol_eq.unwrap_or(d.eq),
            root: self.tol_root.unwrap_or(d.root),
            tangent: self.tol_tangent.unwrap_or(d.tangent),
            area: self.tol_area.unwrap_or(d.area),
            perp: self.tol_perp.unwrap_or(d.perp),
            region: self.eps_region.unwrap_or(d.region),
            env: self.eps_env.unwrap_or(d.env),
        }
        .scaled(scale)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every quadrisection of a triangle.
    Solve {
        #[command(flatten)]
        sides: SidesArg,
        /// Also draw the triangle and its quadrisections.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Number of quadrisections, by the counting theorem and by enumeration.
    Count {
        #[command(flatten)]
        sides: SidesArg,
    },
    /// Classify a grid over the triangle space and draw it.
    Atlas {
        /// Cells per axis.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(2..=4000))]
        resolution: u32,
        /// SVG file; the CSV and JSON tables are written next to it.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// The arc of apexes sharing the base coordinate `x`.
    Arcs {
        #[arg(long, value_name = "VALUE", allow_negative_numbers = true)]
        x: f64,
    },
    /// The historical formulations, recomputed.
    Historical {
        #[arg(value_enum)]
        method: Method,
        #[command(flatten)]
        sides: SidesArg,
        /// A printed value to compare with the nearest recomputed root.
        #[arg(long, value_name = "VALUE")]
        printed: Option<f64>,
    },
    /// Cross-check the counting theorem, or re-verify a saved solution.
    Verify {
        #[command(flatten)]
        source: VerifySource,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bernoulli,
    Euler,
}

#[derive(Debug, Args)]
pub struct SidesArg {
    /// Side lengths `a,b,c` as decimals.
    #[arg(long, value_name = "A,B,C", value_parser = parse_sides, allow_hyphen_values = true)]
    pub sides: [f64; 3],
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct VerifySource {
    #[arg(long, value_name = "A,B,C", value_parser = parse_sides, allow_hyphen_values = true)]
    pub sides: Option<[f64; 3]>,
    /// A JSON document written by `solve`.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
}

pub fn parse_sides(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts[..] else {
        return Err(format!("expected three comma-separated lengths, got {}", parts.len()));
    };
    let num = |p: &str| -> Result<f64, String> {
        let v: f64 = p.parse().map_err(|_| format!("malformed number `{p}`"))?;
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(format!("side length `{p}` must be positive and finite"))
        }
    };
    Ok([num(a)?, num(b)?, num(c)?])
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(_) => Err(format!("tolerance `{s}` must be positive and finite")),
        Err(_) => Err(format!("malformed number `{s}`")),
    }
}

/// Reads the tolerance scale from its environment value.
pub fn parse_scale(value: Option<&str>) -> Result<f64, String> {
    let Some(raw) = value else {
        return Ok(1.0);
    };
    match raw.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("{SCALE_VAR} must be a positive number, got `{raw}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sides() {
        assert_eq!(parse_sides("1, 2,2.5"), Ok([1.0, 2.0, 2.5]));
        assert!(parse_sides("1,2").is_err());
        assert!(parse_sides("1,2,x").is_err());
        assert!(parse_sides("1,-2,2").is_err());
        assert!(parse_sides("1,2,inf").is_err());
    }

    #[test]
    fn scale() {
        assert_eq!(parse_scale(None), Ok(1.0));
        assert_eq!(parse_scale(Some("10")), Ok(10.0));
        assert!(parse_scale(Some("0")).is_err());
        assert!(parse_scale(Some("ten")).is_err());
    }

    #[test]
    fn flags_then_scale() {
        let cli = Cli::try_parse_from(["quadrisect", "--tol-eq", "1e-6", "count", "--sides", "1,1,1"]).unwrap();
        let tol = cli.config.tolerances(2.0);
        assert_eq!(tol.eq, 2e-6);
        assert_eq!(tol.root, 2e-12);
    }

    #[test]
    fn verify_needs_exactly_one_source() {
        assert!(Cli::try_parse_from(["quadrisect", "verify"]).is_err());
        assert!(Cli::try_parse_from(["quadrisect", "verify", "--sides", "1,1,1", "--input", "a.json"]).is_err());
    }
}
