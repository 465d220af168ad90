use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac_spectra::spectral_region::Exponent;
use num_complex::Complex64;

#[derive(Parser, Debug)]
#[command(name = "dirac-spectra", version, about = "L^p spectra of the Dirac operator on H^{k+1} x N")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Boundary and classification of one or more spectral regions.
    Region(RegionArgs),
    /// Decay of the radial mode solution against its predicted rate.
    Radial(RadialArgs),
    /// Weyl-sequence residual ratios over a list of cutoff scales.
    Weyl(WeylArgs),
    /// Inside/boundary/outside test for a single μ (exit 0 inside, 1 outside).
    Membership(MembershipArgs),
    /// The D² region next to the Laplacian region on H^{k+1}.
    CompareLaplacian(CompareArgs),
    /// Ball-model integral deciding whether the pulled-back constant spinor is L^p.
    Ball(BallArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Output {
    pub fn resolve(&self, default: Format, allowed: &[Format]) -> anyhow::Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            bail!("format {} not supported here", f.name());
        }
        Ok(f)
    }
}

#[derive(Args, Debug, Clone)]
pub struct RegionParams {
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Lowest |eigenvalue| of D^N; repeat for several panels.
    #[arg(long = "lambda0", conflicts_with = "factor")]
    pub lambda0: Vec<f64>,
    /// Closed factor as JSON, e.g. '{"type":"circle","L":6.28,"structure":"trivial"}'; repeatable.
    #[arg(long)]
    pub factor: Vec<String>,
    #[arg(long, default_value = "1", value_parser = parse_exponent)]
    pub p: Exponent,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[command(flatten)]
    pub params: RegionParams,
    /// Range of the boundary parameter s, as "min,max".
    #[arg(long, default_value = "-4,4", value_parser = parse_pair)]
    pub s_range: (f64, f64),
    #[arg(long, default_value_t = 81)]
    pub samples: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct MembershipArgs {
    #[command(flatten)]
    pub params: RegionParams,
    /// μ as "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu: Complex64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct RadialArgs {
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Coupling ρ; the spherical value k/2 when absent.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Sphere eigenvalue λ as "re,im".
    #[arg(long, default_value = "1,0", value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Complex64,
    #[arg(long, default_value = "0,0", value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu: Complex64,
    /// Fit window as "ra,rb".
    #[arg(long, default_value = "8,16", value_parser = parse_pair)]
    pub window: (f64, f64),
    #[arg(long, default_value_t = 0.5)]
    pub r_near: f64,
    /// Start of the inward integration; 1.5 times the window end when absent.
    #[arg(long)]
    pub r_far: Option<f64>,
    #[arg(long, default_value_t = 801)]
    pub samples: usize,
    /// ODE relative tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct WeylArgs {
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long, default_value = "1", value_parser = parse_exponent)]
    pub p: Exponent,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub s: f64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sign: i8,
    #[arg(long, default_value = "2,4,8,16,32", value_delimiter = ',')]
    pub n_list: Vec<u32>,
    /// Use the D² residual.
    #[arg(long)]
    pub squared: bool,
    /// Relative tolerance of the innermost quadrature.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[arg(long, default_value = "1", value_parser = parse_exponent)]
    pub p: Exponent,
    #[arg(long, default_value = "-3,3", value_parser = parse_pair)]
    pub s_range: (f64, f64),
    #[arg(long, default_value_t = 61)]
    pub samples: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct BallArgs {
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[arg(long, default_value_t = 3.0)]
    pub p: f64,
    #[arg(long, default_value_t = dirac_spectra::halfspace_weyl::DEFAULT_REFINEMENT)]
    pub refinement: usize,
    #[command(flatten)]
    pub output: Output,
}

pub fn parse_exponent(s: &str) -> Result<Exponent, String> {
    s.parse().map_err(|e: dirac_spectra::Error| e.to_string())
}

fn split_two(s: &str) -> anyhow::Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        bail!("expected two comma-separated numbers, got {s:?}");
    }
    let a = parts[0].parse().with_context(|| format!("bad number {:?}", parts[0]))?;
    let b = parts[1].parse().with_context(|| format!("bad number {:?}", parts[1]))?;
    Ok((a, b))
}

pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    split_two(s).map_err(|e| e.to_string())
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = parse_pair(s)?;
    Ok(Complex64::new(re, im))
}
