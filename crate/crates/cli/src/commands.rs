use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use dirac_spectra::closed_spectra::{make_region, FactorDescriptor};
use dirac_spectra::halfspace_weyl::{
    ball_harmonic_integral, sweep_csv, weyl_ratio, weyl_ratio_squared, QuadratureSpec, WeylConfig,
};
use dirac_spectra::ode::OdeOptions;
use dirac_spectra::radial_modes::{build_system, decay_exponent, integrate_hat_radial, DecayFit};
use dirac_spectra::spectral_region::{laplacian_boundary, laplacian_shift, uniform_grid, SpectralRegion};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::svg;

pub fn run(command: Command) -> Result<u8> {
    match command {
        Command::Region(a) => region(a),
        Command::Radial(a) => radial(a),
        Command::Weyl(a) => weyl(a),
        Command::Membership(a) => membership(a),
        Command::CompareLaplacian(a) => compare_laplacian(a),
        Command::Ball(a) => ball(a),
    }
}

fn emit(out: &Option<std::path::PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn csv_header(config: &Value) -> String {
    format!("# config: {config}\n")
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn c_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Regions for every `--lambda0` (or `--factor`), in the order given.
fn resolve_regions(params: &RegionParams) -> Result<(Vec<SpectralRegion>, Value)> {
    let mut regions = Vec::new();
    let mut factors = Vec::new();
    if params.factor.is_empty() {
        let lambdas = if params.lambda0.is_empty() { vec![0.0] } else { params.lambda0.clone() };
        for l in lambdas {
            regions.push(SpectralRegion::new(params.c, params.k, l, params.p)?);
        }
    } else {
        for f in &params.factor {
            let desc = FactorDescriptor::from_json(f)?;
            regions.push(make_region(&desc, params.c, params.k, params.p)?);
            factors.push(serde_json::to_value(&desc)?);
        }
    }
    let config = json!({
        "c": params.c,
        "k": params.k,
        "p": params.p,
        "lambda0": regions.iter().map(|r| r.lambda0).collect::<Vec<_>>(),
        "factor": factors,
    });
    Ok((regions, config))
}

fn region(a: RegionArgs) -> Result<u8> {
    let format = a.output.resolve(Format::Json, &[Format::Json, Format::Csv, Format::Svg])?;
    let (regions, mut config) = resolve_regions(&a.params)?;
    let (s_min, s_max) = a.s_range;
    uniform_grid(s_min, s_max, a.samples)?;
    config["subcommand"] = json!("region");
    config["s_range"] = json!([s_min, s_max]);
    config["samples"] = json!(a.samples);
    config["format"] = json!(format.name());

    let text = match format {
        Format::Json => {
            let mut panels = Vec::new();
            for r in &regions {
                panels.push(r.to_json(&r.boundary(s_min, s_max, a.samples)?));
            }
            let v = if panels.len() == 1 {
                let mut v = panels.pop().unwrap();
                v["config"] = config;
                v
            } else {
                json!({ "config": config, "panels": panels })
            };
            json_text(&v)
        }
        Format::Csv => {
            let mut s = csv_header(&config);
            s.push_str("panel,case,landmark,s,branch,re,im\n");
            let grid = uniform_grid(s_min, s_max, a.samples)?;
            for (i, r) in regions.iter().enumerate() {
                let case = r.classify();
                let pts = r.boundary(s_min, s_max, a.samples)?;
                for (j, z) in pts.iter().enumerate() {
                    let _ = writeln!(s, "{i},{},{},{},{},{},{}", case.tag, case.landmark, grid[j / 4], j % 4, z.re, z.im);
                }
            }
            s
        }
        Format::Svg => svg::region_figure(&regions, &format!("config: {config}")),
    };
    emit(&a.output.out, &text)?;
    Ok(0)
}

fn membership(a: MembershipArgs) -> Result<u8> {
    let format = a.output.resolve(Format::Csv, &[Format::Json, Format::Csv])?;
    if !a.tol.is_finite() {
        bail!("--tol must be finite");
    }
    let (regions, mut config) = resolve_regions(&a.params)?;
    if regions.len() != 1 {
        bail!("membership takes a single region, got {}", regions.len());
    }
    let r = &regions[0];
    config["subcommand"] = json!("membership");
    config["mu"] = json!(c_pair(a.mu));
    config["tol"] = json!(a.tol);
    config["format"] = json!(format.name());

    let kappa_imag = r.kappa_imag(a.mu);
    let threshold = r.threshold();
    let status = if (kappa_imag - threshold).abs() <= a.tol.abs() {
        "boundary"
    } else if kappa_imag < threshold {
        "inside"
    } else {
        "outside"
    };
    let text = match format {
        Format::Json => json_text(&json!({
            "config": config,
            "status": status,
            "kappa_imag": kappa_imag,
            "threshold": threshold,
        })),
        _ => format!("{}status,kappa_imag,threshold\n{status},{kappa_imag},{threshold}\n", csv_header(&config)),
    };
    emit(&a.output.out, &text)?;
    Ok(if status == "outside" { 1 } else { 0 })
}

fn radial(a: RadialArgs) -> Result<u8> {
    let format = a.output.resolve(Format::Csv, &[Format::Json, Format::Csv])?;
    let rho = a.rho.unwrap_or(f64::from(a.k) / 2.0);
    let r_far = a.r_far.unwrap_or(1.5 * a.window.1);
    let opts = OdeOptions { rtol: a.tol, ..OdeOptions::default() };
    let system = build_system(a.lambda, a.mu, rho, a.c, a.k)?;
    let hat = integrate_hat_radial(&system, a.r_near, r_far, system.decaying_eigenvector(0)?, a.samples, &opts)?;
    let tr = &hat.trajectory;
    let fit = decay_exponent(tr, a.window)?;
    let config = json!({
        "subcommand": "radial",
        "c": a.c,
        "k": a.k,
        "rho": rho,
        "lambda": c_pair(a.lambda),
        "mu": c_pair(a.mu),
        "kappa": c_pair(system.kappa),
        "window": [a.window.0, a.window.1],
        "r_near": a.r_near,
        "r_far": r_far,
        "samples": a.samples,
        "tol": a.tol,
        "format": format.name(),
    });
    let rel = |fitted: f64, predicted: f64| {
        if predicted == 0.0 { fitted.abs() } else { (fitted - predicted).abs() / predicted.abs() }
    };
    // Columns after `r,log_norm`, as (name, value) pairs.
    let fit_cols: Vec<(&str, f64)> = match fit {
        DecayFit::Exponential { slope } => {
            let predicted = system.predicted_rates().0;
            vec![("fitted_slope", slope), ("predicted_slope", predicted), ("relative_error", rel(slope, predicted))]
        }
        DecayFit::PowerExponential { beta, gamma } => {
            let (pb, pg) = (-f64::from(a.k) / 2.0, -system.kappa.re);
            vec![
                ("fitted_beta", beta),
                ("predicted_beta", pb),
                ("fitted_gamma", gamma),
                ("predicted_gamma", pg),
                ("relative_error", rel(beta, pb).max(rel(gamma, pg))),
            ]
        }
    };
    let text = match format {
        Format::Json => {
            let mut fit_obj = serde_json::Map::new();
            for (k, v) in &fit_cols {
                fit_obj.insert((*k).to_string(), json!(v));
            }
            json_text(&json!({
                "config": config,
                "fit": fit_obj,
                "r": tr.grid,
                "log_norm": tr.log_norm,
            }))
        }
        _ => {
            let mut s = csv_header(&config);
            s.push_str("r,log_norm");
            for (k, _) in &fit_cols {
                let _ = write!(s, ",{k}");
            }
            s.push('\n');
            for (r, l) in tr.grid.iter().zip(&tr.log_norm) {
                let _ = write!(s, "{r},{l}");
                for (_, v) in &fit_cols {
                    let _ = write!(s, ",{v}");
                }
                s.push('\n');
            }
            s
        }
    };
    emit(&a.output.out, &text)?;
    Ok(0)
}

fn weyl(a: WeylArgs) -> Result<u8> {
    let format = a.output.resolve(Format::Csv, &[Format::Json, Format::Csv])?;
    if a.n_list.is_empty() {
        bail!("--n-list is empty");
    }
    let mut quadrature = QuadratureSpec::default();
    if let Some(t) = a.tol {
        if !(t > 0.0 && t < 1.0) {
            bail!("--tol must lie in (0, 1), got {t}");
        }
        quadrature.rtol = t;
    }
    let base = WeylConfig::new(a.k, a.p, a.s, a.sign, a.n_list[0])?.with_quadrature(quadrature);
    let configs: Vec<WeylConfig> = a.n_list.iter().map(|&n| base.with_n(n)).collect();
    for c in &configs {
        WeylConfig::new(c.k, c.p, c.s, c.sign, c.n)?;
    }
    let results: Vec<_> = configs
        .par_iter()
        .map(|c| if a.squared { weyl_ratio_squared(c) } else { weyl_ratio(c) })
        .collect();
    let mut rows = Vec::with_capacity(configs.len());
    for (c, r) in configs.iter().zip(results) {
        rows.push((*c, r?));
    }
    let config = json!({
        "subcommand": "weyl",
        "k": a.k,
        "p": a.p,
        "s": a.s,
        "sign": a.sign,
        "n_list": a.n_list,
        "squared": a.squared,
        "mu": c_pair(base.mu()),
        "alpha": c_pair(base.alpha),
        "quadrature": quadrature,
        "format": format.name(),
    });
    let text = match format {
        Format::Json => json_text(&json!({
            "config": config,
            "rows": rows.iter().map(|(c, w)| {
                let mut v = serde_json::to_value(w).expect("ratio serializes");
                v["n"] = json!(c.n);
                v
            }).collect::<Vec<_>>(),
        })),
        _ => format!("{}{}", csv_header(&config), sweep_csv(&rows)),
    };
    emit(&a.output.out, &text)?;
    Ok(0)
}

fn compare_laplacian(a: CompareArgs) -> Result<u8> {
    let format = a.output.resolve(Format::Svg, &[Format::Svg, Format::Csv, Format::Json])?;
    let grid = uniform_grid(a.s_range.0, a.s_range.1, a.samples)?;
    let region = SpectralRegion::new(1.0, a.k, 0.0, a.p)?;
    let lap = laplacian_boundary(a.k, a.p, &grid);
    let dsq = region.d_squared_boundary(&grid);
    let shift = laplacian_shift(a.k, a.p);
    let config = json!({
        "subcommand": "compare-laplacian",
        "c": 1.0,
        "lambda0": 0.0,
        "k": a.k,
        "p": a.p,
        "s_range": [a.s_range.0, a.s_range.1],
        "samples": a.samples,
        "format": format.name(),
    });
    let text = match format {
        Format::Svg => svg::comparison_figure(&lap, &dsq, shift, &format!("config: {config}")),
        Format::Json => json_text(&json!({
            "config": config,
            "shift": shift,
            "laplacian": lap.iter().map(|z| c_pair(*z)).collect::<Vec<_>>(),
            "d_squared": dsq.iter().map(|z| c_pair(*z)).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = csv_header(&config);
            let _ = writeln!(s, "# shift: {shift}");
            s.push_str("s,re_laplacian,im_laplacian,re_d_squared,im_d_squared\n");
            for ((g, l), d) in grid.iter().zip(&lap).zip(&dsq) {
                let _ = writeln!(s, "{g},{},{},{},{}", l.re, l.im, d.re, d.im);
            }
            s
        }
    };
    emit(&a.output.out, &text)?;
    Ok(0)
}

fn ball(a: BallArgs) -> Result<u8> {
    let format = a.output.resolve(Format::Json, &[Format::Json, Format::Csv])?;
    let b = ball_harmonic_integral(a.k, a.p, a.refinement)?;
    let config = json!({
        "subcommand": "ball",
        "k": a.k,
        "p": a.p,
        "refinement": a.refinement,
        "format": format.name(),
    });
    let text = match format {
        Format::Json => {
            let mut v = b.to_json();
            v["config"] = config;
            json_text(&v)
        }
        _ => {
            let mut s = csv_header(&config);
            let class = if b.is_finite() { "finite" } else { "divergent" };
            let _ = writeln!(s, "# classification: {class}");
            let _ = writeln!(s, "# exponent: {}", b.exponent);
            let _ = writeln!(s, "# estimated_exponent: {}", b.estimated_exponent);
            s.push_str("level,value\n");
            for (i, v) in b.levels.iter().enumerate() {
                let _ = writeln!(s, "{i},{v}");
            }
            s
        }
    };
    emit(&a.output.out, &text)?;
    Ok(0)
}
