use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use dirac_spectra::closed_spectra::{circle_spectrum, discretized_circle_abs_spectrum, SpinStructure, DEFAULT_CUTOFF};
use dirac_spectra::halfspace_weyl::{
    ball_harmonic_integral, dirac_residual, weyl_ratio, weyl_ratio_squared, WeylConfig, WeylRatio, DEFAULT_REFINEMENT,
};
use dirac_spectra::ode::OdeOptions;
use dirac_spectra::radial_modes::{
    build_system, decay_exponent, fit_power_exponential, fit_slope, h_func, integrate, integrate_hat,
    integrate_hat_radial, DecayFit, ModeSystem, T_EPSILON,
};
use dirac_spectra::spectral_region::{CaseTag, Exponent, SpectralRegion};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn exponents() -> [Exponent; 5] {
    [Exponent::Finite(1.0), Exponent::Finite(1.5), Exponent::Finite(2.0), Exponent::Finite(3.0), Exponent::Infinity]
}

fn random_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    loop {
        let z = cx(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius));
        if z.norm() <= radius {
            return z;
        }
    }
}

fn region_strip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for k in 1..=3 {
        for p in exponents() {
            let r = SpectralRegion::new(1.0, k, 0.0, p).map_err(|e| e.to_string())?;
            let t = f64::from(k) * p.distance_from_two();
            for _ in 0..1000 {
                let mu = random_disc(&mut rng, 10.0);
                let strip = mu.im.abs() <= t + 1e-9;
                ensure(r.contains(mu, 1e-9) == strip, || format!("k={k} p={p} mu={mu}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} samples agree with the strip"))
}

fn l2_rays() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for lambda0 in [0.0, 1.0, 2.0] {
        let r = SpectralRegion::new(1.0, 2, lambda0, Exponent::Finite(2.0)).map_err(|e| e.to_string())?;
        for i in 0..500 {
            let x = match i {
                0 => lambda0,
                1 => -lambda0,
                _ => rng.gen_range(-10.0..10.0),
            };
            let want = x.abs() >= lambda0;
            ensure(r.contains(cx(x, 0.0), 1e-9) == want, || format!("lambda0={lambda0} real mu={x}"))?;
        }
        for _ in 0..500 {
            let mut mu = random_disc(&mut rng, 10.0);
            if mu.im.abs() < 1e-3 {
                mu.im = 1e-3f64.copysign(mu.im);
            }
            ensure(!r.contains(mu, 1e-9), || format!("lambda0={lambda0} non-real mu={mu}"))?;
        }
    }
    Ok("3000 samples match the ray condition".into())
}

fn landmarks() -> Outcome {
    // c = 1, k = 2, p = 1 gives t = 1.
    let make = |l| SpectralRegion::new(1.0, 2, l, Exponent::Finite(1.0)).unwrap();
    let r = make(2.0);
    let case = r.classify();
    let xr = 3f64.sqrt();
    ensure(case.tag == CaseTag::R && (case.landmark - xr).abs() <= 1e-12, || format!("x_R {case:?}"))?;
    ensure((r.boundary_branch(0.0) - cx(xr, 0.0)).norm() <= 1e-12, || "x_R boundary vertex".into())?;

    let m = make(0.5);
    let case = m.classify();
    let xm = 0.75f64.sqrt();
    ensure(case.tag == CaseTag::M && (case.landmark - xm).abs() <= 1e-12, || format!("x_M {case:?}"))?;
    ensure((m.boundary_branch(0.0) - cx(0.0, xm)).norm() <= 1e-12, || "x_M gap endpoint".into())?;

    let l = make(0.0);
    let case = l.classify();
    ensure(case.tag == CaseTag::L && (case.landmark - 1.0).abs() <= 1e-12, || format!("x_L {case:?}"))?;
    Ok(format!("x_R = {xr:.15}, x_M = {xm:.15}, x_L = 1"))
}

fn mode_matrices() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let lambda = cx(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let mu = cx(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let s = build_system(lambda, mu, 1.0, 1.0, 2).map_err(|e| e.to_string())?;
        let anti = s.a * s.b + s.b * s.a;
        ensure(anti.iter().all(|z| *z == Complex64::new(0.0, 0.0)), || format!("AB+BA != 0 at {lambda}, {mu}"))?;
        let kappa = (lambda * lambda - mu * mu).sqrt();
        let eig = s.a.eigenvalues().ok_or("A not diagonalizable")?;
        let (mut plus, mut minus) = (0, 0);
        for e in eig.iter() {
            let (dp, dm) = ((e - kappa).norm(), (e + kappa).norm());
            worst = worst.max(dp.min(dm));
            if dp <= 1e-10 {
                plus += 1;
            } else if dm <= 1e-10 {
                minus += 1;
            }
        }
        ensure((plus, minus) == (2, 2), || format!("eigenvalues {eig:?} vs ±{kappa}"))?;
    }
    Ok(format!("50 pairs, worst eigenvalue error {worst:.1e}"))
}

fn radial_decay() -> Outcome {
    let o = OdeOptions::default();
    let s = build_system(cx(1.0, 0.0), cx(0.0, 0.0), 1.0, 1.0, 2).map_err(|e| e.to_string())?;
    let (down, up) = s.predicted_rates();
    ensure(down == -2.0, || format!("predicted rate {down}"))?;
    let v = s.decaying_eigenvector(0).map_err(|e| e.to_string())?;
    let h = integrate_hat(&s, 0.5, v, 801, T_EPSILON, &o).map_err(|e| e.to_string())?;
    let slope = fit_slope(&h.trajectory, (8.0, 16.0)).map_err(|e| e.to_string())?;
    ensure((slope - down).abs() <= 0.01 * down.abs(), || format!("decaying slope {slope}"))?;

    let mixed = s.growing_eigenvector(0).unwrap() + v;
    let g = integrate(&s, 1.0, 16.0, mixed, 1500, &o).map_err(|e| e.to_string())?;
    let gs = fit_slope(&g, (8.0, 16.0)).map_err(|e| e.to_string())?;
    ensure((gs - up).abs() <= 0.02, || format!("growing slope {gs}"))?;

    let s0 = build_system(cx(1.0, 0.0), cx(0.0, 0.0), 1.0, 0.0, 2).map_err(|e| e.to_string())?;
    let h0 = integrate_hat_radial(&s0, 1.0, 300.0, s0.decaying_eigenvector(0).unwrap(), 4001, &o)
        .map_err(|e| e.to_string())?;
    let (beta, gamma) = fit_power_exponential(&h0.trajectory, (100.0, 200.0)).map_err(|e| e.to_string())?;
    ensure(matches!(decay_exponent(&h0.trajectory, (100.0, 200.0)), Ok(DecayFit::PowerExponential { .. })), || {
        "c = 0 fit kind".into()
    })?;
    ensure((beta + 1.0).abs() <= 0.02 && (gamma + 1.0).abs() <= 0.02, || format!("c=0 fit ({beta}, {gamma})"))?;
    Ok(format!("slopes {slope:.5} / {gs:.5}, c=0 fit ({beta:.4}, {gamma:.4})"))
}

fn h_derivative() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        for t in [0.1, 0.3, 0.5, 0.9] {
            let d = 1e-6 * t;
            let fd = (h_func(t + d, k).unwrap().0 - h_func(t - d, k).unwrap().0) / (2.0 * d);
            let an = h_func(t, k).map_err(|e| e.to_string())?.1;
            let rel = (fd - an).abs() / an.abs();
            worst = worst.max(rel);
            ensure(rel <= 1e-6, || format!("k={k} t={t} rel={rel}"))?;
        }
    }
    Ok(format!("worst relative error {worst:.1e}"))
}

fn sandwich() -> Outcome {
    let o = OdeOptions::default();
    let sets = [
        (cx(1.0, 0.0), cx(0.0, 0.0), 1.0, 2),
        (cx(0.8, 0.0), cx(0.3, 0.0), 1.0, 1),
        (cx(1.0, 0.0), cx(0.0, 0.5), 2.0, 3),
        (cx(1.0, 0.5), cx(0.2, 0.0), 2.0, 2),
        (cx(2.0, 0.0), cx(1.0, 0.0), 2.0, 1),
    ];
    let mut worst: f64 = 0.0;
    for (lambda, mu, c, k) in sets {
        let s = ModeSystem::spherical(lambda, mu, c, k).map_err(|e| e.to_string())?;
        for which in 0..2 {
            let v = s.decaying_eigenvector(which).map_err(|e| e.to_string())?;
            let h = integrate_hat(&s, 0.45, v, 400, T_EPSILON, &o).map_err(|e| e.to_string())?;
            let p0 = h.phi_hat_start.norm();
            for (t, ph) in h.variable.iter().zip(&h.phi_hat) {
                if *t > 0.4 {
                    continue;
                }
                let e = 3.0 * s.rho * t.powf(2.0 * s.kappa.re / c);
                let q = ph.norm() / p0;
                if e > 0.0 {
                    worst = worst.max(q.ln().abs() / e);
                }
                ensure(q >= (-e).exp() && q <= e.exp(), || format!("lambda={lambda} mu={mu} c={c} k={k} t={t} q={q}"))?;
            }
        }
    }
    Ok(format!("5 sets, worst |log ratio| / exponent = {worst:.3}"))
}

struct Sweep {
    rows: Vec<(WeylConfig, WeylRatio, WeylRatio)>,
}

fn weyl_sweep() -> Result<Sweep, String> {
    let mut rows = Vec::new();
    for p in [Exponent::Finite(1.0), Exponent::Infinity] {
        for s in [0.0, 1.0] {
            for n in [2, 4, 8, 16, 32] {
                let c = WeylConfig::new(3, p, s, 1, n).map_err(|e| e.to_string())?;
                let d = weyl_ratio(&c).map_err(|e| format!("{p} s={s} n={n}: {e}"))?;
                let d2 = weyl_ratio_squared(&c).map_err(|e| format!("{p} s={s} n={n}: {e}"))?;
                rows.push((c, d, d2));
            }
        }
    }
    Ok(Sweep { rows })
}

fn check_ratios(sweep: &Sweep, pick: impl Fn(&(WeylConfig, WeylRatio, WeylRatio)) -> WeylRatio) -> Outcome {
    let mut summary = Vec::new();
    for chunk in sweep.rows.chunks(5) {
        let c = chunk[0].0;
        let ratios: Vec<WeylRatio> = chunk.iter().map(&pick).collect();
        for w in ratios.windows(2) {
            ensure(w[1].ratio < w[0].ratio, || format!("p={} s={}: not decreasing {:?}", c.p, c.s, ratios.iter().map(|r| r.ratio).collect::<Vec<_>>()))?;
        }
        ensure(ratios[4].ratio < 0.15 * ratios[0].ratio, || format!("p={} s={}: ratio(32)/ratio(2) too large", c.p, c.s))?;
        for (row, r) in chunk.iter().zip(&ratios) {
            ensure(r.ratio <= r.analytic_bound, || format!("p={} s={} n={}: {} > bound {}", c.p, c.s, row.0.n, r.ratio, r.analytic_bound))?;
        }
        summary.push(format!("p={} s={}: {:.3e} -> {:.3e}", c.p, c.s, ratios[0].ratio, ratios[4].ratio));
    }
    Ok(summary.join("; "))
}

fn weyl_first_order(sweep: &Sweep) -> Outcome {
    check_ratios(sweep, |r| r.1)
}

fn weyl_second_order(sweep: &Sweep) -> Outcome {
    for (c, _, _) in &sweep.rows {
        let r = dirac_residual(c).map_err(|e| e.to_string())?;
        let (a, mu) = (c.alpha, c.mu());
        let kf = f64::from(c.k);
        let coeff = a * (a - 1.0) - (kf - 1.0) * a + kf * kf / 4.0 + mu * mu;
        ensure(coeff.norm() <= 1e-12 && r.squared_eigen_coefficient.norm() <= 1e-12, || {
            format!("c_n coefficient {coeff} / {} at p={} s={}", r.squared_eigen_coefficient, c.p, c.s)
        })?;
    }
    check_ratios(sweep, |r| r.2).map(|s| format!("c_n coefficient vanishes; {s}"))
}

fn ball_threshold() -> Outcome {
    for k in [2, 3] {
        for p in [1.0, 1.5, 2.0, 2.2, 3.0, 4.0] {
            let b = ball_harmonic_integral(k, p, DEFAULT_REFINEMENT).map_err(|e| format!("k={k} p={p}: {e}"))?;
            ensure(b.is_finite() == (p > 2.0), || format!("k={k} p={p}: {:?}", b.outcome))?;
        }
    }
    let v = ball_harmonic_integral(2, 3.0, DEFAULT_REFINEMENT).map_err(|e| e.to_string())?.value().unwrap_or(f64::NAN);
    ensure((v - 1.0 / 3.0).abs() <= 1e-9, || format!("k=2 p=3 value {v}"))?;
    Ok(format!("12 classifications match p > 2; k=2 p=3 value {v:.15}"))
}

fn circle_oracle() -> Outcome {
    let mut notes = Vec::new();
    for structure in [SpinStructure::Trivial, SpinStructure::Nontrivial] {
        let exact = circle_spectrum(2.0 * PI, structure, DEFAULT_CUTOFF).map_err(|e| e.to_string())?.smallest_abs(6);
        let err = |points| -> Result<f64, String> {
            let fd = discretized_circle_abs_spectrum(2.0 * PI, structure, points).map_err(|e| e.to_string())?;
            Ok(exact.iter().zip(&fd).map(|(e, f)| (e - f).abs()).fold(0.0, f64::max))
        };
        let (e1, e2) = (err(512)?, err(1024)?);
        ensure(e1 < 1e-3, || format!("{structure:?}: error {e1}"))?;
        let factor = e1 / e2;
        ensure((3.0..=5.0).contains(&factor), || format!("{structure:?}: convergence factor {factor}"))?;
        notes.push(format!("{structure:?}: error {e1:.2e}, factor {factor:.3}"));
    }
    Ok(notes.join("; "))
}

fn symmetry_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut inside = 0;
    for _ in 0..10 {
        let c = rng.gen_range(0.0..2.0);
        let k = rng.gen_range(1..=5);
        let lambda0 = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..3.0) };
        let p = if rng.gen_bool(0.1) { Exponent::Infinity } else { Exponent::Finite(rng.gen_range(1.0..6.0)) };
        let r = SpectralRegion::new(c, k, lambda0, p).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let mu = random_disc(&mut rng, 10.0);
            let rep = r.symmetry_transforms(mu, 1e-9);
            ensure(rep.consistent(), || format!("{r:?} {rep:?}"))?;
            inside += usize::from(rep.contains);
        }
    }
    Ok(format!("10 regions x 1000 samples consistent ({inside} inside)"))
}

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_dirac-spectra"))
}

fn run_cli(args: &[&str], out: &PathBuf) -> Result<Vec<u8>, String> {
    let status = Command::new(binary())
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.code().is_some_and(|c| c == 0 || c == 1), || format!("{args:?} exited with {status}"))?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn cli_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("dirac-spectra-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let cases: [&[&str]; 9] = [
        &["region", "--c", "1", "--k", "2", "--lambda0", "2", "--p", "1", "--format", "json"],
        &["region", "--c", "1", "--k", "2", "--lambda0", "0", "--lambda0", "0.5", "--lambda0", "2", "--p", "1", "--format", "svg"],
        &["region", "--k", "2", "--lambda0", "1", "--p", "2", "--format", "csv"],
        &["radial", "--c", "1", "--k", "2", "--rho", "1", "--lambda", "1,0", "--mu", "0,0"],
        &["weyl", "--k", "2", "--p", "inf", "--n-list", "2,4,8", "--squared"],
        &["membership", "--c", "1", "--k", "3", "--lambda0", "0", "--p", "1", "--mu", "0.3,1.2"],
        &["compare-laplacian", "--k", "2", "--p", "3", "--format", "svg"],
        &["compare-laplacian", "--k", "2", "--p", "3", "--format", "csv"],
        &["ball", "--k", "3", "--p", "2.2"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let a = run_cli(args, &dir.join(format!("{i}-a")))?;
        let b = run_cli(args, &dir.join(format!("{i}-b")))?;
        ensure(!a.is_empty() && a == b, || format!("{args:?}: outputs differ"))?;
    }
    let svg = String::from_utf8(std::fs::read(dir.join("1-a")).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let panels: Vec<&str> = svg.split("<g class=\"panel\"").skip(1).collect();
    ensure(panels.len() == 3, || format!("{} panel groups", panels.len()))?;
    ensure(panels.iter().all(|p| p.contains("class=\"boundary")), || "panel without boundary path".into())?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} subcommand runs byte-identical; three panel groups with boundary paths", cases.len()))
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "region membership matches the strip at lambda0 = 0", region_strip()));
    results.push((2, "p = 2 membership equals the ray condition", l2_rays()));
    results.push((3, "region landmarks x_R, x_M, x_L", landmarks()));
    results.push((4, "mode matrix identities", mode_matrices()));
    results.push((5, "radial decay rates", radial_decay()));
    results.push((6, "h-function derivative", h_derivative()));
    results.push((7, "sandwich bound along integrate_hat", sandwich()));
    match weyl_sweep() {
        Ok(sweep) => {
            results.push((8, "Weyl ratios for D", weyl_first_order(&sweep)));
            results.push((9, "Weyl ratios for D squared", weyl_second_order(&sweep)));
        }
        Err(e) => {
            results.push((8, "Weyl ratios for D", Err(e.clone())));
            results.push((9, "Weyl ratios for D squared", Err(e)));
        }
    }
    results.push((10, "ball-model integral threshold", ball_threshold()));
    results.push((11, "circle spectrum against finite differences", circle_oracle()));
    results.push((12, "symmetry suite", symmetry_suite()));
    results.push((13, "CLI determinism and three-panel SVG", cli_determinism()));

    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
