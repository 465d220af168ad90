//! Hand-written SVG 1.1 output: one `<g class="panel">` per panel.

use std::fmt::Write;

use dirac_spectra::spectral_region::{CaseTag, SpectralRegion};
use num_complex::Complex64;

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 300.0;
const MARGIN: f64 = 36.0;
const CURVE_SAMPLES: usize = 401;

pub fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Linear map from a complex window to panel pixels.
#[derive(Clone, Copy)]
struct Frame {
    x_half: f64,
    y_half: f64,
}

impl Frame {
    fn px(&self, z: Complex64) -> (f64, f64) {
        let w = PANEL_W - 2.0 * MARGIN;
        let h = PANEL_H - 2.0 * MARGIN;
        let x = MARGIN + (z.re + self.x_half) / (2.0 * self.x_half) * w;
        let y = MARGIN + (self.y_half - z.im) / (2.0 * self.y_half) * h;
        (x, y)
    }

    fn path(&self, pts: &[Complex64], close: bool) -> String {
        let mut d = String::new();
        for (i, z) in pts.iter().enumerate() {
            let (x, y) = self.px(*z);
            let _ = write!(d, "{}{x:.3},{y:.3}", if i == 0 { "M" } else { " L" });
        }
        if close {
            d.push_str(" Z");
        }
        d
    }
}

fn document(width: f64, height: f64, desc: &str, body: &str) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(s, "<desc>{}</desc>", escape(desc));
    s.push_str(body);
    s.push_str("</svg>\n");
    s
}

fn axes(out: &mut String, frame: &Frame, re_label: &str, im_label: &str) {
    let (x0, y0) = frame.px(Complex64::new(-frame.x_half, 0.0));
    let (x1, _) = frame.px(Complex64::new(frame.x_half, 0.0));
    let (xc, ytop) = frame.px(Complex64::new(0.0, frame.y_half));
    let (_, ybot) = frame.px(Complex64::new(0.0, -frame.y_half));
    let _ = writeln!(
        out,
        "<path class=\"axis\" d=\"M{x0:.3},{y0:.3} L{x1:.3},{y0:.3} M{xc:.3},{ybot:.3} L{xc:.3},{ytop:.3}\" stroke=\"#000\" stroke-width=\"0.8\" fill=\"none\"/>"
    );
    let _ = writeln!(out, "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\">{}</text>", x1 - 28.0, y0 - 4.0, escape(re_label));
    let _ = writeln!(out, "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\">{}</text>", xc + 4.0, ytop + 10.0, escape(im_label));
}

/// Upper boundary arcs: the root of `λ₀² + (s + it)²` with `Im ≥ 0`. In
/// case R the region splits and the left arc mirrors the right one.
fn upper_arcs(region: &SpectralRegion, s_half: f64) -> Vec<Vec<Complex64>> {
    let split = region.classify().tag == CaseTag::R;
    let lo = if split { 0.0 } else { -s_half };
    let arc: Vec<Complex64> = (0..CURVE_SAMPLES)
        .map(|i| {
            let s = lo + (s_half - lo) * i as f64 / (CURVE_SAMPLES - 1) as f64;
            let mu = region.boundary_branch(s);
            if mu.im < 0.0 { -mu } else { mu }
        })
        .collect();
    if split {
        let left = arc.iter().rev().map(|z| -z.conj()).collect();
        vec![left, arc]
    } else {
        vec![arc]
    }
}

fn region_panel(out: &mut String, index: usize, region: &SpectralRegion, frame: &Frame, offset_x: f64) {
    let case = region.classify();
    let t = region.threshold();
    let _ = writeln!(
        out,
        "<g class=\"panel\" id=\"panel-{index}\" transform=\"translate({offset_x},0)\">"
    );
    let _ = writeln!(
        out,
        "<text x=\"{MARGIN}\" y=\"20\" font-size=\"12\">case {} c={} k={} λ₀={} p={}</text>",
        case.tag, region.c, region.k, region.lambda0, region.p
    );
    let _ = writeln!(
        out,
        "<clipPath id=\"clip-{index}\"><rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{}\" height=\"{}\"/></clipPath>",
        PANEL_W - 2.0 * MARGIN,
        PANEL_H - 2.0 * MARGIN
    );
    let _ = writeln!(out, "<g clip-path=\"url(#clip-{index})\">");
    if t == 0.0 {
        // Degenerate rays (−∞, −λ₀] ∪ [λ₀, ∞).
        let l = region.lambda0;
        let x = frame.x_half * 1.05;
        let left = frame.path(&[Complex64::new(-x, 0.0), Complex64::new(-l, 0.0)], false);
        let right = frame.path(&[Complex64::new(l, 0.0), Complex64::new(x, 0.0)], false);
        let _ = writeln!(out, "<path class=\"boundary ray\" d=\"{left} {right}\" stroke=\"#1f4e9c\" stroke-width=\"2.5\" fill=\"none\"/>");
    } else {
        let arcs = upper_arcs(region, frame.x_half * 1.1 + 1.0);
        for arc in &arcs {
            let mut poly = arc.clone();
            poly.extend(arc.iter().rev().map(|z| z.conj()));
            let _ = writeln!(
                out,
                "<path class=\"region\" d=\"{}\" fill=\"#1f4e9c\" fill-opacity=\"0.25\" stroke=\"none\"/>",
                frame.path(&poly, true)
            );
        }
        for arc in &arcs {
            let lower: Vec<Complex64> = arc.iter().map(|z| z.conj()).collect();
            let _ = writeln!(
                out,
                "<path class=\"boundary\" d=\"{} {}\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" fill=\"none\"/>",
                frame.path(arc, false),
                frame.path(&lower, false)
            );
        }
    }
    out.push_str("</g>\n");

    let (name, marks) = match case.tag {
        CaseTag::L => ("x_L", vec![Complex64::new(0.0, case.landmark), Complex64::new(0.0, -case.landmark)]),
        CaseTag::M => ("x_M", vec![Complex64::new(0.0, case.landmark), Complex64::new(0.0, -case.landmark)]),
        CaseTag::R => ("x_R", vec![Complex64::new(case.landmark, 0.0), Complex64::new(-case.landmark, 0.0)]),
    };
    for (j, z) in marks.iter().enumerate() {
        let (x, y) = frame.px(*z);
        let _ = writeln!(out, "<circle class=\"landmark\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"2.5\" fill=\"#c0392b\"/>");
        if j == 0 {
            let _ = writeln!(
                out,
                "<text class=\"landmark-label\" x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\" fill=\"#c0392b\">{name} = {:.7}</text>",
                x + 4.0,
                y - 4.0,
                case.landmark
            );
        }
    }
    axes(out, frame, "Re μ", "Im μ");
    out.push_str("</g>\n");
}

/// Side-by-side region panels sharing one window.
pub fn region_figure(regions: &[SpectralRegion], desc: &str) -> String {
    let mut x_half: f64 = 1.0;
    let mut y_half: f64 = 1.0;
    for r in regions {
        let t = r.threshold();
        x_half = x_half.max(1.6 * (r.lambda0 + t) + 1.0);
        y_half = y_half.max(2.0 * t).max(1.5);
    }
    let frame = Frame { x_half, y_half };
    let mut body = String::new();
    for (i, r) in regions.iter().enumerate() {
        region_panel(&mut body, i, r, &frame, PANEL_W * i as f64);
    }
    document(PANEL_W * regions.len() as f64, PANEL_H, desc, &body)
}

/// One panel with the Laplacian parabola, the `D²` parabola and the shift.
pub fn comparison_figure(laplacian: &[Complex64], d_squared: &[Complex64], shift: f64, desc: &str) -> String {
    let all = laplacian.iter().chain(d_squared);
    let x_half = all.clone().map(|z| z.re.abs()).fold(1.0, f64::max) * 1.05;
    let y_half = all.map(|z| z.im.abs()).fold(1.0, f64::max) * 1.05;
    let frame = Frame { x_half, y_half };
    let mut body = String::new();
    body.push_str("<g class=\"panel\" id=\"panel-0\">\n");
    let _ = writeln!(
        body,
        "<path class=\"boundary laplacian\" d=\"{}\" stroke=\"#c0392b\" stroke-width=\"1.5\" fill=\"none\"/>",
        frame.path(laplacian, false)
    );
    let _ = writeln!(
        body,
        "<path class=\"boundary d-squared\" d=\"{}\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" fill=\"none\"/>",
        frame.path(d_squared, false)
    );
    let mid = d_squared.len() / 2;
    if let (Some(a), Some(b)) = (d_squared.get(mid), laplacian.get(mid)) {
        let (xa, ya) = frame.px(*a);
        let (xb, yb) = frame.px(*b);
        let _ = writeln!(
            body,
            "<path class=\"shift\" d=\"M{xa:.3},{ya:.3} L{xb:.3},{yb:.3}\" stroke=\"#555\" stroke-dasharray=\"4,3\" fill=\"none\"/>"
        );
        let _ = writeln!(
            body,
            "<text class=\"shift-label\" x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\">shift k²/4 = {shift:.7}</text>",
            xa.min(xb),
            ya.min(yb) - 8.0
        );
    }
    axes(&mut body, &frame, "Re ν", "Im ν");
    body.push_str("</g>\n");
    document(PANEL_W, PANEL_H, desc, &body)
}
