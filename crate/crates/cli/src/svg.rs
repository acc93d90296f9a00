//! Plain SVG 1.1 figures for solve runs: the curve as one path, every
//! solution as a polygon, and the target triangle as a dashed polyline
//! inset in the corner for visual comparison of the shapes.

use inscribed_core::{Curve, Triangle};
use num_complex::Complex64;
use std::fmt::Write;

const CURVE_SAMPLES: usize = 512;

pub fn render(curve: &Curve, solutions: &[[Complex64; 3]], target: &Triangle) -> String {
    let samples: Vec<Complex64> = (0..CURVE_SAMPLES)
        .map(|i| curve.point(i as f64 / CURVE_SAMPLES as f64))
        .collect();

    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for z in samples.iter().chain(solutions.iter().flatten()) {
        min_x = min_x.min(z.re);
        max_x = max_x.max(z.re);
        min_y = min_y.min(z.im);
        max_y = max_y.max(z.im);
    }
    let size = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let pad = 0.10 * size;
    min_x -= pad;
    max_x += pad;
    min_y -= pad;
    max_y += pad;
    let stroke = 0.006 * size;

    let fmt = |v: f64| format!("{v:.5}");
    let mut path = String::new();
    for (i, z) in samples.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(path, "{cmd} {} {} ", fmt(z.re), fmt(z.im));
    }
    path.push('Z');

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        fmt(min_x),
        fmt(-max_y),
        fmt(max_x - min_x),
        fmt(max_y - min_y)
    );
    // Math coordinates have y pointing up; flip the whole scene once.
    let _ = writeln!(
        out,
        r#"<g transform="scale(1,-1)" fill="none" stroke-linejoin="round" stroke-linecap="round">"#
    );
    let _ = writeln!(
        out,
        r##"<path d="{path}" stroke="#33557f" stroke-width="{}"/>"##,
        fmt(stroke)
    );
    for tri in solutions {
        let points: Vec<String> = tri.iter().map(|z| format!("{},{}", fmt(z.re), fmt(z.im))).collect();
        let _ = writeln!(
            out,
            r##"<polygon points="{}" stroke="#bb3333" stroke-width="{}" fill="#bb3333" fill-opacity="0.12"/>"##,
            points.join(" "),
            fmt(stroke)
        );
    }

    // Target inset: scaled into a small box in the top right corner.
    let box_side = 0.22 * size;
    let margin = 0.03 * size;
    let verts = target.vertices();
    let t_min_x = verts.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    let t_max_x = verts.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let t_min_y = verts.iter().map(|z| z.im).fold(f64::INFINITY, f64::min);
    let t_max_y = verts.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
    let t_size = (t_max_x - t_min_x).max(t_max_y - t_min_y).max(1e-9);
    let scale = box_side / t_size;
    let corner_x = max_x - margin - box_side;
    let corner_y = max_y - margin - box_side;
    let place = |z: &Complex64| {
        format!(
            "{},{}",
            fmt(corner_x + (z.re - t_min_x) * scale),
            fmt(corner_y + (z.im - t_min_y) * scale)
        )
    };
    let inset: Vec<String> = verts.iter().chain([&verts[0]]).map(place).collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" stroke="#777777" stroke-width="{}" stroke-dasharray="{} {}"/>"##,
        inset.join(" "),
        fmt(stroke),
        fmt(2.0 * stroke),
        fmt(2.0 * stroke)
    );
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
