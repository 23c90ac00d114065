//! Static SVG plots of planar level curves with an optional `L`, `L''`
//! profile inset.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::measures::{CircleLengthProfile, LevelCurve};

const SIZE: f64 = 640.0;
const PAD: f64 = 0.05;
const PALETTE: [&str; 6] = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#2e4053"];

fn bounds(curves: &[LevelCurve]) -> Result<(f64, f64, f64, f64)> {
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for n in curves.iter().flat_map(|c| &c.nodes) {
        b = (b.0.min(n.x1), b.1.min(n.x2), b.2.max(n.x1), b.3.max(n.x2));
    }
    if !(b.0.is_finite() && b.1.is_finite() && b.2.is_finite() && b.3.is_finite()) {
        return Err(Error::Domain("curves have no finite nodes".into()));
    }
    Ok(b)
}

/// The SVG document as a string.
pub fn svg_string(curves: &[LevelCurve], profile: Option<&CircleLengthProfile>) -> Result<String> {
    if curves.is_empty() || curves.iter().all(|c| c.nodes.is_empty()) {
        return Err(Error::Domain("nothing to plot".into()));
    }
    let (x0, y0, x1, y1) = bounds(curves)?;
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let half = 0.5 * span * (1.0 + 2.0 * PAD);
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    let scale = SIZE / (2.0 * half);
    let px = |x: f64| (x - cx + half) * scale;
    let py = |y: f64| (cy + half - y) * scale;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    for (i, c) in curves.iter().enumerate() {
        if c.nodes.is_empty() {
            continue;
        }
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        for (j, n) in c.nodes.iter().enumerate() {
            let _ = write!(d, "{}{:.3},{:.3} ", if j == 0 { "M" } else { "L" }, px(n.x1), py(n.x2));
        }
        d.push('Z');
        let _ = writeln!(
            s,
            r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="1.2"><title>h = {:.6}, length = {:.6}</title></path>"#,
            c.h, c.length
        );
        for x in &c.crossings {
            let _ = writeln!(
                s,
                r##"<circle cx="{:.3}" cy="{:.3}" r="4" fill="none" stroke="#e74c3c" stroke-width="1.5"/>"##,
                px(x.x1),
                py(x.x2)
            );
        }
    }
    if let Some(p) = profile.filter(|p| p.samples.len() >= 2) {
        inset(&mut s, p);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn inset(s: &mut String, p: &CircleLengthProfile) {
    let (w, h, ox, oy) = (220.0, 140.0, SIZE - 230.0, 10.0);
    let (t0, t1) = (p.samples[0].t, p.samples[p.samples.len() - 1].t);
    let vmax = p
        .samples
        .iter()
        .map(|q| q.l.max(q.l2))
        .fold(f64::NEG_INFINITY, f64::max);
    let vmin = p
        .samples
        .iter()
        .map(|q| q.l.min(q.l2))
        .fold(f64::INFINITY, f64::min)
        .min(0.0);
    let range = (vmax - vmin).max(f64::MIN_POSITIVE);
    let x = |t: f64| ox + 10.0 + (t - t0) / (t1 - t0) * (w - 20.0);
    let y = |v: f64| oy + h - 10.0 - (v - vmin) / range * (h - 30.0);
    let _ = writeln!(
        s,
        r##"<g><rect x="{ox}" y="{oy}" width="{w}" height="{h}" fill="white" stroke="#888"/>"##
    );
    for (pick, color, label, ly) in [(0usize, "#1f4e79", "L", oy + 14.0), (1, "#b03a2e", "L''", oy + 28.0)] {
        let pts: Vec<String> = p
            .samples
            .iter()
            .map(|q| format!("{:.2},{:.2}", x(q.t), y(if pick == 0 { q.l } else { q.l2 })))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{ly:.1}" font-family="sans-serif" font-size="11" fill="{color}">{label}</text>"#,
            ox + 8.0
        );
    }
    let _ = writeln!(
        s,
        r##"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="10" fill="#444">t = ln r</text></g>"##,
        ox + w - 52.0,
        oy + h - 2.0
    );
}

/// Writes [`svg_string`] to `path` atomically.
pub fn render_svg(curves: &[LevelCurve], profile: Option<&CircleLengthProfile>, path: &Path) -> Result<()> {
    let doc = svg_string(curves, profile)?;
    crate::write_atomic(path, doc.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{Crossing, LevelNode};

    fn circle(n: usize) -> LevelCurve {
        let nodes = (0..n)
            .map(|j| {
                let t = std::f64::consts::TAU * j as f64 / n as f64;
                LevelNode {
                    theta: t,
                    r: 1.0,
                    x1: t.cos(),
                    x2: t.sin(),
                    x3: 0.0,
                }
            })
            .collect();
        LevelCurve {
            h: 0.0,
            nodes,
            length: std::f64::consts::TAU,
            self_intersections: 0,
            multiplicity: 1,
            crossings: vec![],
            rotation_index: 1,
        }
    }

    #[test]
    fn circle_fills_the_padded_box() {
        let s = svg_string(&[circle(64)], None).unwrap();
        assert!(s.starts_with("<svg"));
        // x = 1 maps to SIZE·(1 + 1.1)/2.2 and x = −1 to SIZE·0.1/2.2
        assert!(s.contains(&format!("M{:.3},", SIZE * 2.1 / 2.2)));
        assert!(s.contains(&format!("L{:.3},", SIZE * 0.1 / 2.2)));
        assert!(!s.contains("<circle"));
    }

    #[test]
    fn crossings_get_markers_and_output_is_deterministic() {
        let mut c = circle(16);
        c.crossings.push(Crossing { x1: 0.0, x2: 0.0 });
        let a = svg_string(std::slice::from_ref(&c), None).unwrap();
        let b = svg_string(std::slice::from_ref(&c), None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<circle").count(), 1);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(svg_string(&[], None).is_err());
    }

    #[test]
    fn unwritable_path_is_an_io_error() {
        let e = render_svg(&[circle(8)], None, Path::new("/nonexistent-dir/x.svg")).unwrap_err();
        assert!(matches!(e, Error::Io { .. }));
    }
}
