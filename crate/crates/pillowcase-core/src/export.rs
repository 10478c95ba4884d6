//! CSV and SVG serializers for pillowcase curves and point sets.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::{PillowcasePoint, PillowcasePolyline, P, Q, TWO_PI};

/// CSV with one `curve,index,alpha,beta` row per vertex.
pub fn polylines_to_csv(curves: &[PillowcasePolyline]) -> String {
    let mut out = String::from("curve,index,alpha,beta\n");
    for (c, curve) in curves.iter().enumerate() {
        for (i, v) in curve.vertices.iter().enumerate() {
            let _ = writeln!(out, "{c},{i},{:.12},{:.12}", v.alpha(), v.beta());
        }
    }
    out
}

/// CSV with one `alpha,beta` row per point.
pub fn points_to_csv(points: &[PillowcasePoint]) -> String {
    let mut out = String::from("alpha,beta\n");
    for p in points {
        let _ = writeln!(out, "{:.12},{:.12}", p.alpha(), p.beta());
    }
    out
}

/// A drawing layer: curves and points sharing one colour.
#[derive(Debug, Clone, Default)]
pub struct SvgLayer {
    pub label: String,
    pub color: String,
    pub curves: Vec<PillowcasePolyline>,
    pub points: Vec<PillowcasePoint>,
}

impl SvgLayer {
    pub fn new(label: impl Into<String>, color: impl Into<String>) -> Self {
        SvgLayer { label: label.into(), color: color.into(), ..Default::default() }
    }
}

const SCALE: f64 = 120.0;
const MARGIN: f64 = 40.0;

fn to_px(a: f64, b: f64) -> (f64, f64) {
    (MARGIN + a * SCALE, MARGIN + (TWO_PI - b) * SCALE)
}

// Splits a curve into drawable runs inside the fundamental rectangle.
fn runs(curve: &PillowcasePolyline) -> Vec<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    for seg in curve.segments() {
        let steps = ((seg.length() / 0.02).ceil() as usize).max(1);
        for s in 0..=steps {
            let (x, y) = seg.at(s as f64 / steps as f64);
            let p = PillowcasePoint::new(x, y);
            let q = (p.alpha(), p.beta());
            if let Some(last) = cur.last() {
                if (last.0 - q.0).hypot(last.1 - q.1) > 0.2 {
                    out.push(std::mem::take(&mut cur));
                }
            }
            cur.push(q);
        }
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

/// Renders layers on the rectangle `[0, π] × [0, 2π]`, with fold glyphs on
/// the vertical edges and the marked points labelled.
pub fn render_svg(layers: &[SvgLayer]) -> String {
    let w = 2.0 * MARGIN + PI * SCALE + 160.0;
    let h = 2.0 * MARGIN + TWO_PI * SCALE;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#);
    let (x0, y0) = to_px(0.0, TWO_PI);
    let _ = writeln!(
        s,
        r#"<rect x="{x0:.1}" y="{y0:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        PI * SCALE,
        TWO_PI * SCALE
    );
    // Fold glyphs: the edge halves (0,β) and (0,2π−β) are identified.
    for a in [0.0, PI] {
        for (b, dir) in [(PI / 2.0, 1.0), (1.5 * PI, -1.0)] {
            let (x, y) = to_px(a, b);
            let d = 8.0 * dir;
            let _ = writeln!(
                s,
                r#"<path d="M {:.1} {:.1} L {x:.1} {y:.1} L {:.1} {:.1}" fill="none" stroke="black"/>"#,
                x - 6.0,
                y + d,
                x + 6.0,
                y + d
            );
        }
    }
    let (lx, ly) = to_px(0.0, PI);
    let (rx, _) = to_px(PI, PI);
    let _ = writeln!(s, r##"<line x1="{lx:.1}" y1="{ly:.1}" x2="{rx:.1}" y2="{ly:.1}" stroke="#bbb" stroke-dasharray="4 4"/>"##);
    for (name, pt, dx) in [("P", P, -18.0), ("Q", Q, 8.0)] {
        let (x, y) = to_px(pt.alpha(), pt.beta());
        let _ = writeln!(s, r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="black"/>"#);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="14">{name}</text>"#, x + dx, y + 5.0);
    }
    for (k, layer) in layers.iter().enumerate() {
        let _ = writeln!(s, r#"<g stroke="{}" fill="{}">"#, layer.color, layer.color);
        for curve in &layer.curves {
            for run in runs(curve) {
                let mut d = String::new();
                for (i, (a, b)) in run.iter().enumerate() {
                    let (x, y) = to_px(*a, *b);
                    let _ = write!(d, "{}{x:.2} {y:.2} ", if i == 0 { "M " } else { "L " });
                }
                let _ = writeln!(s, r#"<path d="{}" fill="none" stroke-width="1.5"/>"#, d.trim_end());
            }
        }
        for p in &layer.points {
            let (x, y) = to_px(p.alpha(), p.beta());
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.8" stroke="none"/>"#);
        }
        let _ = writeln!(s, "</g>");
        let ty = MARGIN + 20.0 * (k as f64 + 1.0);
        let tx = 2.0 * MARGIN + PI * SCALE;
        let _ = writeln!(
            s,
            r#"<rect x="{tx:.1}" y="{:.1}" width="12" height="12" fill="{}"/><text x="{:.1}" y="{ty:.1}" font-size="13">{}</text>"#,
            ty - 11.0,
            layer.color,
            tx + 18.0,
            escape(&layer.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
