//! SVG drawing of a framework in an affine chart, with optional line
//! segments for framing lines through its points.

use std::fmt::Write as _;

use tensec_core::framework::Framework;
use tensec_core::numeric::to_f64;
use tensec_core::projective::{add3, AffineChart, ProjLine, ProjPoint};
use tensec_core::{Error, Result};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 48.0;

fn affine(chart: &AffineChart, p: &ProjPoint) -> Option<(f64, f64)> {
    let [x, y] = chart.affine_coords(p)?;
    Some((to_f64(&x), to_f64(&y)))
}

/// Unit direction of `l` in the chart, as seen from its point `p`.
fn direction(chart: &AffineChart, p: &ProjPoint, l: &ProjLine) -> Option<(f64, f64)> {
    let at_inf = l.meet(&chart.infinity)?;
    let base = chart.normalize(p)?;
    let q = ProjPoint::new(&add3(&base, &at_inf.coords())).ok()?;
    let (x0, y0) = affine(chart, p)?;
    let (x1, y1) = affine(chart, &q)?;
    let (dx, dy) = (x1 - x0, y1 - y0);
    let n = (dx * dx + dy * dy).sqrt();
    (n > 0.0).then(|| (dx / n, dy / n))
}

/// Renders `fw` as an SVG document. `framings` pairs vertex indices with
/// lines through them, drawn as short dashed segments.
pub fn render_svg(fw: &Framework, chart: &AffineChart, framings: &[(usize, ProjLine)]) -> Result<String> {
    fw.check_chart(chart)?;
    let g = fw.graph();
    let pts: Vec<(f64, f64)> = fw.points().iter().map(|p| affine(chart, p).expect("checked chart")).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let extent = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / extent;
    let map = |(x, y): (f64, f64)| {
        let cx = MARGIN + (x - x0) * scale + ((SIZE - 2.0 * MARGIN) - (x1 - x0) * scale) / 2.0;
        let cy = SIZE - MARGIN - (y - y0) * scale - ((SIZE - 2.0 * MARGIN) - (y1 - y0) * scale) / 2.0;
        (cx, cy)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<g class="edges" stroke="black" stroke-width="2">"#);
    for &(a, b) in g.edges() {
        let (ax, ay) = map(pts[a]);
        let (bx, by) = map(pts[b]);
        let _ = writeln!(
            s,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" data-edge="{}-{}"/>"#,
            g.id(a),
            g.id(b)
        );
    }
    let _ = writeln!(s, "</g>");
    if !framings.is_empty() {
        let _ = writeln!(s, r#"<g class="framings" stroke="steelblue" stroke-width="1.5" stroke-dasharray="6 4">"#);
        let half = 0.2 * (SIZE - 2.0 * MARGIN);
        for (v, l) in framings {
            let p = fw.point(*v);
            if !p.on(l) {
                return Err(Error::Precondition(format!("framing line {l} misses {}", g.id(*v))));
            }
            let Some((dx, dy)) = direction(chart, p, l) else { continue };
            let (cx, cy) = map(pts[*v]);
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                cx - half * dx,
                cy + half * dy,
                cx + half * dx,
                cy - half * dy
            );
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, r#"<g class="points" font-family="sans-serif" font-size="14">"#);
    for (v, &p) in pts.iter().enumerate() {
        let (cx, cy) = map(p);
        let _ = writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="5" fill="crimson"/>"#);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, cx + 8.0, cy - 8.0, escape(g.id(v)));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
