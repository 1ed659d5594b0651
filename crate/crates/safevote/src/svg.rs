// SPDX-License-Identifier: Apache-2.0

//! SVG rendering of simplex figures.
//!
//! Vertex `A` sits bottom left, `B` bottom right and `C` at the top. A point
//! with barycentric coordinates `(x1, x2, x3)` is drawn at
//! `x1·A + x2·B + x3·C`. Coordinates are printed with two decimals, so the
//! same spec always renders to the same bytes.

use std::fmt::Write as _;

use safevote_core::geometry::{realizable_region, region_boundaries, BarycentricPoint, FigureSpec};
use safevote_core::Result;

const MARGIN: f64 = 40.0;

struct Canvas {
    a: (f64, f64),
    b: (f64, f64),
    c: (f64, f64),
}

impl Canvas {
    fn new(width: u32, height: u32) -> Self {
        let (w, h) = (f64::from(width), f64::from(height));
        Canvas { a: (MARGIN, h - MARGIN), b: (w - MARGIN, h - MARGIN), c: (w / 2.0, MARGIN) }
    }

    fn project(&self, p: &BarycentricPoint) -> (f64, f64) {
        let [x1, x2, x3] = p.coords().map(|r| *r.numer() as f64 / *r.denom() as f64);
        (x1 * self.a.0 + x2 * self.b.0 + x3 * self.c.0, x1 * self.a.1 + x2 * self.b.1 + x3 * self.c.1)
    }

    fn points(&self, ps: &[BarycentricPoint]) -> String {
        ps.iter().map(|p| xy(self.project(p))).collect::<Vec<_>>().join(" ")
    }
}

fn xy((x, y): (f64, f64)) -> String {
    format!("{x:.2},{y:.2}")
}

/// Triangle, realizable region, region boundaries, one arrow per
/// trajectory and the base point.
pub fn render_svg(spec: &FigureSpec) -> Result<String> {
    let canvas = Canvas::new(spec.width, spec.height);
    let d = spec.rule.domain();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    out.push_str(concat!(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" ",
        "markerHeight=\"6\" orient=\"auto\"><path class=\"arrow-head\" d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
        "<style>.simplex{fill:none;stroke:#000;stroke-width:1.5}",
        ".realizable{fill:#ddd;stroke:none}",
        ".region-boundary{fill:none;stroke:#555;stroke-width:1}",
        ".trajectory{fill:none;stroke:#b00;stroke-width:2}",
        ".arrow-head{fill:#b00}",
        ".base-point{fill:#000}",
        "text{font-family:sans-serif;font-size:16px}</style>\n"
    ));

    let _ =
        writeln!(out, r#"<polygon class="realizable" points="{}"/>"#, canvas.points(&realizable_region(&spec.rule)?));
    let _ = writeln!(out, r#"<polygon class="simplex" points="{} {} {}"/>"#, xy(canvas.a), xy(canvas.b), xy(canvas.c));
    for b in region_boundaries(&spec.rule)? {
        let _ = writeln!(
            out,
            r#"<polyline class="region-boundary" data-between="{}{}" points="{}"/>"#,
            d.label(b.between.0),
            d.label(b.between.1),
            canvas.points(&[b.from, b.to])
        );
    }
    for t in &spec.trajectories {
        let path: Vec<String> = t.points.iter().map(|p| xy(canvas.project(p))).collect();
        let _ = writeln!(
            out,
            r#"<path class="trajectory" data-type="{}" data-order="{}" d="M{}" marker-end="url(#arrow)"/>"#,
            d.compact_order(&t.type_order),
            d.compact_order(&t.strategic_order),
            path.join(" L")
        );
    }
    let (bx, by) = canvas.project(&spec.base_point);
    let _ = writeln!(out, r#"<circle class="base-point" cx="{bx:.2}" cy="{by:.2}" r="4"/>"#);
    let labels = [(canvas.a, -24.0, 20.0), (canvas.b, 10.0, 20.0), (canvas.c, -5.0, -12.0)];
    for (i, ((x, y), dx, dy)) in labels.into_iter().enumerate() {
        let label = d.label(safevote_core::Alternative::new(i));
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{label}</text>"#, x + dx, y + dy);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
