//! SVG figures: the classified space of triangles and the quadrisections
//! of a single triangle.
//!
//! Output depends only on the inputs; all numbers are written with a fixed
//! number of decimals so that identical inputs give identical bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arcs::{envelope_curve, separating_curve, special_triangles};
use crate::atlas::{AtlasGrid, HT_MAX, H_MAX, H_MIN};
use crate::geometry::{equilateral_apex, Point2, TriangleSpec};
use crate::solver::Quadrisection;
use crate::{Error, Result};

/// Samples used for every curve layer.
pub const CURVE_SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layers {
    /// Count colouring of the grid cells.
    pub regions: bool,
    /// Outline of `Υ`: the two isosceles circles and the base line.
    pub arcs: bool,
    pub envelope: bool,
    /// The count-2 curve.
    pub s2: bool,
    /// Right triangles `h = 1`.
    pub right_segment: bool,
    pub special_points: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Self {
            regions: true,
            arcs: true,
            envelope: true,
            s2: true,
            right_segment: true,
            special_points: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub stroke_width: f64,
    pub curve_width: f64,
    pub layers: Layers,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            width: 900.0,
            height: 640.0,
            margin: 40.0,
            stroke_width: 1.5,
            curve_width: 2.0,
            layers: Layers::default(),
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::OutOfRange {
                    name,
                    value: v,
                    lo: 0.0,
                    hi: f64::INFINITY,
                })
            }
        };
        positive("width", self.width)?;
        positive("height", self.height)?;
        positive("stroke_width", self.stroke_width)?;
        positive("curve_width", self.curve_width)?;
        if !(self.margin >= 0.0 && 2.0 * self.margin < self.width.min(self.height)) {
            return Err(Error::OutOfRange {
                name: "margin",
                value: self.margin,
                lo: 0.0,
                hi: 0.5 * self.width.min(self.height),
            });
        }
        Ok(())
    }
}

/// Affine map from a world box onto the canvas, `y` pointing up.
#[derive(Debug, Clone, Copy)]
struct Viewport {
    min: Point2,
    scale: f64,
    origin: Point2,
    height: f64,
}

impl Viewport {
    fn fit(min: Point2, max: Point2, spec: &RenderSpec) -> Self {
        let inner_w = spec.width - 2.0 * spec.margin;
        let inner_h = spec.height - 2.0 * spec.margin;
        let span = max - min;
        let scale = (inner_w / span.x).min(inner_h / span.y);
        let used = Point2::new(span.x * scale, span.y * scale);
        Self {
            min,
            scale,
            origin: Point2::new(
                spec.margin + 0.5 * (inner_w - used.x),
                spec.margin + 0.5 * (inner_h - used.y),
            ),
            height: used.y,
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        let q = p - self.min;
        (
            self.origin.x + q.x * self.scale,
            self.origin.y + self.height - q.y * self.scale,
        )
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn points_attr(vp: &Viewport, pts: &[Point2]) -> String {
    pts.iter()
        .map(|&p| {
            let (x, y) = vp.map(p);
            format!("{},{}", num(x), num(y))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn header(out: &mut String, spec: &RenderSpec, style: &str) {
    let (w, h) = (num(spec.width), num(spec.height));
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(out, "<style>{style}</style>").unwrap();
    writeln!(out, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##).unwrap();
}

fn polyline(out: &mut String, vp: &Viewport, id: &str, pts: &[Point2]) {
    writeln!(
        out,
        r#"<polyline id="{id}" class="{id}" points="{}"/>"#,
        points_attr(vp, pts)
    )
    .unwrap();
}

fn upsilon_outline(n: usize) -> Vec<Point2> {
    // Lower arc h² + ht² = 1 from E down to B, the base out to (2, 0), and
    // the upper arc (h-1)² + ht² = 1 back to E.
    let e = equilateral_apex();
    let a0 = e.y.atan2(e.x);
    let mut pts: Vec<Point2> = (0..=n)
        .map(|k| {
            let a = a0 * (1.0 - k as f64 / n as f64);
            Point2::new(a.cos(), a.sin())
        })
        .collect();
    let b0 = e.y.atan2(e.x - 1.0);
    pts.extend((0..=n).map(|k| {
        let a = b0 * k as f64 / n as f64;
        Point2::new(1.0 + a.cos(), a.sin())
    }));
    pts
}

const SPACE_STYLE: &str = ".count1{fill:#dfe7ef}.count2{fill:#f2a541}.count3{fill:#c0392b}\
.upsilon{fill:none;stroke:#1b1b1b}.envelope{fill:none;stroke:#6c3483;stroke-dasharray:4 3}\
.s2{fill:none;stroke:#f39c12}.right{fill:none;stroke:#2471a3}.mark{fill:#000000}\
.label{font-family:sans-serif;font-size:12px}";

/// The space of triangles with its count colouring, boundary, curves and
/// distinguished points. `spec` must satisfy [`RenderSpec::validate`].
pub fn render_space_svg(grid: &AtlasGrid, spec: &RenderSpec) -> String {
    let vp = Viewport::fit(Point2::new(H_MIN, 0.0), Point2::new(H_MAX, HT_MAX), spec);
    let mut out = String::new();
    header(&mut out, spec, SPACE_STYLE);
    let layers = spec.layers;

    if layers.regions {
        writeln!(out, r#"<g id="regions">"#).unwrap();
        let (dh, dht) = (grid.cell_width(), grid.cell_height());
        for i in 0..grid.nh {
            // vertical runs of equal count inside Υ become one rectangle
            let mut j = 0;
            while j < grid.nht {
                let c = grid.cell(i, j);
                if !c.in_upsilon {
                    j += 1;
                    continue;
                }
                let mut end = j;
                while end + 1 < grid.nht && grid.cell(i, end + 1).in_upsilon && grid.cell(i, end + 1).count == c.count {
                    end += 1;
                }
                let lo = Point2::new(c.h, c.ht - dht);
                let hi = Point2::new(c.h + dh, grid.cell(i, end).ht);
                let (x0, y1) = vp.map(lo);
                let (x1, y0) = vp.map(hi);
                writeln!(
                    out,
                    r#"<rect class="count{}" x="{}" y="{}" width="{}" height="{}"/>"#,
                    c.count,
                    num(x0),
                    num(y0),
                    num(x1 - x0),
                    num(y1 - y0)
                )
                .unwrap();
                j = end + 1;
            }
        }
        writeln!(out, "</g>").unwrap();
    }

    let stroke = |out: &mut String, width: f64| {
        writeln!(out, r#"<g stroke-width="{}">"#, num(width)).unwrap();
    };
    stroke(&mut out, spec.stroke_width);
    if layers.arcs {
        polyline(&mut out, &vp, "upsilon", &upsilon_outline(CURVE_SAMPLES));
    }
    if layers.right_segment {
        polyline(&mut out, &vp, "right", &[Point2::new(1.0, 0.0), Point2::new(1.0, 1.0)]);
    }
    writeln!(out, "</g>").unwrap();

    stroke(&mut out, spec.curve_width);
    if layers.envelope {
        polyline(&mut out, &vp, "envelope", &envelope_curve(CURVE_SAMPLES).points());
    }
    if layers.s2 {
        polyline(&mut out, &vp, "s2", &separating_curve(CURVE_SAMPLES).points());
    }
    writeln!(out, "</g>").unwrap();

    if layers.special_points {
        let st = special_triangles();
        let marks = [
            ("E", equilateral_apex()),
            ("I1", st.i1),
            ("I2", st.i2),
            ("I2'", st.i2_reflection),
        ];
        writeln!(out, r#"<g id="special-points">"#).unwrap();
        for (name, p) in marks {
            let (x, y) = vp.map(p);
            writeln!(
                out,
                r#"<circle class="mark" id="point-{}" cx="{}" cy="{}" r="3.000"/><text class="label" x="{}" y="{}">{}</text>"#,
                name.replace('\'', "r"),
                num(x),
                num(y),
                num(x + 5.0),
                num(y - 5.0),
                name
            )
            .unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Best rational approximation with denominator at most `max_den`, by
/// continued fractions.
pub fn rational_approximation(v: f64, max_den: u64) -> Option<(i64, u64)> {
    if !v.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut x = v;
    for _ in 0..64 {
        let a = x.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a;
        if frac.abs() < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    (k1 > 0).then_some((h1 as i64, k1 as u64))
}

/// `p/q` when `v` is that fraction to within `1e-9`, otherwise a decimal.
pub fn coordinate_label(v: f64) -> String {
    match rational_approximation(v, 1000) {
        Some((p, q)) if (p as f64 / q as f64 - v).abs() <= 1e-9 * v.abs().max(1.0) => {
            if q == 1 {
                format!("{p}")
            } else {
                format!("{p}/{q}")
            }
        }
        _ => format!("{v:.6}"),
    }
}

fn point_label(p: Point2) -> String {
    format!("({}, {})", coordinate_label(p.x), coordinate_label(p.y))
}

const QUAD_STYLE: &str = ".triangle{fill:#f7f7f7;stroke:#1b1b1b}\
.quad0{stroke:#c0392b}.quad1{stroke:#2471a3}.quad2{stroke:#1e8449}\
.o{fill:#000000}.label{font-family:sans-serif;font-size:11px}";

/// The triangle with every quadrisection in `qs` drawn as a pair of
/// segments, the crossing point `O`, endpoint coordinates and the four
/// region areas. `spec` must satisfy [`RenderSpec::validate`].
pub fn render_quadrisection_svg(t: &TriangleSpec, qs: &[Quadrisection], spec: &RenderSpec) -> String {
    let v = t.vertices();
    let min = Point2::new(
        v.iter().map(|p| p.x).fold(f64::INFINITY, f64::min),
        v.iter().map(|p| p.y).fold(f64::INFINITY, f64::min),
    );
    let max = Point2::new(
        v.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max),
        v.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max),
    );
    let vp = Viewport::fit(min, max, spec);
    let mut out = String::new();
    header(&mut out, spec, QUAD_STYLE);
    writeln!(
        out,
        r#"<polygon class="triangle" stroke-width="{}" points="{}"/>"#,
        num(spec.stroke_width),
        points_attr(&vp, &v)
    )
    .unwrap();
    let line_height = 14.0;
    for (k, q) in qs.iter().enumerate() {
        writeln!(
            out,
            r#"<g class="quad quad{}" id="quad-{k}" stroke-width="{}">"#,
            k % 3,
            num(spec.curve_width)
        )
        .unwrap();
        let names = [["X", "P"], ["Y", "Q"]];
        for (seg, seg_names) in q.segments_original.iter().zip(names) {
            let (x1, y1) = vp.map(seg[0]);
            let (x2, y2) = vp.map(seg[1]);
            writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(x1),
                num(y1),
                num(x2),
                num(y2)
            )
            .unwrap();
            for (p, name) in seg.iter().zip(seg_names) {
                let (x, y) = vp.map(*p);
                writeln!(
                    out,
                    r#"<text class="label" stroke="none" x="{}" y="{}">{name}{k} {}</text>"#,
                    num(x + 4.0),
                    num(y - 4.0),
                    point_label(*p)
                )
                .unwrap();
            }
        }
        let (ox, oy) = vp.map(q.intersection_original);
        writeln!(
            out,
            r#"<circle class="o" cx="{}" cy="{}" r="3.000"/><text class="label" stroke="none" x="{}" y="{}">O{k} {}</text>"#,
            num(ox),
            num(oy),
            num(ox + 4.0),
            num(oy + 12.0),
            point_label(q.intersection_original)
        )
        .unwrap();
        let areas = q.region_areas.map(coordinate_label).join(", ");
        writeln!(
            out,
            r#"<text class="label areas" stroke="none" x="{}" y="{}">quadrisection {k}: areas {areas}</text>"#,
            num(spec.margin),
            num(spec.height - spec.margin * 0.5 - line_height * (qs.len() - 1 - k) as f64)
        )
        .unwrap();
        writeln!(out, "</g>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}
