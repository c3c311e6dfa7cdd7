//! Quadrisections with the triangular part on a fixed base.
//!
//! With `A = (0,0)`, `B = (1,0)`, `C = (h,ht)` the two segments are `XP`
//! and `YQ` where
//!
//! ```text
//! X = x B,  Y = (1 - y) B,  P = s C,  Q = (1 - r) B + r C,
//! s = 1/(2x),  r = 1/(2y).
//! ```
//!
//! The choice of `s` and `r` halves the triangle along each segment. The
//! area equation makes `XOY` a quarter of the triangle and is solved by
//!
//! ```text
//! y(x) = 2 - 2x + sqrt(12x² - 16x + 6) / 2,   x in [√2/2, 1].
//! ```
//!
//! The other branch of the area equation (minus the square root) gives
//! `y < 1/2` on the whole range and never yields a quadrisection.
//!
//! Perpendicularity of `XP` and `YQ` then reads
//! `(x² - h/2)(y² - (1-h)/2) = (ht/2)²`; its roots in `x` are the
//! quadrisections whose triangular part lies on `AB`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::geometry::{side_placements, CanonicalTriangle, Point2, SideRole, TriangleSpec, VERTEX_B};
use crate::polygon;
use crate::roots::{scan_roots_with_slope, ScanOptions};
use crate::{Error, Result, Tolerances};

/// Smallest base coordinate, `√2/2`.
pub const X_MIN: f64 = FRAC_1_SQRT_2;
/// Largest base coordinate.
pub const X_MAX: f64 = 1.0;

const RANGE_SLACK: f64 = 1e-12;

/// Number of uniform subintervals used to bracket base roots.
pub const BASE_SCAN_SAMPLES: usize = 2048;

pub(crate) fn check_x(x: f64) -> Result<f64> {
    if x.is_finite() && (X_MIN - RANGE_SLACK..=X_MAX + RANGE_SLACK).contains(&x) {
        Ok(x.clamp(X_MIN, X_MAX))
    } else {
        Err(Error::OutOfRange {
            name: "x",
            value: x,
            lo: X_MIN,
            hi: X_MAX,
        })
    }
}

pub(crate) fn y_raw(x: f64) -> f64 {
    2.0 - 2.0 * x + (12.0 * x * x - 16.0 * x + 6.0).sqrt() / 2.0
}

/// The branch of the area equation that pairs `x` with `y`.
pub fn y_of_x(x: f64) -> Result<f64> {
    check_x(x).map(y_raw)
}

/// `(x² + y²) + 4 (xy - x - y) + 5/2`.
pub fn aeq_residual(x: f64, y: f64) -> f64 {
    (x * x + y * y) + 4.0 * (x * y - x - y) + 2.5
}

pub(crate) fn peq_raw(x: f64, h: f64, ht: f64) -> f64 {
    let y = y_raw(x);
    (x * x - h / 2.0) * (y * y - (1.0 - h) / 2.0) - (ht / 2.0) * (ht / 2.0)
}

/// `d/dx` of the perpendicularity residual along the area branch.
pub(crate) fn peq_slope_raw(x: f64, h: f64) -> f64 {
    let y = y_raw(x);
    let dy = -2.0 + (6.0 * x - 4.0) / (12.0 * x * x - 16.0 * x + 6.0).sqrt();
    2.0 * x * (y * y - (1.0 - h) / 2.0) + (x * x - h / 2.0) * 2.0 * y * dy
}

/// `(x² - h/2)(y(x)² - (1-h)/2) - (ht/2)²`.
pub fn peq_residual(x: f64, h: f64, ht: f64) -> Result<f64> {
    check_x(x).map(|x| peq_raw(x, h, ht))
}

/// A root of the perpendicularity equation on the base range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseRoot {
    pub x: f64,
    pub residual: f64,
    /// Double root: the apex lies where an arc touches without crossing.
    pub tangential: bool,
    /// `x = √2/2` (then `Y = A`) or `x = 1` (then `X = B`).
    pub endpoint: bool,
}

/// Every `x` in `[√2/2, 1]` solving the perpendicularity equation for the
/// apex `(h, ht)`, in increasing order.
pub fn solve_base(h: f64, ht: f64, tol: &Tolerances) -> Vec<BaseRoot> {
    let opts = ScanOptions {
        samples: BASE_SCAN_SAMPLES,
        xtol: 1e-14,
        zero_tol: tol.root,
        tangent_tol: tol.tangent,
    };
    scan_roots_with_slope(|x| peq_raw(x, h, ht), |x| peq_slope_raw(x, h), X_MIN, X_MAX, &opts)
        .into_iter()
        .map(|r| BaseRoot {
            x: r.x,
            residual: r.value,
            tangential: r.tangential,
            endpoint: r.endpoint,
        })
        .collect()
}

/// One quadrisection in canonical coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseSolution {
    pub x: f64,
    pub y: f64,
    pub s: f64,
    pub r: f64,
    /// `O = u P + (1 - u) X`.
    pub u: f64,
    #[serde(rename = "X")]
    pub x_point: Point2,
    #[serde(rename = "Y")]
    pub y_point: Point2,
    #[serde(rename = "P")]
    pub p: Point2,
    #[serde(rename = "Q")]
    pub q: Point2,
    #[serde(rename = "O")]
    pub o: Point2,
    pub aeq_residual: f64,
    pub peq_residual: f64,
}

impl BaseSolution {
    /// Builds the segments for base coordinate `x` without checking that
    /// they are perpendicular.
    pub fn evaluate(h: f64, ht: f64, x: f64) -> Self {
        let y = y_raw(x);
        let s = 1.0 / (2.0 * x);
        let r = 1.0 / (2.0 * y);
        let c = Point2::new(h, ht);
        let x_point = VERTEX_B * x;
        let y_point = VERTEX_B * (1.0 - y);
        let p = c * s;
        let q = VERTEX_B * (1.0 - r) + c * r;
        let u = ((x + y) - 1.0) / ((x + (s / r) * y) - s);
        let o = p * u + x_point * (1.0 - u);
        Self {
            x,
            y,
            s,
            r,
            u,
            x_point,
            y_point,
            p,
            q,
            o,
            aeq_residual: aeq_residual(x, y),
            peq_residual: peq_raw(x, h, ht),
        }
    }

    /// The two segments `[X, P]` and `[Y, Q]`.
    pub fn segments(&self) -> [[Point2; 2]; 2] {
        [[self.x_point, self.p], [self.y_point, self.q]]
    }

    /// Height of `O` from the closed form `ht (1 - (x+y)) / (1 - 2(x² + y²))`.
    pub fn intersection_height(&self, ht: f64) -> f64 {
        let (x, y) = (self.x, self.y);
        ht * (1.0 - (x + y)) / (1.0 - 2.0 * (x * x + y * y))
    }
}

/// The quadrisection of `ct` with base coordinate `x`, which must be a root.
pub fn build_quadrisection(ct: &CanonicalTriangle, x: f64, tol: &Tolerances) -> Result<BaseSolution> {
    let x = check_x(x)?;
    let sol = BaseSolution::evaluate(ct.h, ct.ht, x);
    if sol.peq_residual.is_nan() || sol.peq_residual.abs() > tol.eq {
        return Err(Error::NotARoot {
            x,
            residual: sol.peq_residual,
        });
    }
    Ok(sol)
}

/// Direct measurement of a candidate: the four pieces cut by the two
/// segments, their areas, and the angle between the segments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub region_areas: [f64; 4],
    pub total_area: f64,
    /// Largest `|area_i - total/4| / total`.
    pub max_area_deviation: f64,
    /// Dot product of the segment directions over the squared longest side.
    pub perpendicularity: f64,
    /// Where the segments cross, if they do.
    pub intersection: Option<Point2>,
    pub pass: bool,
}

fn segment_crossing(s1: [Point2; 2], s2: [Point2; 2]) -> Option<Point2> {
    const SLACK: f64 = 1e-9;
    let d1 = s1[1] - s1[0];
    let d2 = s2[1] - s2[0];
    let denom = d1.cross(d2);
    if denom.abs() <= f64::EPSILON * d1.norm() * d2.norm() {
        return None;
    }
    let w = s2[0] - s1[0];
    let a = w.cross(d2) / denom;
    let b = w.cross(d1) / denom;
    let inside = |t: f64| (-SLACK..=1.0 + SLACK).contains(&t);
    (inside(a) && inside(b)).then(|| s1[0] + d1 * a)
}

/// Checks two segments against the definition of a quadrisection of `t`.
pub fn verify_segments(t: &TriangleSpec, segments: &[[Point2; 2]; 2], tol: &Tolerances) -> VerificationReport {
    let tri = t.vertices();
    let total = polygon::area(&tri);
    let [s1, s2] = *segments;
    let pieces = polygon::split_by_two_lines(&tri, (s1[0], s1[1]), (s2[0], s2[1]));
    let region_areas = pieces.each_ref().map(|p| polygon::area(p));
    let max_area_deviation = region_areas
        .iter()
        .map(|a| (a - total / 4.0).abs() / total)
        .fold(0.0, f64::max);
    let scale = t.longest_side();
    let perpendicularity = (s1[1] - s1[0]).dot(s2[1] - s2[0]) / (scale * scale);
    let intersection = segment_crossing(s1, s2);
    let pass = intersection.is_some() && max_area_deviation <= tol.area && perpendicularity.abs() <= tol.perp;
    VerificationReport {
        region_areas,
        total_area: total,
        max_area_deviation,
        perpendicularity,
        intersection,
        pass,
    }
}

/// A quadrisection of the caller's triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrisection {
    pub base_placement: SideRole,
    /// The canonical apex the solution was computed for.
    pub canonical: Point2,
    pub solution: BaseSolution,
    pub tangential: bool,
    /// `[X, P]` and `[Y, Q]` in the original coordinates.
    pub segments_original: [[Point2; 2]; 2],
    /// `O` in the original coordinates.
    pub intersection_original: Point2,
    pub region_areas: [f64; 4],
    pub verification: VerificationReport,
}

impl Quadrisection {
    pub fn new(
        t: &TriangleSpec,
        ct: &CanonicalTriangle,
        solution: BaseSolution,
        tangential: bool,
        tol: &Tolerances,
    ) -> Self {
        let segments_original = solution.segments().map(|seg| seg.map(|p| ct.to_original(p)));
        let verification = verify_segments(t, &segments_original, tol);
        Self {
            base_placement: ct.placement,
            canonical: ct.apex(),
            solution,
            tangential,
            segments_original,
            intersection_original: ct.to_original(solution.o),
            region_areas: verification.region_areas,
            verification,
        }
    }

    /// Same pair of segments, irrespective of order and orientation.
    pub fn same_geometry(&self, other: &Self, tol: f64) -> bool {
        let seg_eq = |a: [Point2; 2], b: [Point2; 2]| {
            (a[0].distance(b[0]) <= tol && a[1].distance(b[1]) <= tol)
                || (a[0].distance(b[1]) <= tol && a[1].distance(b[0]) <= tol)
        };
        let [a1, a2] = self.segments_original;
        let [b1, b2] = other.segments_original;
        (seg_eq(a1, b1) && seg_eq(a2, b2)) || (seg_eq(a1, b2) && seg_eq(a2, b1))
    }
}

pub fn verify_quadrisection(t: &TriangleSpec, q: &Quadrisection, tol: &Tolerances) -> VerificationReport {
    verify_segments(t, &q.segments_original, tol)
}

/// Base roots of one side placement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementRoots {
    pub placement: CanonicalTriangle,
    pub roots: Vec<BaseRoot>,
}

/// Base roots for each of the three sides of `t`.
pub fn roots_by_placement(t: &TriangleSpec, tol: &Tolerances) -> Result<Vec<PlacementRoots>> {
    Ok(side_placements(t)?
        .into_iter()
        .map(|ct| PlacementRoots {
            placement: ct,
            roots: solve_base(ct.h, ct.ht, tol),
        })
        .collect())
}

/// Relative distance under which two quadrisections are the same.
pub const DEDUP_TOL: f64 = 1e-9;

/// Every quadrisection of `t`, ordered by base side and then by `x`.
///
/// Each side is placed on the base in turn and every root of the
/// perpendicularity equation is built; mirror placements of isosceles
/// triangles produce the same segments and are merged.
pub fn enumerate_quadrisections(t: &TriangleSpec, tol: &Tolerances) -> Result<Vec<Quadrisection>> {
    let scale = t.longest_side();
    let mut out: Vec<Quadrisection> = Vec::new();
    for pr in roots_by_placement(t, tol)? {
        let ct = pr.placement;
        for root in pr.roots {
            let solution = BaseSolution::evaluate(ct.h, ct.ht, root.x);
            let q = Quadrisection::new(t, &ct, solution, root.tangential, tol);
            if !out.iter().any(|o| o.same_geometry(&q, DEDUP_TOL * scale)) {
                out.push(q);
            }
        }
    }
    Ok(out)
}
