//! Convex polygon helpers for the area oracle.

use crate::geometry::Point2;

/// Signed shoelace area; positive for counter-clockwise vertex order.
pub fn signed_area(poly: &[Point2]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for (i, p) in poly.iter().enumerate() {
        let q = poly[(i + 1) % poly.len()];
        twice += p.cross(q);
    }
    0.5 * twice
}

pub fn area(poly: &[Point2]) -> f64 {
    signed_area(poly).abs()
}

/// Side of the directed line `a -> b` on which `p` lies (positive: left).
pub fn line_side(a: Point2, b: Point2, p: Point2) -> f64 {
    (b - a).cross(p - a)
}

/// Part of a convex polygon on the left (`keep_left`) or right of the
/// directed line `a -> b`.
pub fn clip_half_plane(poly: &[Point2], a: Point2, b: Point2, keep_left: bool) -> Vec<Point2> {
    let sign = if keep_left { 1.0 } else { -1.0 };
    let side = |p: Point2| sign * line_side(a, b, p);
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (i, &p) in poly.iter().enumerate() {
        let q = poly[(i + 1) % poly.len()];
        let (sp, sq) = (side(p), side(q));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
            out.push(p.lerp(q, sp / (sp - sq)));
        }
    }
    dedup_vertices(out)
}

/// Drops repeated consecutive vertices (zero-length edges).
pub fn dedup_vertices(poly: Vec<Point2>) -> Vec<Point2> {
    let scale = poly.iter().fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()));
    let tol = 1e-14 * scale.max(1.0);
    let mut out: Vec<Point2> = Vec::with_capacity(poly.len());
    for p in poly {
        if out.last().is_none_or(|l| l.distance(p) > tol) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].distance(out[out.len() - 1]) <= tol {
        out.pop();
    }
    out
}

/// Splits a convex polygon along two lines into (up to) four pieces,
/// ordered left/left, left/right, right/left, right/right.
pub fn split_by_two_lines(poly: &[Point2], first: (Point2, Point2), second: (Point2, Point2)) -> [Vec<Point2>; 4] {
    let halves = [true, false].map(|left| clip_half_plane(poly, first.0, first.1, left));
    [
        clip_half_plane(&halves[0], second.0, second.1, true),
        clip_half_plane(&halves[0], second.0, second.1, false),
        clip_half_plane(&halves[1], second.0, second.1, true),
        clip_half_plane(&halves[1], second.0, second.1, false),
    ]
}
