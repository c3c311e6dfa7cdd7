//! Triangle input, canonical placement and the side-role regions.
//!
//! A triangle is placed with one side on `[(0,0), (1,0)]` and its third
//! vertex `C = (h, ht)` in the quadrant `h >= 1/2`, `ht > 0`. Which side
//! lands on the base decides the region of `C`:
//!
//! * longest side: `h² + ht² < 1` (R1)
//! * middle side: `h² + ht² > 1` and `(h-1)² + ht² < 1` (R2)
//! * shortest side: `(h-1)² + ht² > 1` (R3)
//!
//! Inversion about the unit circles centred at `A` and `B` moves a point
//! between these regions while preserving the similarity class.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// `self + t (other - self)`.
    pub fn lerp(self, other: Self, t: f64) -> Self {
        self + (other - self) * t
    }
}

impl Add for Point2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `A = (0, 0)`.
pub const VERTEX_A: Point2 = Point2::new(0.0, 0.0);
/// `B = (1, 0)`.
pub const VERTEX_B: Point2 = Point2::new(1.0, 0.0);

/// The equilateral apex `(1/2, √3/2)`.
pub fn equilateral_apex() -> Point2 {
    Point2::new(0.5, 3f64.sqrt() / 2.0)
}

/// Relative margin below which a triangle counts as degenerate.
const DEGENERACY_EPS: f64 = 1e-12;

/// Slack on the circle inequalities that bound the triangle space, so that
/// isosceles points computed in floating point stay inside.
const UPSILON_SLACK: f64 = 1e-12;

/// A triangle as supplied by the caller.
///
/// `Sides([a, b, c])` lists the lengths of `V0V1`, `V1V2` and `V2V0`; the
/// vertices are then laid out as `V0 = (0, 0)`, `V1 = (a, 0)` and `V2`
/// above the axis. Sides may be given in any order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleSpec {
    Sides([f64; 3]),
    Vertices([Point2; 3]),
}

impl TriangleSpec {
    pub fn from_sides(a: f64, b: f64, c: f64) -> Result<Self> {
        let t = Self::Sides([a, b, c]);
        t.validate()?;
        Ok(t)
    }

    pub fn from_vertices(v0: Point2, v1: Point2, v2: Point2) -> Result<Self> {
        let t = Self::Vertices([v0, v1, v2]);
        t.validate()?;
        Ok(t)
    }

    /// The triangle `(0,0), (1,0), (h, ht)`.
    pub fn canonical(h: f64, ht: f64) -> Result<Self> {
        Self::from_vertices(VERTEX_A, VERTEX_B, Point2::new(h, ht))
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Sides(sides) => {
                if let Some(bad) = sides.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
                    return Err(Error::DegenerateTriangle(format!(
                        "side length {bad} is not a positive finite number"
                    )));
                }
                let perimeter: f64 = sides.iter().sum();
                for i in 0..3 {
                    let slack = sides[(i + 1) % 3] + sides[(i + 2) % 3] - sides[i];
                    if slack <= DEGENERACY_EPS * perimeter {
                        return Err(Error::DegenerateTriangle(format!(
                            "sides {}, {}, {} violate the strict triangle inequality",
                            sides[0], sides[1], sides[2]
                        )));
                    }
                }
                Ok(())
            }
            Self::Vertices(v) => {
                if !v.iter().all(|p| p.is_finite()) {
                    return Err(Error::DegenerateTriangle("vertex coordinates must be finite".into()));
                }
                let longest = self.side_lengths().into_iter().fold(0.0, f64::max);
                let twice_area = (v[1] - v[0]).cross(v[2] - v[0]).abs();
                if longest == 0.0 || twice_area <= DEGENERACY_EPS * longest * longest {
                    return Err(Error::DegenerateTriangle("vertices are collinear".into()));
                }
                Ok(())
            }
        }
    }

    pub fn vertices(&self) -> [Point2; 3] {
        match *self {
            Self::Vertices(v) => v,
            Self::Sides([a, b, c]) => {
                let x = (a * a + c * c - b * b) / (2.0 * a);
                let y = (c * c - x * x).max(0.0).sqrt();
                [Point2::new(0.0, 0.0), Point2::new(a, 0.0), Point2::new(x, y)]
            }
        }
    }

    /// Lengths of `V0V1`, `V1V2`, `V2V0`.
    pub fn side_lengths(&self) -> [f64; 3] {
        match *self {
            Self::Sides(s) => s,
            Self::Vertices(v) => [v[0].distance(v[1]), v[1].distance(v[2]), v[2].distance(v[0])],
        }
    }

    pub fn area(&self) -> f64 {
        let v = self.vertices();
        0.5 * (v[1] - v[0]).cross(v[2] - v[0]).abs()
    }

    pub fn longest_side(&self) -> f64 {
        self.side_lengths().into_iter().fold(0.0, f64::max)
    }
}

/// Maps canonical coordinates back onto the caller's triangle:
/// an optional reflection in the base line, then the rotation and scaling
/// that carries `(1, 0)` to `translation + basis`, then the translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    pub translation: Point2,
    pub basis: Point2,
    pub reflected: bool,
}

impl Similarity {
    pub fn identity() -> Self {
        Self {
            translation: VERTEX_A,
            basis: VERTEX_B,
            reflected: false,
        }
    }

    pub fn scale(&self) -> f64 {
        self.basis.norm()
    }

    pub fn rotation(&self) -> f64 {
        self.basis.y.atan2(self.basis.x)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let q = if self.reflected { Point2::new(p.x, -p.y) } else { p };
        let b = self.basis;
        self.translation + Point2::new(b.x * q.x - b.y * q.y, b.y * q.x + b.x * q.y)
    }

    pub fn invert(&self, p: Point2) -> Point2 {
        let d = p - self.translation;
        let b = self.basis;
        let n = b.norm_sq();
        let q = Point2::new((b.x * d.x + b.y * d.y) / n, (b.x * d.y - b.y * d.x) / n);
        if self.reflected {
            Point2::new(q.x, -q.y)
        } else {
            q
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideRank {
    Shortest,
    Middle,
    Longest,
}

impl fmt::Display for SideRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Shortest => "shortest",
            Self::Middle => "middle",
            Self::Longest => "longest",
        })
    }
}

/// Which side of the original triangle plays `AB`.
///
/// `edge` indexes the side `V[edge] V[edge + 1]`. `rank` orders the sides
/// by length; equal sides are ranked by edge index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SideRole {
    pub edge: usize,
    pub rank: SideRank,
}

impl fmt::Display for SideRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (edge {})", self.rank, self.edge)
    }
}

fn side_ranks(lengths: [f64; 3]) -> [SideRank; 3] {
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| lengths[i].total_cmp(&lengths[j]).then(i.cmp(&j)));
    let mut ranks = [SideRank::Middle; 3];
    ranks[order[0]] = SideRank::Shortest;
    ranks[order[1]] = SideRank::Middle;
    ranks[order[2]] = SideRank::Longest;
    ranks
}

/// A triangle in canonical position together with the similarity that maps
/// it back to the original coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalTriangle {
    pub h: f64,
    pub ht: f64,
    pub transform: Similarity,
    pub placement: SideRole,
}

impl CanonicalTriangle {
    /// A canonical triangle that is its own original (identity transform).
    pub fn new(h: f64, ht: f64) -> Result<Self> {
        if !(h >= 0.5 && ht > 0.0 && h.is_finite() && ht.is_finite()) {
            return Err(Error::OutsideQuadrant { h, ht });
        }
        let rank = side_ranks([1.0, (h - 1.0).hypot(ht), h.hypot(ht)])[0];
        Ok(Self {
            h,
            ht,
            transform: Similarity::identity(),
            placement: SideRole { edge: 0, rank },
        })
    }

    pub fn apex(&self) -> Point2 {
        Point2::new(self.h, self.ht)
    }

    pub fn vertices(&self) -> [Point2; 3] {
        [VERTEX_A, VERTEX_B, self.apex()]
    }

    pub fn to_original(&self, p: Point2) -> Point2 {
        self.transform.apply(p)
    }

    pub fn region(&self, eps: f64) -> Result<RegionLabel> {
        classify_region(self.h, self.ht, eps)
    }
}

/// Places side `edge` of the triangle on the unit base, mirroring when
/// needed so that `h >= 1/2`.
fn place_on_edge(vertices: &[Point2; 3], ranks: &[SideRank; 3], edge: usize) -> CanonicalTriangle {
    let mut a = vertices[edge];
    let mut b = vertices[(edge + 1) % 3];
    let c = vertices[(edge + 2) % 3];

    let coords = |a: Point2, b: Point2| {
        let d = b - a;
        let rel = c - a;
        let n = d.norm_sq();
        (rel.dot(d) / n, d.cross(rel) / n)
    };
    let (mut h, mut v) = coords(a, b);
    if h < 0.5 {
        std::mem::swap(&mut a, &mut b);
        (h, v) = coords(a, b);
    }
    CanonicalTriangle {
        h,
        ht: v.abs(),
        transform: Similarity {
            translation: a,
            basis: b - a,
            reflected: v < 0.0,
        },
        placement: SideRole {
            edge,
            rank: ranks[edge],
        },
    }
}

/// One canonical placement per side of the triangle, without merging
/// placements that coincide for isosceles inputs.
pub fn side_placements(t: &TriangleSpec) -> Result<[CanonicalTriangle; 3]> {
    t.validate()?;
    let vertices = t.vertices();
    let ranks = side_ranks(t.side_lengths());
    Ok([0, 1, 2].map(|edge| place_on_edge(&vertices, &ranks, edge)))
}

/// Distinct canonical points of the triangle, one per side role.
///
/// Equilateral triangles yield a single entry, isosceles ones two.
pub fn placements(t: &TriangleSpec) -> Result<Vec<CanonicalTriangle>> {
    const SAME: f64 = 1e-9;
    let mut out: Vec<CanonicalTriangle> = Vec::with_capacity(3);
    for ct in side_placements(t)? {
        if !out
            .iter()
            .any(|o| (o.h - ct.h).abs() <= SAME && (o.ht - ct.ht).abs() <= SAME)
        {
            out.push(ct);
        }
    }
    Ok(out)
}

/// The representative of the triangle's similarity class in the space of
/// triangles: the middle side on the base (closure of R2).
pub fn canonicalize(t: &TriangleSpec) -> Result<CanonicalTriangle> {
    let all = side_placements(t)?;
    let rank_order = |ct: &CanonicalTriangle| match ct.placement.rank {
        SideRank::Middle => 0,
        SideRank::Shortest => 1,
        SideRank::Longest => 2,
    };
    let mut ordered = all;
    ordered.sort_by_key(rank_order);
    Ok(ordered
        .iter()
        .find(|ct| upsilon_contains(ct.h, ct.ht))
        .copied()
        .unwrap_or(ordered[0]))
}

/// Reflection `h -> 1 - h` that brings a point back to `h >= 1/2`.
pub fn mirror_normalize(p: Point2) -> Point2 {
    if p.x < 0.5 {
        Point2::new(1.0 - p.x, p.y)
    } else {
        p
    }
}

/// Inversion of `p` in the circle of the given center and radius.
pub fn invert_point(p: Point2, center: Point2, radius: f64) -> Result<Point2> {
    let d = p - center;
    let d2 = d.norm_sq();
    if d2 == 0.0 || !d2.is_finite() {
        return Err(Error::InversionAtCenter);
    }
    Ok(center + d * (radius * radius / d2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    R1,
    R2,
    R3,
    /// On the circle `h² + ht² = 1`.
    B12,
    /// On the circle `(h-1)² + ht² = 1`.
    B23,
    /// On the line `h = 1/2`.
    #[serde(rename = "ISO_MID")]
    IsoMid,
    #[serde(rename = "EQUILATERAL")]
    Equilateral,
}

impl RegionLabel {
    pub fn is_boundary(self) -> bool {
        !matches!(self, Self::R1 | Self::R2 | Self::R3)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::R1 => "R1",
            Self::R2 => "R2",
            Self::R3 => "R3",
            Self::B12 => "B12",
            Self::B23 => "B23",
            Self::IsoMid => "ISO_MID",
            Self::Equilateral => "EQUILATERAL",
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Region of the apex `(h, ht)`; isosceles boundaries win within `eps`.
pub fn classify_region(h: f64, ht: f64, eps: f64) -> Result<RegionLabel> {
    if !(h >= 0.5 - eps && ht > 0.0 && h.is_finite() && ht.is_finite()) {
        return Err(Error::OutsideQuadrant { h, ht });
    }
    let to_a = h * h + ht * ht - 1.0;
    let to_b = (h - 1.0) * (h - 1.0) + ht * ht - 1.0;
    let on_a = to_a.abs() <= eps;
    let on_b = to_b.abs() <= eps;
    Ok(if on_a && on_b {
        RegionLabel::Equilateral
    } else if on_a {
        RegionLabel::B12
    } else if on_b {
        RegionLabel::B23
    } else if (h - 0.5).abs() <= eps {
        RegionLabel::IsoMid
    } else if to_a < 0.0 {
        RegionLabel::R1
    } else if to_b < 0.0 {
        RegionLabel::R2
    } else {
        RegionLabel::R3
    })
}

/// Interior angles in radians at `A`, `B` and `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl TriangleAngles {
    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }

    /// For an isosceles triangle, the angle between the two equal sides.
    pub fn apex_angle(&self, tol: f64) -> Option<f64> {
        let [a, b, c] = [self.alpha, self.beta, self.gamma];
        if (a - b).abs() <= tol {
            Some(c)
        } else if (b - c).abs() <= tol {
            Some(a)
        } else if (a - c).abs() <= tol {
            Some(b)
        } else {
            None
        }
    }

    pub fn degrees(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma].map(f64::to_degrees)
    }
}

fn angle_between(u: Point2, v: Point2) -> f64 {
    u.cross(v).abs().atan2(u.dot(v))
}

pub fn triangle_angles(ct: &CanonicalTriangle) -> TriangleAngles {
    let [a, b, c] = ct.vertices();
    TriangleAngles {
        alpha: angle_between(b - a, c - a),
        beta: angle_between(a - b, c - b),
        gamma: angle_between(a - c, b - c),
    }
}

/// Membership in the space of triangles: `1/2 <= h < 2`, `ht > 0`, between
/// the isosceles circles `h² + ht² = 1` (only a constraint for `h <= 1`)
/// and `(h-1)² + ht² = 1`.
pub fn upsilon_contains(h: f64, ht: f64) -> bool {
    (0.5 - UPSILON_SLACK..2.0).contains(&h)
        && ht > 0.0
        && (h - 1.0) * (h - 1.0) + ht * ht <= 1.0 + UPSILON_SLACK
        && (h > 1.0 || h * h + ht * ht >= 1.0 - UPSILON_SLACK)
}

/// Each angle of the equilateral triangle.
pub const EQUILATERAL_ANGLE: f64 = PI / 3.0;
