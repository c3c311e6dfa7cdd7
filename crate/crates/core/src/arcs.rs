//! The one-parameter family of circular arcs swept by the perpendicularity
//! equation, and the quadrisection count derived from it.
//!
//! Fixing `x` (and `y = y(x)`) turns the perpendicularity equation into a
//! circle in the `(h, ht)` plane:
//!
//! ```text
//! ht² + (h - c(x))² = r(x)²,   c = x² - y² + 1/2,   r = x² + y² - 1/2.
//! ```
//!
//! `Arc(x)` is the part with `h >= 1/2`, `ht > 0`; every apex on it has a
//! quadrisection with base `[(1 - y, 0), (x, 0)]`. Parametrising the arcs
//! by angle gives `F(x, θ) = (c + r cos θ, r sin θ)` on
//! `D = {x in [√2/2, 1], θ in [0, θ(x)]}`. `F` folds along the curve where
//! its Jacobian vanishes, and the image of that fold is the envelope of
//! the arcs for `x in [5/6, 1]`.
//!
//! A triangle's quadrisections are counted by inverting its
//! middle-side apex `C` in the unit circle about `B` and asking how many
//! arcs pass through the image `C'`: two arcs give three quadrisections,
//! a tangency with the envelope gives two, anything else one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    canonicalize, invert_point, mirror_normalize, triangle_angles, CanonicalTriangle, Point2, SideRole, TriangleSpec,
    VERTEX_B,
};
use crate::roots::{scan_roots_with_slope, Root, ScanOptions};
use crate::solver::{check_x, enumerate_quadrisections, roots_by_placement, y_raw, X_MAX, X_MIN};
use crate::{Error, Result, Tolerances};

/// Start of the fold curve and of the envelope.
pub const FOLD_X_MIN: f64 = 5.0 / 6.0;

/// Angular slack allowed on the domain `D`.
const THETA_SLACK: f64 = 1e-12;

/// An endpoint incidence root whose slope is at most this is a tangency.
const ENDPOINT_SLOPE_TOL: f64 = 1e-6;

/// Distance within which an inverted apex is taken to be `I₁`.
pub const I1_TOL: f64 = 1e-8;

/// Subintervals used when counting arcs through a point.
pub const INCIDENCE_SCAN_SAMPLES: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcData {
    pub x: f64,
    pub y: f64,
    /// Center abscissa.
    pub c: f64,
    pub r: f64,
    /// Angle of the terminal point `(1/2, z)` seen from `(c, 0)`.
    pub theta_end: f64,
    /// Height of the terminal point.
    pub z: f64,
}

fn center_radius(x: f64) -> (f64, f64, f64) {
    let y = y_raw(x);
    (y, x * x - y * y + 0.5, x * x + y * y - 0.5)
}

pub fn arc_data(x: f64) -> Result<ArcData> {
    let x = check_x(x)?;
    let (y, c, r) = center_radius(x);
    let cos_end = ((0.5 - c) / r).clamp(-1.0, 1.0);
    Ok(ArcData {
        x,
        y,
        c,
        r,
        theta_end: cos_end.acos(),
        z: (r * r - (0.5 - c) * (0.5 - c)).max(0.0).sqrt(),
    })
}

impl ArcData {
    pub fn terminal_point(&self) -> Point2 {
        self.point_at(self.theta_end)
    }

    pub fn point_at(&self, theta: f64) -> Point2 {
        Point2::new(self.c + self.r * theta.cos(), self.r * theta.sin())
    }

    /// `n + 1` points from `θ = 0` to the terminal point.
    pub fn polyline(&self, n: usize) -> Vec<Point2> {
        (0..=n)
            .map(|i| self.point_at(self.theta_end * i as f64 / n as f64))
            .collect()
    }
}

/// `y'`, `c'` and `r'` at `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Derivatives {
    pub dy: f64,
    pub dc: f64,
    pub dr: f64,
}

pub(crate) fn derivatives_raw(x: f64) -> Derivatives {
    let y = y_raw(x);
    let dy = -2.0 + (6.0 * x - 4.0) / (12.0 * x * x - 16.0 * x + 6.0).sqrt();
    Derivatives {
        dy,
        dc: 2.0 * x - 2.0 * y * dy,
        dr: 2.0 * x + 2.0 * y * dy,
    }
}

pub fn derivatives(x: f64) -> Result<Derivatives> {
    check_x(x).map(derivatives_raw)
}

fn check_domain(x: f64, theta: f64) -> Result<ArcData> {
    let arc = arc_data(x)?;
    if !(theta.is_finite() && (-THETA_SLACK..=arc.theta_end + THETA_SLACK).contains(&theta)) {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            lo: 0.0,
            hi: arc.theta_end,
        });
    }
    Ok(arc)
}

/// `F(x, θ) = (c(x) + r(x) cos θ, r(x) sin θ)`.
pub fn map_f(x: f64, theta: f64) -> Result<Point2> {
    check_domain(x, theta).map(|arc| arc.point_at(theta))
}

/// Jacobian determinant of `F`: `c' r cos θ + r' r`.
pub fn jacobian_f(x: f64, theta: f64) -> Result<f64> {
    let arc = check_domain(x, theta)?;
    let d = derivatives_raw(arc.x);
    Ok(d.dc * arc.r * theta.cos() + d.dr * arc.r)
}

/// The two sheets of `D` on which `F` is one-to-one, and the fold between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sheet {
    D1,
    D2,
    J0,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainPoint {
    pub x: f64,
    pub theta: f64,
    pub sheet: Sheet,
}

impl DomainPoint {
    /// Locates `(x, θ)` relative to the fold by the sign of the Jacobian.
    pub fn new(x: f64, theta: f64) -> Result<Self> {
        let jac = jacobian_f(x, theta)?;
        let sheet = if jac.abs() <= 1e-12 {
            Sheet::J0
        } else if jac > 0.0 {
            Sheet::D1
        } else {
            Sheet::D2
        };
        Ok(Self { x, theta, sheet })
    }

    pub fn image(&self) -> Point2 {
        let (_, c, r) = center_radius(self.x);
        Point2::new(c + r * self.theta.cos(), r * self.theta.sin())
    }
}

fn check_fold_x(x: f64) -> Result<f64> {
    if x.is_finite() && (FOLD_X_MIN - 1e-12..=X_MAX + 1e-12).contains(&x) {
        Ok(x.clamp(FOLD_X_MIN, X_MAX))
    } else {
        Err(Error::OutOfRange {
            name: "x",
            value: x,
            lo: FOLD_X_MIN,
            hi: X_MAX,
        })
    }
}

/// The fold point `(x, arccos(-r'/c'))`.
pub fn j0_point(x: f64) -> Result<DomainPoint> {
    let x = check_fold_x(x)?;
    let d = derivatives_raw(x);
    Ok(DomainPoint {
        x,
        theta: (-d.dr / d.dc).clamp(-1.0, 1.0).acos(),
        sheet: Sheet::J0,
    })
}

/// The envelope point `F(j0_point(x))`.
pub fn envelope_point(x: f64) -> Result<Point2> {
    j0_point(x).map(|p| p.image())
}

/// An ordered sampled curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub samples: Vec<(f64, Point2)>,
}

impl CurveSample {
    pub fn points(&self) -> Vec<Point2> {
        self.samples.iter().map(|(_, p)| *p).collect()
    }

    /// Distance from `p` to the polyline through the samples.
    pub fn distance_to(&self, p: Point2) -> f64 {
        self.samples
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0].1, w[1].1);
                let d = b - a;
                let t = ((p - a).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
                p.distance(a + d * t)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

fn fold_parameters(n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |i| {
        if i == n - 1 {
            X_MAX
        } else {
            FOLD_X_MIN + (X_MAX - FOLD_X_MIN) * i as f64 / (n - 1) as f64
        }
    })
}

/// `n` samples of the envelope `F(J₀)`, from `I₂` to the unmirrored `I₁`.
pub fn envelope_curve(n: usize) -> CurveSample {
    CurveSample {
        samples: fold_parameters(n)
            .map(|x| (x, envelope_point(x).expect("fold parameter in range")))
            .collect(),
    }
}

/// `n` samples of the count-2 curve in the space of triangles: the
/// envelope inverted in the unit circle about `B`, running from the
/// reflection of `I₂` to `I₁`.
pub fn separating_curve(n: usize) -> CurveSample {
    CurveSample {
        samples: fold_parameters(n)
            .map(|x| {
                let e = envelope_point(x).expect("fold parameter in range");
                let s = invert_point(e, VERTEX_B, 1.0).expect("envelope avoids B");
                (x, mirror_normalize(s))
            })
            .collect(),
    }
}

/// The distinguished isosceles triangles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialTriangles {
    /// The mirrored endpoint `F(p(1))` of the envelope; one quadrisection.
    pub i1: Point2,
    /// `(1/2, 8/9)`; the only isosceles triangle with two quadrisections.
    pub i2: Point2,
    /// Inverse of `I₂` in the unit circle about `B`: `(175/337, 288/337)`.
    pub i2_reflection: Point2,
    pub i1_apex_degrees: f64,
    pub i2_apex_degrees: f64,
}

fn apex_degrees(p: Point2) -> f64 {
    let ct = CanonicalTriangle::new(p.x, p.y).expect("special triangles are in the quadrant");
    triangle_angles(&ct)
        .apex_angle(1e-9)
        .expect("special triangles are isosceles")
        .to_degrees()
}

pub fn i1() -> Point2 {
    mirror_normalize(envelope_point(X_MAX).expect("x = 1 is on the fold"))
}

pub fn special_triangles() -> SpecialTriangles {
    let i1 = i1();
    let i2 = Point2::new(0.5, 8.0 / 9.0);
    SpecialTriangles {
        i1,
        i2,
        i2_reflection: invert_point(i2, VERTEX_B, 1.0).expect("I2 is not B"),
        i1_apex_degrees: apex_degrees(i1),
        i2_apex_degrees: apex_degrees(i2),
    }
}

/// `(h - c(ξ))² + ht² - r(ξ)²`: zero exactly when `Cir(ξ)` passes through `p`.
pub fn incidence(xi: f64, p: Point2) -> f64 {
    let (_, c, r) = center_radius(xi);
    (p.x - c) * (p.x - c) + p.y * p.y - r * r
}

/// `d/dξ` of [`incidence`].
pub fn incidence_slope(xi: f64, p: Point2) -> f64 {
    let (_, c, r) = center_radius(xi);
    let d = derivatives_raw(xi);
    -2.0 * (p.x - c) * d.dc - 2.0 * r * d.dr
}

/// Parameters `ξ` of the arcs through `p` (mirrored to `h >= 1/2`).
pub fn incidence_roots(p: Point2, tol: &Tolerances) -> Vec<Root> {
    let p = mirror_normalize(p);
    let opts = ScanOptions {
        samples: INCIDENCE_SCAN_SAMPLES,
        xtol: 1e-14,
        zero_tol: 4.0 * tol.root,
        tangent_tol: tol.env,
    };
    let mut roots = scan_roots_with_slope(|xi| incidence(xi, p), |xi| incidence_slope(xi, p), X_MIN, X_MAX, &opts);
    for r in &mut roots {
        if r.endpoint && incidence_slope(r.x, p).abs() <= ENDPOINT_SLOPE_TOL {
            r.tangential = true;
        }
    }
    roots
}

/// Position of a point relative to `F(D₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Membership {
    /// Covered twice: two distinct arcs pass through the point.
    Inside,
    /// On the envelope `F(J₀)`: an arc touches without crossing.
    OnEnvelope,
    Outside,
}

pub fn in_fd2(p: Point2, tol: &Tolerances) -> Membership {
    let roots = incidence_roots(p, tol);
    if roots.iter().any(|r| r.tangential) {
        Membership::OnEnvelope
    } else if roots.len() >= 2 {
        Membership::Inside
    } else {
        Membership::Outside
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremCase {
    #[serde(rename = "CASE1_THREE")]
    Case1Three,
    #[serde(rename = "CASE2_TWO")]
    Case2Two,
    #[serde(rename = "CASE3_ONE")]
    Case3One,
}

impl TheoremCase {
    pub fn count(self) -> usize {
        match self {
            Self::Case1Three => 3,
            Self::Case2Two => 2,
            Self::Case3One => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Case1Three => "CASE1_THREE",
            Self::Case2Two => "CASE2_TWO",
            Self::Case3One => "CASE3_ONE",
        }
    }
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The count predicted from the inverted apex alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    /// Middle-side apex `C`.
    pub canonical: Point2,
    /// `C'`, the inverse of `C` about `B`, mirrored to `h >= 1/2`.
    pub inverse: Point2,
    pub membership: Membership,
    pub case: TheoremCase,
    pub count: usize,
    /// `C'` is on the envelope band or at `I₁`.
    pub boundary: bool,
}

pub fn theorem_count(t: &TriangleSpec, tol: &Tolerances) -> Result<TheoremVerdict> {
    let ct = canonicalize(t)?;
    let c = ct.apex();
    let inverse = mirror_normalize(invert_point(c, VERTEX_B, 1.0)?);
    let membership = in_fd2(inverse, tol);
    let at_i1 = inverse.distance(i1()) <= I1_TOL;
    let case = match membership {
        _ if at_i1 => TheoremCase::Case3One,
        Membership::Inside => TheoremCase::Case1Three,
        Membership::OnEnvelope => TheoremCase::Case2Two,
        Membership::Outside => TheoremCase::Case3One,
    };
    Ok(TheoremVerdict {
        canonical: c,
        inverse,
        membership,
        case,
        count: case.count(),
        boundary: at_i1 || membership == Membership::OnEnvelope,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlacementCount {
    pub placement: SideRole,
    pub h: f64,
    pub ht: f64,
    pub roots: usize,
}

/// Theorem count next to the count from direct enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub count: usize,
    pub theorem_case: TheoremCase,
    pub oracle_count: usize,
    pub per_placement_roots: Vec<PlacementCount>,
    pub canonical: Point2,
    pub inverse: Point2,
    pub membership: Membership,
    pub boundary: bool,
}

impl CountReport {
    pub fn agrees(&self) -> bool {
        self.count == self.oracle_count
    }
}

pub fn count_via_theorem(t: &TriangleSpec, tol: &Tolerances) -> Result<CountReport> {
    let verdict = theorem_count(t, tol)?;
    let per_placement_roots = roots_by_placement(t, tol)?
        .into_iter()
        .map(|pr| PlacementCount {
            placement: pr.placement.placement,
            h: pr.placement.h,
            ht: pr.placement.ht,
            roots: pr.roots.len(),
        })
        .collect();
    let oracle_count = enumerate_quadrisections(t, tol)?.len();
    Ok(CountReport {
        count: verdict.count,
        theorem_case: verdict.case,
        oracle_count,
        per_placement_roots,
        canonical: verdict.canonical,
        inverse: verdict.inverse,
        membership: verdict.membership,
        boundary: verdict.boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::equilateral_apex;
    use crate::solver::peq_residual;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn arc_table() {
        let e = equilateral_apex();
        let rows = [
            (X_MIN, 0.0, 1.0, PI / 3.0, e),
            (5.0 / 6.0, 0.5, 8.0 / 9.0, PI / 2.0, Point2::new(0.5, 8.0 / 9.0)),
            (1.0, 1.0, 1.0, 2.0 * PI / 3.0, e),
        ];
        for (x, c, r, theta, end) in rows {
            let a = arc_data(x).unwrap();
            assert!((a.c - c).abs() < 1e-12, "{a:?}");
            assert!((a.r - r).abs() < 1e-12, "{a:?}");
            assert!((a.theta_end - theta).abs() < 1e-12, "{a:?}");
            assert!(a.terminal_point().distance(end) < 1e-12, "{a:?}");
            assert!((a.z - end.y).abs() < 1e-12);
        }
        assert!(arc_data(0.5).is_err());
    }

    #[test]
    fn map_f_examples() {
        let e = equilateral_apex();
        assert!(map_f(X_MIN, PI / 3.0).unwrap().distance(e) < 1e-12);
        let a = arc_data(0.9).unwrap();
        assert!(map_f(0.9, 0.0).unwrap().distance(Point2::new(a.c + a.r, 0.0)) < 1e-15);
        assert!(
            map_f(5.0 / 6.0, PI / 2.0)
                .unwrap()
                .distance(Point2::new(0.5, 8.0 / 9.0))
                < 1e-12
        );
        assert!(map_f(0.9, -0.1).is_err());
        assert!(map_f(0.9, a.theta_end + 0.1).is_err());
    }

    #[test]
    fn jacobian_sign_and_fold() {
        assert!(jacobian_f(5.0 / 6.0, PI / 2.0).unwrap().abs() < 1e-12);
        let fold = j0_point(0.9).unwrap();
        assert!(jacobian_f(0.9, fold.theta).unwrap().abs() < 1e-12);
        assert!(jacobian_f(0.9, 0.3).unwrap() > 0.0);
        assert_eq!(DomainPoint::new(0.9, 0.3).unwrap().sheet, Sheet::D1);
        let end = arc_data(0.9).unwrap().theta_end;
        let beyond = 0.5 * (fold.theta + end);
        assert!(jacobian_f(0.9, beyond).unwrap() < 0.0);
        assert_eq!(DomainPoint::new(0.9, beyond).unwrap().sheet, Sheet::D2);
    }

    #[test]
    fn fold_curve_examples() {
        let start = j0_point(5.0 / 6.0).unwrap();
        assert!((start.theta - PI / 2.0).abs() < 1e-12);
        let end = j0_point(1.0).unwrap();
        // y'(1) = √2 - 2, c'(1) = 2√2, r'(1) = 4 - 2√2
        let d = derivatives(1.0).unwrap();
        assert!((d.dy - (2f64.sqrt() - 2.0)).abs() < 1e-12);
        assert!((d.dc - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((d.dr - (4.0 - 2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert!((end.theta - (1.0 - 2f64.sqrt()).acos()).abs() < 1e-12);
        let mid = j0_point(0.95).unwrap();
        assert!(start.theta < mid.theta && mid.theta < end.theta);
        assert!(j0_point(0.8).is_err());
        for x in [5.0 / 6.0, 0.9, 0.95, 1.0] {
            let p = j0_point(x).unwrap();
            assert!(p.theta <= arc_data(x).unwrap().theta_end + 1e-12);
        }
    }

    #[test]
    fn envelope_endpoints() {
        assert!(envelope_point(5.0 / 6.0).unwrap().distance(Point2::new(0.5, 8.0 / 9.0)) < 1e-12);
        let end = envelope_point(1.0).unwrap();
        assert!((end.x - (2.0 - 2f64.sqrt())).abs() < 1e-12);
        assert!((end.y - (2.0 * 2f64.sqrt() - 2.0).sqrt()).abs() < 1e-12);
        assert!(((end.x - 1.0).powi(2) + end.y.powi(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn arcs_satisfy_perpendicularity() {
        let a = arc_data(0.77).unwrap();
        for i in 0..=10 {
            let p = a.point_at(a.theta_end * i as f64 / 10.0);
            assert!(peq_residual(0.77, p.x, p.y).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn special_points() {
        let s = special_triangles();
        assert!((s.i2_apex_degrees - 58.72).abs() < 0.02);
        assert!((s.i1_apex_degrees - 65.53).abs() < 0.02);
        assert!(s.i2_reflection.distance(Point2::new(175.0 / 337.0, 288.0 / 337.0)) < 1e-12);
        assert!(s.i1.x >= 0.5);
    }

    #[test]
    fn membership_examples() {
        assert_eq!(in_fd2(equilateral_apex(), &tol()), Membership::Inside);
        // (175/337, 288/337) is the triangle whose inverse is I2; the point
        // itself lies on the unit circle Arc(√2/2) only.
        let c = Point2::new(175.0 / 337.0, 288.0 / 337.0);
        assert_eq!(
            in_fd2(invert_point(c, VERTEX_B, 1.0).unwrap(), &tol()),
            Membership::OnEnvelope
        );
        assert_eq!(incidence_roots(c, &tol()).len(), 1);
        assert_eq!(in_fd2(Point2::new(0.5, 8.0 / 9.0), &tol()), Membership::OnEnvelope);
        assert_eq!(in_fd2(Point2::new(1.0, 2.0), &tol()), Membership::Outside);
        assert_eq!(in_fd2(i1(), &tol()), Membership::OnEnvelope);
    }

    #[test]
    fn theorem_examples() {
        let eq = TriangleSpec::from_sides(1.0, 1.0, 1.0).unwrap();
        let r = count_via_theorem(&eq, &tol()).unwrap();
        assert_eq!(
            (r.theorem_case, r.count, r.oracle_count),
            (TheoremCase::Case1Three, 3, 3)
        );

        let i2 = TriangleSpec::canonical(0.5, 8.0 / 9.0).unwrap();
        let r = count_via_theorem(&i2, &tol()).unwrap();
        assert_eq!((r.theorem_case, r.count, r.oracle_count), (TheoremCase::Case2Two, 2, 2));
        assert!(r.boundary);

        let right = TriangleSpec::canonical(1.0, 0.5).unwrap();
        let r = count_via_theorem(&right, &tol()).unwrap();
        assert_eq!((r.theorem_case, r.count, r.oracle_count), (TheoremCase::Case3One, 1, 1));
    }

    #[test]
    fn i1_has_one_quadrisection() {
        let p = i1();
        let t = TriangleSpec::canonical(p.x, p.y).unwrap();
        let r = count_via_theorem(&t, &tol()).unwrap();
        assert_eq!(r.theorem_case, TheoremCase::Case3One);
        assert_eq!(r.oracle_count, 1, "{r:?}");
    }
}
