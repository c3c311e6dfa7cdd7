//! The 1687 and 1779 solutions.
//!
//! Bernoulli labels the triangle `AC = a`, `CB = b`, `BA = c` and puts the
//! triangular part on `AC`. With `a = 1` his unknown `x = CD` is the
//! distance of the foot `Y` from `C`, i.e. our `y` when his `A` and `C`
//! play our `A` and `B`. Eliminating the other unknown from his two
//! equations leaves a monic polynomial of degree 8 in `x`.
//!
//! Euler puts the triangular part on the middle side `AB`, writes
//! `AX = x`, `YB = y`, `f = cot α`, `g = cot β`, `t = tan φ` with `φ` the
//! angle `AXP`, and shows `x = k √(f + 1/t)`, `y = k √(g + t)` where `k²`
//! is the area. `t` solves
//!
//! ```text
//! √(f + 1/t) + √(g + t) - √(2 (f + g)) = √((1 + t²) / (2t)).
//! ```

use serde::{Deserialize, Serialize};

use crate::geometry::{canonicalize, side_placements, TriangleSpec, VERTEX_A};
use crate::roots::{bisect, scan_roots, ScanOptions};
use crate::solver::{solve_base, y_raw, BaseSolution, X_MAX, X_MIN};
use crate::{Error, Result, Tolerances};

/// A real polynomial, coefficients from the highest degree down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coefficients: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<f64>) -> Self {
        while coefficients.len() > 1 && coefficients[0] == 0.0 {
            coefficients.remove(0);
        }
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        Self { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().fold(0.0, |acc, c| acc * x + c)
    }

    /// Bound on the rounding error of [`Polynomial::eval`] at `x`.
    fn eval_error(&self, x: f64) -> f64 {
        let mag = self.coefficients.iter().fold(0.0, |acc, c| acc * x.abs() + c.abs());
        4.0 * (self.degree() as f64 + 1.0) * f64::EPSILON * mag
    }

    pub fn derivative(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::new(vec![0.0]);
        }
        Self::new(
            self.coefficients[..n]
                .iter()
                .enumerate()
                .map(|(i, c)| c * (n - i) as f64)
                .collect(),
        )
    }

    /// Cauchy's bound on the magnitude of every root.
    pub fn root_bound(&self) -> f64 {
        let lead = self.coefficients[0];
        1.0 + self.coefficients[1..]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max)
    }

    /// Real roots in `[lo, hi]`, in increasing order. The roots of the
    /// derivative split the interval into monotone pieces, each holding at
    /// most one root; a critical point where the polynomial vanishes to
    /// rounding accuracy is a multiple root.
    pub fn real_roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let n = self.degree();
        if n == 0 || lo > hi {
            return Vec::new();
        }
        if n == 1 {
            let r = -self.coefficients[1] / self.coefficients[0];
            return if (lo..=hi).contains(&r) { vec![r] } else { Vec::new() };
        }
        let critical = self.derivative().real_roots_in(lo, hi);
        let mut knots = Vec::with_capacity(critical.len() + 2);
        knots.push(lo);
        knots.extend(critical.iter().copied().filter(|c| *c > lo && *c < hi));
        knots.push(hi);

        let f = |x: f64| self.eval(x);
        let vanishes = |x: f64| self.eval(x).abs() <= self.eval_error(x);
        let mut roots: Vec<f64> = Vec::new();
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (f(a), f(b));
            if vanishes(a) {
                roots.push(a);
            } else if !vanishes(b) && (fa < 0.0) != (fb < 0.0) {
                roots.push(bisect(&f, a, b, fa, 0.0));
            }
        }
        if vanishes(hi) {
            roots.push(hi);
        }
        roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        roots
    }

    pub fn real_roots(&self) -> Vec<f64> {
        let bound = self.root_bound();
        self.real_roots_in(-bound, bound)
    }
}

/// Bernoulli's normalised polynomial: monic, degree 8.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Degree8Poly {
    pub coefficients: [f64; 9],
}

impl Degree8Poly {
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coefficients.to_vec())
    }
}

fn check_triangle(a: f64, b: f64, c: f64) -> Result<()> {
    TriangleSpec::from_sides(a, b, c).map(|_| ())
}

/// Bernoulli's degree-8 polynomial for `a = 1` and sides `b = CB`, `c = BA`.
pub fn bernoulli_polynomial(b: f64, c: f64) -> Result<Degree8Poly> {
    check_triangle(1.0, b, c)?;
    let (b2, c2) = (b * b, c * c);
    let (b4, c4, bc) = (b2 * b2, c2 * c2, b2 * c2);
    Ok(Degree8Poly {
        coefficients: [
            1.0,
            -8.0,
            3.0 * b2 - 3.0 * c2 + 17.0,
            -2.0 * (b2 - c2 + 5.0),
            -0.25 * (3.0 * b4 - 6.0 * bc + 3.0 * c4 + 38.0 * b2 - 24.0 * c2 + 17.0),
            b4 - 2.0 * bc + c4 + 12.0 * b2 - 6.0 * c2 + 5.0,
            0.25 * (4.0 * b4 - 5.0 * bc + c4 - 7.0 * b2 - 1.0),
            -0.5 * (4.0 * b4 - 5.0 * bc + c4 + 5.0 * b2 - 2.0 * c2 + 1.0),
            0.75 * b4 - 0.75 * bc + 0.75 * b2 - 0.125 * c2 + 0.0625 * c4 + 0.0625,
        ],
    })
}

/// `p(x / a) · a` for the polynomial of the triangle `(a, b, c)`.
pub fn bernoulli_check_value(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    check_triangle(a, b, c)?;
    Ok(bernoulli_polynomial(b / a, c / a)?.eval(x / a) * a)
}

/// Bernoulli's area equation with `a = 1`, in his variables:
/// `y² - (4y - 4xy - 5/2 + 4x - x²)`.
pub fn bernoulli_area_residual(bx: f64, by: f64) -> f64 {
    by * by - (4.0 * by - 4.0 * bx * by - 2.5 + 4.0 * bx - bx * bx)
}

/// Bernoulli's perpendicularity equation with `a = 1`, taking the `+`
/// sign in `± a f / 2` and the `-` sign in `4x² ± 2ae`:
/// `y² - (f/2 + d² / (4x² - 2e))`.
pub fn bernoulli_perpendicularity_residual(bx: f64, by: f64, h: f64, ht: f64) -> f64 {
    let (d, e, f) = (ht, 1.0 - h, h);
    by * by - (0.5 * f + d * d / (4.0 * bx * bx - 2.0 * e))
}

/// Which base coordinate of the solver a Bernoulli root reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverCoordinate {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BernoulliMatch {
    /// Root of the normalised polynomial.
    pub root: f64,
    /// The root in the units of the input (`root · a`).
    pub root_original: f64,
    /// Nearest distance of a foot from Bernoulli's `C`, normalised.
    pub solver_value: f64,
    pub coordinate: SolverCoordinate,
    pub deviation: f64,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernoulliComparison {
    /// `AC`, `CB`, `BA` in the input units.
    pub sides: [f64; 3],
    pub polynomial: Degree8Poly,
    /// Every real root of the normalised polynomial.
    pub real_roots: Vec<f64>,
    /// Roots in the base range, each paired with the solver.
    pub matches: Vec<BernoulliMatch>,
    /// Real roots that correspond to no quadrisection on `AC`.
    pub extraneous: Vec<f64>,
    /// Base coordinates `(x, y)` of the quadrisections on `AC`.
    pub solver_solutions: Vec<(f64, f64)>,
}

/// Agreement needed between a polynomial root and a solver coordinate.
pub const BERNOULLI_MATCH_TOL: f64 = 1e-6;

/// Slack on the base range when collecting admissible roots, so that the
/// endpoint roots of the equilateral triangle are kept.
const ADMISSIBLE_SLACK: f64 = 1e-9;

/// Solves Bernoulli's polynomial for the triangle with `V0V1` as `AC`,
/// `V1V2` as `CB` and `V2V0` as `BA`, and matches its roots against the
/// quadrisections on `AC`.
pub fn bernoulli_compare(t: &TriangleSpec, tol: &Tolerances) -> Result<BernoulliComparison> {
    let [a, b, c] = t.side_lengths();
    let polynomial = bernoulli_polynomial(b / a, c / a)?;
    let real_roots = polynomial.to_polynomial().real_roots();

    // Bernoulli's A is V0 and his C is V1. The placement may swap them.
    let ct = side_placements(t)?[0];
    let v0 = t.vertices()[0];
    let swapped = ct.to_original(VERTEX_A).distance(v0) > 1e-9 * t.longest_side();
    let coordinate = if swapped {
        SolverCoordinate::X
    } else {
        SolverCoordinate::Y
    };
    let solver_solutions: Vec<(f64, f64)> = solve_base(ct.h, ct.ht, tol).iter().map(|r| (r.x, y_raw(r.x))).collect();
    let from_c = |s: &(f64, f64)| if swapped { s.0 } else { s.1 };

    let mut matches = Vec::new();
    let mut extraneous = Vec::new();
    for &root in &real_roots {
        let admissible = (X_MIN - ADMISSIBLE_SLACK..=X_MAX + ADMISSIBLE_SLACK).contains(&root);
        let nearest = solver_solutions
            .iter()
            .map(from_c)
            .min_by(|p, q| (p - root).abs().total_cmp(&(q - root).abs()));
        match nearest {
            Some(v) if admissible => {
                let deviation = (v - root).abs();
                let matched = deviation <= BERNOULLI_MATCH_TOL;
                if !matched {
                    extraneous.push(root);
                }
                matches.push(BernoulliMatch {
                    root,
                    root_original: root * a,
                    solver_value: v,
                    coordinate,
                    deviation,
                    matched,
                });
            }
            _ => extraneous.push(root),
        }
    }
    Ok(BernoulliComparison {
        sides: [a, b, c],
        polynomial,
        real_roots,
        matches,
        extraneous,
        solver_solutions,
    })
}

impl BernoulliComparison {
    /// The matched root, in input units, nearest to `printed`.
    pub fn nearest_match(&self, printed: f64) -> Option<&BernoulliMatch> {
        self.matches.iter().filter(|m| m.matched).min_by(|p, q| {
            (p.root_original - printed)
                .abs()
                .total_cmp(&(q.root_original - printed).abs())
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerParams {
    /// `cot α`.
    pub f: f64,
    /// `cot β`.
    pub g: f64,
    /// Area of the triangle.
    pub ksq: f64,
}

fn radicand(term: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value.sqrt())
    } else {
        Err(Error::NegativeRadicand { term, value })
    }
}

/// Left side minus right side of Euler's equation.
pub fn euler_residual(t: f64, p: &EulerParams) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let lhs =
        radicand("f + 1/t", p.f + 1.0 / t)? + radicand("g + t", p.g + t)? - radicand("2(f + g)", 2.0 * (p.f + p.g))?;
    let rhs = radicand("(1 + t²)/(2t)", (1.0 + t * t) / (2.0 * t))?;
    Ok(lhs - rhs)
}

/// `tan` of the angle `AXP` of a canonical solution for apex `(h, ht)`.
pub fn euler_t(sol: &BaseSolution, h: f64, ht: f64) -> f64 {
    sol.s * ht / (sol.x - sol.s * h)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerRoot {
    pub t: f64,
    pub residual: f64,
    /// `AX` in input units.
    pub x: f64,
    /// `YB` in input units.
    pub y: f64,
    /// Relative distance to the nearest solver solution.
    pub deviation: f64,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerSolution {
    pub params: EulerParams,
    /// Length of the middle side `AB`.
    pub base_length: f64,
    pub roots: Vec<EulerRoot>,
    /// `(AX, YB)` of the solver's quadrisections on `AB`, in input units.
    pub solver_solutions: Vec<(f64, f64)>,
}

/// A value printed in a historical source next to the recomputed one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrintedComparison {
    pub printed: f64,
    pub computed: f64,
    pub deviation: f64,
}

impl EulerSolution {
    /// Compares a printed `x` with the nearest matched root.
    pub fn compare_printed(&self, printed: f64) -> Option<PrintedComparison> {
        self.roots
            .iter()
            .filter(|r| r.matched)
            .map(|r| PrintedComparison {
                printed,
                computed: r.x,
                deviation: (r.x - printed).abs(),
            })
            .min_by(|p, q| p.deviation.total_cmp(&q.deviation))
    }
}

/// Largest `t` scanned.
pub const EULER_T_MAX: f64 = 64.0;
const EULER_T_MIN: f64 = 1e-6;
/// Relative agreement between an Euler root and a solver solution.
pub const EULER_MATCH_TOL: f64 = 1e-8;

/// Solves Euler's equation with the middle side as `AB`.
pub fn euler_solve(t: &TriangleSpec, tol: &Tolerances) -> Result<EulerSolution> {
    let ct = canonicalize(t)?;
    let params = EulerParams {
        f: ct.h / ct.ht,
        g: (1.0 - ct.h) / ct.ht,
        ksq: t.area(),
    };
    let base_length = ct.transform.scale();
    let k = params.ksq.sqrt();

    // the radicands restrict t to [-g, -1/f] when g or f is negative
    let mut lo = EULER_T_MIN;
    let mut hi = EULER_T_MAX;
    if params.g < 0.0 {
        lo = lo.max(-params.g);
    }
    if params.f < 0.0 {
        hi = hi.min(-1.0 / params.f);
    }

    let solver_solutions: Vec<(f64, f64)> = solve_base(ct.h, ct.ht, tol)
        .iter()
        .map(|r| (r.x * base_length, y_raw(r.x) * base_length))
        .collect();

    let mut roots = Vec::new();
    if lo < hi {
        let opts = ScanOptions {
            samples: 4096,
            xtol: 1e-14,
            zero_tol: tol.root,
            tangent_tol: tol.tangent,
        };
        let residual = |s: f64| euler_residual(s.exp(), &params).unwrap_or(f64::NAN);
        for r in scan_roots(residual, lo.ln(), hi.ln(), &opts) {
            let tv = r.x.exp();
            let x = k * (params.f + 1.0 / tv).max(0.0).sqrt();
            let y = k * (params.g + tv).max(0.0).sqrt();
            let deviation = solver_solutions
                .iter()
                .map(|(sx, sy)| (sx - x).abs().max((sy - y).abs()) / base_length)
                .fold(f64::INFINITY, f64::min);
            roots.push(EulerRoot {
                t: tv,
                residual: euler_residual(tv, &params).unwrap_or(f64::NAN),
                x,
                y,
                deviation,
                matched: deviation <= EULER_MATCH_TOL,
            });
        }
    }
    Ok(EulerSolution {
        params,
        base_length,
        roots,
        solver_solutions,
    })
}

/// Either historical computation, for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum HistoricalResult {
    Bernoulli(BernoulliComparison),
    Euler(EulerSolution),
}
