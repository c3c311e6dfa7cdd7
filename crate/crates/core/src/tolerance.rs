use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by the solver, the counting theorem and the
/// verification oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Largest accepted |residual| of the area or perpendicularity equation
    /// at a constructed solution.
    pub eq: f64,
    /// A residual sample (or interval endpoint) this close to zero is a root.
    pub root: f64,
    /// Largest |residual| at an interior extremum that is still reported
    /// as a tangential (double) root.
    pub tangent: f64,
    /// Relative deviation allowed between each region area and a quarter
    /// of the triangle.
    pub area: f64,
    /// Dot product of the segment directions, normalised by the squared
    /// longest side.
    pub perp: f64,
    /// Band around the isosceles circles and the line h = 1/2.
    pub region: f64,
    /// Band around the envelope used by the membership test.
    pub env: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eq: 1e-10,
            root: 1e-12,
            tangent: 1e-11,
            area: 1e-9,
            perp: 1e-9,
            region: 1e-9,
            env: 1e-8,
        }
    }
}

impl Tolerances {
    /// Multiplies every tolerance by `factor`.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            eq: self.eq * factor,
            root: self.root * factor,
            tangent: self.tangent * factor,
            area: self.area * factor,
            perp: self.perp * factor,
            region: self.region * factor,
            env: self.env * factor,
        }
    }

    pub fn is_valid(&self) -> bool {
        [
            self.eq,
            self.root,
            self.tangent,
            self.area,
            self.perp,
            self.region,
            self.env,
        ]
        .iter()
        .all(|t| t.is_finite() && *t > 0.0)
    }
}
