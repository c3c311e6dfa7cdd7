//! Classification of the space of triangles on a regular grid.
//!
//! The window is `h in [1/2, 2)`, `ht in (0, 1]`. Grid nodes sit at
//!
//! ```text
//! h_i  = 1/2 + 3/2 · i / nh,    i = 0 .. nh-1
//! ht_j = (j + 1) / nht,         j = 0 .. nht-1
//! ```
//!
//! and cell `(i, j)` is the rectangle `[h_i, h_i + dh) x (ht_j - dht, ht_j]`
//! represented by its node. Doubling the resolution keeps every node of the
//! coarser grid. Nodes outside `Υ` are still classified (every apex is a
//! triangle) but flagged with `in_upsilon = false`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcs::{separating_curve, theorem_count, CurveSample, TheoremCase};
use crate::geometry::{classify_region, upsilon_contains, Point2, RegionLabel, TriangleSpec};
use crate::{Error, Result, Tolerances};

pub const H_MIN: f64 = 0.5;
pub const H_MAX: f64 = 2.0;
pub const HT_MAX: f64 = 1.0;

/// Samples of the count-2 curve used to flag straddling cells.
const S2_FLAG_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtlasCell {
    pub i: usize,
    pub j: usize,
    pub h: f64,
    pub ht: f64,
    pub in_upsilon: bool,
    pub count: usize,
    pub theorem_case: TheoremCase,
    pub region: RegionLabel,
    /// The cell meets the count-2 curve, or the node sits on the envelope
    /// band of the counting theorem.
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtlasGrid {
    pub nh: usize,
    pub nht: usize,
    /// Row-major in `i`: `cells[i * nht + j]`.
    pub cells: Vec<AtlasCell>,
}

pub fn node_h(i: usize, nh: usize) -> f64 {
    H_MIN + (H_MAX - H_MIN) * i as f64 / nh as f64
}

pub fn node_ht(j: usize, nht: usize) -> f64 {
    HT_MAX * (j + 1) as f64 / nht as f64
}

/// Does the rectangle of cell `(h, ht)` come within reach of the curve?
fn straddles(curve: &CurveSample, h: f64, ht: f64, dh: f64, dht: f64) -> bool {
    let centre = Point2::new(h + 0.5 * dh, ht - 0.5 * dht);
    curve.distance_to(centre) <= 0.5 * dh.hypot(dht)
}

fn classify_cell(i: usize, j: usize, nh: usize, nht: usize, s2: &CurveSample, tol: &Tolerances) -> Result<AtlasCell> {
    let (h, ht) = (node_h(i, nh), node_ht(j, nht));
    let t = TriangleSpec::canonical(h, ht)?;
    let verdict = theorem_count(&t, tol)?;
    let dh = (H_MAX - H_MIN) / nh as f64;
    let dht = HT_MAX / nht as f64;
    Ok(AtlasCell {
        i,
        j,
        h,
        ht,
        in_upsilon: upsilon_contains(h, ht),
        count: verdict.count,
        theorem_case: verdict.case,
        region: classify_region(h, ht, tol.region)?,
        boundary: verdict.boundary || straddles(s2, h, ht, dh, dht),
    })
}

/// Classifies an `nh x nht` grid; cells are computed in parallel.
pub fn classify_grid(nh: usize, nht: usize, tol: &Tolerances) -> Result<AtlasGrid> {
    if nh < 2 || nht < 2 {
        return Err(Error::OutOfRange {
            name: "resolution",
            value: nh.min(nht) as f64,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    let s2 = separating_curve(S2_FLAG_SAMPLES);
    let cells = (0..nh * nht)
        .into_par_iter()
        .map(|k| classify_cell(k / nht, k % nht, nh, nht, &s2, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(AtlasGrid { nh, nht, cells })
}

impl AtlasGrid {
    pub fn cell(&self, i: usize, j: usize) -> &AtlasCell {
        &self.cells[i * self.nht + j]
    }

    pub fn cell_width(&self) -> f64 {
        (H_MAX - H_MIN) / self.nh as f64
    }

    pub fn cell_height(&self) -> f64 {
        HT_MAX / self.nht as f64
    }

    /// The cell whose rectangle contains `p`, if `p` is in the window.
    pub fn cell_containing(&self, p: Point2) -> Option<&AtlasCell> {
        if !(H_MIN..H_MAX).contains(&p.x) || !(p.y > 0.0 && p.y <= HT_MAX) {
            return None;
        }
        let i = (((p.x - H_MIN) / self.cell_width()).floor() as usize).min(self.nh - 1);
        let j = ((p.y / self.cell_height()).ceil() as usize).clamp(1, self.nht) - 1;
        Some(self.cell(i, j))
    }

    pub fn upsilon_cells(&self) -> impl Iterator<Item = &AtlasCell> {
        self.cells.iter().filter(|c| c.in_upsilon)
    }

    /// Fraction of the cells in `Υ` with the given count.
    pub fn count_fraction(&self, count: usize) -> f64 {
        let (hits, total) = self
            .upsilon_cells()
            .fold((0usize, 0usize), |(h, t), c| (h + usize::from(c.count == count), t + 1));
        if total == 0 {
            0.0
        } else {
            hits as f64 / total as f64
        }
    }

    /// Edge-connected components of the cells in `Υ` with the given count,
    /// each a sorted list of indices into `cells`.
    pub fn components(&self, count: usize) -> Vec<Vec<usize>> {
        self.flood(count, false)
    }

    /// Like [`components`](Self::components), but paths may also pass
    /// through boundary cells anywhere in the window: their rectangles meet
    /// the count-2 curve and so hold more than one count. Only cells in
    /// `Υ` with the given count are listed.
    ///
    /// Where a region thins out below the cell size its node samples fall
    /// apart on the lattice; this keeps them together.
    pub fn components_through_boundary(&self, count: usize) -> Vec<Vec<usize>> {
        self.flood(count, true)
    }

    fn flood(&self, count: usize, through_boundary: bool) -> Vec<Vec<usize>> {
        let member = |k: usize| self.cells[k].in_upsilon && self.cells[k].count == count;
        let passable = |k: usize| member(k) || (through_boundary && self.cells[k].boundary);
        let mut seen = vec![false; self.cells.len()];
        let mut out = Vec::new();
        for start in 0..self.cells.len() {
            if seen[start] || !member(start) {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut comp = Vec::new();
            while let Some(k) = queue.pop_front() {
                if member(k) {
                    comp.push(k);
                }
                let (i, j) = (k / self.nht, k % self.nht);
                let neighbours = [
                    (i > 0).then(|| k - self.nht),
                    (i + 1 < self.nh).then(|| k + self.nht),
                    (j > 0).then(|| k - 1),
                    (j + 1 < self.nht).then(|| k + 1),
                ];
                for n in neighbours.into_iter().flatten() {
                    if !seen[n] && passable(n) {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// CSV of the cells in `Υ`, header `h,ht,count,case,region`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,ht,count,case,region\n");
        for c in self.upsilon_cells() {
            writeln!(out, "{},{},{},{},{}", c.h, c.ht, c.count, c.theorem_case, c.region).expect("writing to a String");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::equilateral_apex;

    #[test]
    fn rejects_tiny_grids() {
        assert!(classify_grid(1, 10, &Tolerances::default()).is_err());
    }

    #[test]
    fn nodes_are_shared_under_refinement() {
        for i in 0..50 {
            assert_eq!(node_h(i, 50), node_h(2 * i, 100));
        }
        for j in 0..50 {
            assert_eq!(node_ht(j, 50), node_ht(2 * j + 1, 100));
        }
    }

    #[test]
    fn coarse_grid_examples() {
        let grid = classify_grid(60, 60, &Tolerances::default()).unwrap();
        assert_eq!(grid.cell_containing(equilateral_apex()).unwrap().count, 3);
        assert_eq!(grid.cell_containing(Point2::new(1.0, 0.5)).unwrap().count, 1);
        assert!(grid.upsilon_cells().all(|c| (1..=3).contains(&c.count)));
        assert!(grid.count_fraction(1) > 0.9);
    }

    #[test]
    fn cell_lookup_uses_the_cell_rectangle() {
        let grid = AtlasGrid {
            nh: 3,
            nht: 2,
            cells: (0..6)
                .map(|k| AtlasCell {
                    i: k / 2,
                    j: k % 2,
                    h: node_h(k / 2, 3),
                    ht: node_ht(k % 2, 2),
                    in_upsilon: true,
                    count: 1,
                    theorem_case: TheoremCase::Case3One,
                    region: RegionLabel::R2,
                    boundary: false,
                })
                .collect(),
        };
        let c = grid.cell_containing(Point2::new(1.2, 0.25)).unwrap();
        assert_eq!((c.i, c.j), (1, 0));
        let c = grid.cell_containing(Point2::new(0.5, 1.0)).unwrap();
        assert_eq!((c.i, c.j), (0, 1));
        assert!(grid.cell_containing(Point2::new(2.0, 0.5)).is_none());
        assert!(grid.cell_containing(Point2::new(1.0, 0.0)).is_none());
    }

    #[test]
    fn csv_has_the_documented_header() {
        let grid = classify_grid(8, 8, &Tolerances::default()).unwrap();
        let csv = grid.to_csv();
        assert!(csv.starts_with("h,ht,count,case,region\n"));
        assert_eq!(csv.lines().count(), 1 + grid.upsilon_cells().count());
        assert!(grid.to_json().starts_with("{\"nh\":8,\"nht\":8,\"cells\":["));
    }
}
