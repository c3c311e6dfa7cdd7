//! Subcommands and the documents they emit.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use quadrisect::arcs::FOLD_X_MIN;
use quadrisect::atlas::classify_grid;
use quadrisect::historical::{bernoulli_compare, euler_solve, HistoricalResult, PrintedComparison};
use quadrisect::solver::verify_segments;
use quadrisect::svg::{render_quadrisection_svg, render_space_svg, RenderSpec};
use quadrisect::{
    arc_data, count_via_theorem, enumerate_quadrisections, envelope_point, j0_point, ArcData, CountReport, DomainPoint,
    Point2, Quadrisection, SideRole, Tolerances, TriangleSpec, VerificationReport,
};
use serde::{Deserialize, Serialize};

use crate::args::{Command, Method};

pub const SCHEMA: u32 = 1;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable input, unwritable output.
    Input(String),
}

impl From<quadrisect::Error> for CliError {
    fn from(e: quadrisect::Error) -> Self {
        Self::Input(e.to_string())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

/// A finished command: its document and, if a check failed, why.
pub struct Outcome {
    pub document: Document,
    pub failure: Option<String>,
}

impl From<Document> for Outcome {
    fn from(document: Document) -> Self {
        Self {
            document,
            failure: None,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Document {
    Solve(SolveDocument),
    Count(CountDocument),
    Atlas(AtlasDocument),
    Arcs(ArcsDocument),
    Historical(HistoricalDocument),
    Verify(VerifyDocument),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveItem {
    pub base_placement: SideRole,
    /// Apex of the placement in canonical position.
    pub canonical: Point2,
    pub x: f64,
    pub y: f64,
    pub tangential: bool,
    /// `[X, P]` and `[Y, Q]` in input coordinates.
    pub segments: [[Point2; 2]; 2],
    #[serde(rename = "O")]
    pub o: Point2,
    pub region_areas: [f64; 4],
    pub aeq_residual: f64,
    pub peq_residual: f64,
    pub verification: VerificationReport,
}

impl From<&Quadrisection> for SolveItem {
    fn from(q: &Quadrisection) -> Self {
        Self {
            base_placement: q.base_placement,
            canonical: q.canonical,
            x: q.solution.x,
            y: q.solution.y,
            tangential: q.tangential,
            segments: q.segments_original,
            o: q.intersection_original,
            region_areas: q.region_areas,
            aeq_residual: q.solution.aeq_residual,
            peq_residual: q.solution.peq_residual,
            verification: q.verification,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveDocument {
    pub schema: u32,
    pub command: String,
    pub sides: [f64; 3],
    pub tolerances: Tolerances,
    pub count: usize,
    pub quadrisections: Vec<SolveItem>,
}

#[derive(Debug, Serialize)]
pub struct CountDocument {
    pub schema: u32,
    pub command: &'static str,
    pub sides: [f64; 3],
    #[serde(flatten)]
    pub report: CountReport,
}

#[derive(Debug, Serialize)]
pub struct AtlasFiles {
    pub svg: PathBuf,
    pub csv: PathBuf,
    pub json: PathBuf,
}

#[derive(Debug, Serialize)]
pub struct AtlasDocument {
    pub schema: u32,
    pub command: &'static str,
    pub resolution: usize,
    pub files: AtlasFiles,
    pub upsilon_cells: usize,
    /// Fraction of the cells in the triangle space with 1, 2 and 3.
    pub count_fractions: [f64; 3],
    /// Cells of each count-3 patch, joined through cells on the count-2 curve.
    pub count3_patches: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ArcsDocument {
    pub schema: u32,
    pub command: &'static str,
    pub arc: ArcData,
    /// Fold point and envelope point, for `x` where the arc folds.
    pub fold: Option<DomainPoint>,
    pub envelope: Option<Point2>,
}

#[derive(Debug, Serialize)]
pub struct HistoricalDocument {
    pub schema: u32,
    pub command: &'static str,
    pub sides: [f64; 3],
    #[serde(flatten)]
    pub result: HistoricalResult,
    pub printed: Option<PrintedComparison>,
}

#[derive(Debug, Serialize)]
pub struct VerifyItem {
    pub index: usize,
    pub report: VerificationReport,
    /// For saved solutions: the recomputed report equals the saved one.
    pub reproduced: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyDocument {
    pub schema: u32,
    pub command: &'static str,
    pub sides: [f64; 3],
    pub source: &'static str,
    pub theorem_count: usize,
    pub oracle_count: usize,
    /// Number of quadrisections in the saved document, if any.
    pub saved_count: Option<usize>,
    pub checks: Vec<VerifyItem>,
    pub pass: bool,
}

pub fn run(command: &Command, tol: &Tolerances) -> Result<Outcome, CliError> {
    match command {
        Command::Solve { sides, svg } => solve(sides.sides, svg.as_deref(), tol),
        Command::Count { sides } => count(sides.sides, tol),
        Command::Atlas { resolution, out } => atlas(*resolution as usize, out, tol),
        Command::Arcs { x } => arcs(*x),
        Command::Historical { method, sides, printed } => historical(*method, sides.sides, *printed, tol),
        Command::Verify { source } => match (&source.sides, &source.input) {
            (Some(sides), _) => verify_sides(*sides, tol),
            (None, Some(path)) => verify_file(path),
            (None, None) => Err(CliError::Input("verify needs --sides or --input".into())),
        },
    }
}

fn triangle(sides: [f64; 3]) -> Result<TriangleSpec, CliError> {
    Ok(TriangleSpec::from_sides(sides[0], sides[1], sides[2])?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn solve(sides: [f64; 3], svg: Option<&Path>, tol: &Tolerances) -> Result<Outcome, CliError> {
    let t = triangle(sides)?;
    let qs = enumerate_quadrisections(&t, tol)?;
    if let Some(path) = svg {
        write_file(path, &render_quadrisection_svg(&t, &qs, &RenderSpec::default()))?;
    }
    let doc = SolveDocument {
        schema: SCHEMA,
        command: "solve".into(),
        sides,
        tolerances: *tol,
        count: qs.len(),
        quadrisections: qs.iter().map(SolveItem::from).collect(),
    };
    let failing: Vec<usize> = doc
        .quadrisections
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.verification.pass)
        .map(|(k, _)| k)
        .collect();
    Ok(Outcome {
        document: Document::Solve(doc),
        failure: (!failing.is_empty()).then(|| format!("quadrisections {failing:?} fail verification")),
    })
}

fn count(sides: [f64; 3], tol: &Tolerances) -> Result<Outcome, CliError> {
    let report = count_via_theorem(&triangle(sides)?, tol)?;
    Ok(Document::Count(CountDocument {
        schema: SCHEMA,
        command: "count",
        sides,
        report,
    })
    .into())
}

fn atlas(n: usize, out: &Path, tol: &Tolerances) -> Result<Outcome, CliError> {
    let grid = classify_grid(n, n, tol)?;
    let files = AtlasFiles {
        svg: out.to_path_buf(),
        csv: out.with_extension("csv"),
        json: out.with_extension("json"),
    };
    write_file(&files.svg, &render_space_svg(&grid, &RenderSpec::default()))?;
    write_file(&files.csv, &grid.to_csv())?;
    write_file(&files.json, &grid.to_json())?;
    Ok(Document::Atlas(AtlasDocument {
        schema: SCHEMA,
        command: "atlas",
        resolution: n,
        files,
        upsilon_cells: grid.upsilon_cells().count(),
        count_fractions: [1, 2, 3].map(|k| grid.count_fraction(k)),
        count3_patches: grid.components_through_boundary(3).iter().map(Vec::len).collect(),
    })
    .into())
}

fn arcs(x: f64) -> Result<Outcome, CliError> {
    let arc = arc_data(x)?;
    let folds = x >= FOLD_X_MIN;
    Ok(Document::Arcs(ArcsDocument {
        schema: SCHEMA,
        command: "arcs",
        arc,
        fold: folds.then(|| j0_point(x)).transpose()?,
        envelope: folds.then(|| envelope_point(x)).transpose()?,
    })
    .into())
}

fn historical(method: Method, sides: [f64; 3], printed: Option<f64>, tol: &Tolerances) -> Result<Outcome, CliError> {
    let t = triangle(sides)?;
    let (result, printed) = match method {
        Method::Bernoulli => {
            let cmp = bernoulli_compare(&t, tol)?;
            let near = printed.and_then(|p| {
                cmp.nearest_match(p).map(|m| PrintedComparison {
                    printed: p,
                    computed: m.root_original,
                    deviation: (m.root_original - p).abs(),
                })
            });
            (HistoricalResult::Bernoulli(cmp), near)
        }
        Method::Euler => {
            let sol = euler_solve(&t, tol)?;
            let near = printed.and_then(|p| sol.compare_printed(p));
            (HistoricalResult::Euler(sol), near)
        }
    };
    Ok(Document::Historical(HistoricalDocument {
        schema: SCHEMA,
        command: "historical",
        sides,
        result,
        printed,
    })
    .into())
}

fn verify_outcome(doc: VerifyDocument) -> Outcome {
    let failure = (!doc.pass).then(|| {
        let bad: Vec<usize> = doc.checks.iter().filter(|c| !c.pass).map(|c| c.index).collect();
        let mut msg = format!(
            "verification failed: theorem {} vs enumeration {}",
            doc.theorem_count, doc.oracle_count
        );
        if let Some(saved) = doc.saved_count {
            let _ = write!(msg, " vs saved {saved}");
        }
        if !bad.is_empty() {
            let _ = write!(msg, "; failing quadrisections {bad:?}");
        }
        msg
    });
    Outcome {
        document: Document::Verify(doc),
        failure,
    }
}

fn verify_sides(sides: [f64; 3], tol: &Tolerances) -> Result<Outcome, CliError> {
    let t = triangle(sides)?;
    let report = count_via_theorem(&t, tol)?;
    let checks: Vec<VerifyItem> = enumerate_quadrisections(&t, tol)?
        .iter()
        .enumerate()
        .map(|(index, q)| VerifyItem {
            index,
            report: q.verification,
            reproduced: None,
            pass: q.verification.pass,
        })
        .collect();
    let pass = report.agrees() && checks.iter().all(|c| c.pass);
    Ok(verify_outcome(VerifyDocument {
        schema: SCHEMA,
        command: "verify",
        sides,
        source: "sides",
        theorem_count: report.count,
        oracle_count: report.oracle_count,
        saved_count: None,
        checks,
        pass,
    }))
}

/// Re-verifies a saved `solve` document under the tolerances it was
/// solved with, so the reports can be compared exactly.
fn verify_file(path: &Path) -> Result<Outcome, CliError> {
    let raw = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let saved: SolveDocument = serde_json::from_str(&raw)
        .map_err(|e| CliError::Input(format!("{}: not a solve document: {e}", path.display())))?;
    if saved.schema != SCHEMA || saved.command != "solve" {
        return Err(CliError::Input(format!(
            "{}: expected a schema {SCHEMA} solve document, got schema {} command `{}`",
            path.display(),
            saved.schema,
            saved.command
        )));
    }
    if !saved.tolerances.is_valid() {
        return Err(CliError::Input(format!(
            "{}: tolerances must be positive",
            path.display()
        )));
    }
    let tol = saved.tolerances;
    let t = triangle(saved.sides)?;
    let report = count_via_theorem(&t, &tol)?;
    let checks: Vec<VerifyItem> = saved
        .quadrisections
        .iter()
        .enumerate()
        .map(|(index, q)| {
            let report = verify_segments(&t, &q.segments, &tol);
            let reproduced = report == q.verification;
            VerifyItem {
                index,
                report,
                reproduced: Some(reproduced),
                pass: report.pass && reproduced,
            }
        })
        .collect();
    let n = saved.quadrisections.len();
    let pass = report.agrees() && n == report.oracle_count && saved.count == n && checks.iter().all(|c| c.pass);
    Ok(verify_outcome(VerifyDocument {
        schema: SCHEMA,
        command: "verify",
        sides: saved.sides,
        source: "input",
        theorem_count: report.count,
        oracle_count: report.oracle_count,
        saved_count: Some(n),
        checks,
        pass,
    }))
}

fn fmt_point(p: Point2) -> String {
    format!("({:.9}, {:.9})", p.x, p.y)
}

fn fmt_sides(s: [f64; 3]) -> String {
    format!("{}, {}, {}", s[0], s[1], s[2])
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents are plain data");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        // writing into a String cannot fail
        let w = &mut out;
        match self {
            Document::Solve(d) => {
                let _ = writeln!(w, "triangle {}: {} quadrisection(s)", fmt_sides(d.sides), d.count);
                for (k, q) in d.quadrisections.iter().enumerate() {
                    let _ = writeln!(w, "[{k}] base {}  x = {:.12}  y = {:.12}", q.base_placement, q.x, q.y);
                    let _ = writeln!(
                        w,
                        "    X {}  P {}",
                        fmt_point(q.segments[0][0]),
                        fmt_point(q.segments[0][1])
                    );
                    let _ = writeln!(
                        w,
                        "    Y {}  Q {}",
                        fmt_point(q.segments[1][0]),
                        fmt_point(q.segments[1][1])
                    );
                    let _ = writeln!(w, "    O {}", fmt_point(q.o));
                    let _ = writeln!(
                        w,
                        "    areas {:.12?}  perp {:.2e}  {}",
                        q.region_areas,
                        q.verification.perpendicularity,
                        if q.verification.pass { "ok" } else { "FAIL" }
                    );
                }
            }
            Document::Count(d) => {
                let r = &d.report;
                let _ = writeln!(w, "triangle {}: {} quadrisection(s)", fmt_sides(d.sides), r.count);
                let _ = writeln!(w, "theorem case {}, enumeration {}", r.theorem_case, r.oracle_count);
                let _ = writeln!(
                    w,
                    "apex {}  inverse {}  {:?}",
                    fmt_point(r.canonical),
                    fmt_point(r.inverse),
                    r.membership
                );
                for p in &r.per_placement_roots {
                    let _ = writeln!(w, "  base {}: {} root(s)", p.placement, p.roots);
                }
            }
            Document::Atlas(d) => {
                let _ = writeln!(
                    w,
                    "atlas {0}x{0}: {1} cells in the triangle space",
                    d.resolution, d.upsilon_cells
                );
                for (k, f) in d.count_fractions.iter().enumerate() {
                    let _ = writeln!(w, "  count {}: {:.6}", k + 1, f);
                }
                let _ = writeln!(w, "  count-3 patches: {:?}", d.count3_patches);
                let _ = writeln!(
                    w,
                    "wrote {}, {}, {}",
                    d.files.svg.display(),
                    d.files.csv.display(),
                    d.files.json.display()
                );
            }
            Document::Arcs(d) => {
                let a = &d.arc;
                let _ = writeln!(w, "x = {}  y = {:.12}", a.x, a.y);
                let _ = writeln!(w, "center ({:.12}, 0)  radius {:.12}", a.c, a.r);
                let _ = writeln!(w, "ends at theta {:.12}, point (0.5, {:.12})", a.theta_end, a.z);
                if let (Some(f), Some(e)) = (d.fold, d.envelope) {
                    let _ = writeln!(w, "fold at theta {:.12}, envelope point {}", f.theta, fmt_point(e));
                }
            }
            Document::Historical(d) => {
                match &d.result {
                    HistoricalResult::Bernoulli(b) => {
                        let _ = writeln!(w, "Bernoulli, triangle {}", fmt_sides(d.sides));
                        let _ = writeln!(w, "real roots {:?}", b.real_roots);
                        for m in &b.matches {
                            let _ = writeln!(
                                w,
                                "  root {:.9} ({:.6} in input units)  deviation {:.2e}  {}",
                                m.root,
                                m.root_original,
                                m.deviation,
                                if m.matched { "matched" } else { "unmatched" }
                            );
                        }
                        let _ = writeln!(w, "extraneous {:?}", b.extraneous);
                    }
                    HistoricalResult::Euler(e) => {
                        let _ = writeln!(w, "Euler, triangle {}", fmt_sides(d.sides));
                        for r in &e.roots {
                            let _ = writeln!(
                                w,
                                "  t = {:.9}  AX = {:.9}  YB = {:.9}  {}",
                                r.t,
                                r.x,
                                r.y,
                                if r.matched { "matched" } else { "unmatched" }
                            );
                        }
                    }
                }
                if let Some(p) = d.printed {
                    let _ = writeln!(
                        w,
                        "printed {} vs computed {:.9}: deviation {:.3e}",
                        p.printed, p.computed, p.deviation
                    );
                }
            }
            Document::Verify(d) => {
                let _ = writeln!(
                    w,
                    "triangle {}: theorem {}, enumeration {}{}",
                    fmt_sides(d.sides),
                    d.theorem_count,
                    d.oracle_count,
                    d.saved_count.map(|n| format!(", saved {n}")).unwrap_or_default()
                );
                for c in &d.checks {
                    let _ = writeln!(
                        w,
                        "  [{}] area dev {:.2e}  perp {:.2e}  {}",
                        c.index,
                        c.report.max_area_deviation,
                        c.report.perpendicularity,
                        if c.pass { "ok" } else { "FAIL" }
                    );
                }
                let _ = writeln!(w, "{}", if d.pass { "pass" } else { "FAIL" });
            }
        }
        out
    }
}
