//! Root isolation for smooth scalar functions on a closed interval.
//!
//! The interval is sampled uniformly; sign changes between neighbouring
//! samples are refined by bisection. Local extrema of the samples are
//! refined by golden-section search, which exposes pairs of roots hidden
//! between two samples and tangential (double) roots that never change
//! sign.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Number of uniform subintervals.
    pub samples: usize,
    /// Bisection stops once the bracket is this narrow.
    pub xtol: f64,
    /// A sample, or an interval endpoint, with |f| at most this is a root.
    pub zero_tol: f64,
    /// An interior extremum with |f| at most this is a tangential root.
    pub tangent_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            samples: 2048,
            xtol: 1e-14,
            zero_tol: 1e-12,
            tangent_tol: 1e-11,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub x: f64,
    /// Function value at `x`.
    pub value: f64,
    /// Touches zero without crossing, to within the tangent tolerance.
    pub tangential: bool,
    /// Lies on an end of the scanned interval.
    pub endpoint: bool,
}

/// Bisection on a bracket with `fa * fb < 0`.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64, xtol: f64) -> f64 {
    while b - a > xtol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Golden-section search for the minimum (or maximum) of a unimodal
/// function on `[a, b]`.
pub fn golden_extremum<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, minimize: bool) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let g = |x: f64| if minimize { f(x) } else { -f(x) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..200 {
        if b - a <= 4.0 * f64::EPSILON * (a.abs() + b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

fn opposite(a: f64, b: f64) -> bool {
    (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)
}

/// All roots of `f` on `[lo, hi]`, sorted, with near-coincident roots
/// merged.
pub fn scan_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, opts: &ScanOptions) -> Vec<Root> {
    scan(&f, None, lo, hi, opts)
}

/// [`scan_roots`] with the derivative `df` available: tangential roots are
/// relocated to the sign change of `df`, which is a simple root and so
/// converges to full precision where the extremum search of `f` cannot.
pub fn scan_roots_with_slope<F, D>(f: F, df: D, lo: f64, hi: f64, opts: &ScanOptions) -> Vec<Root>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    scan(&f, Some(&df), lo, hi, opts)
}

fn scan(f: &dyn Fn(f64) -> f64, df: Option<&dyn Fn(f64) -> f64>, lo: f64, hi: f64, opts: &ScanOptions) -> Vec<Root> {
    assert!(lo < hi && opts.samples >= 2, "invalid scan interval");
    let n = opts.samples;
    let step = (hi - lo) / n as f64;
    let xs: Vec<f64> = (0..=n)
        .map(|i| if i == n { hi } else { lo + step * i as f64 })
        .collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    let root = |x: f64, tangential: bool, endpoint: bool| Root {
        x,
        value: f(x),
        tangential,
        endpoint,
    };

    let mut found: Vec<Root> = Vec::new();
    if vs[0].abs() <= opts.zero_tol {
        found.push(root(lo, false, true));
    }
    if vs[n].abs() <= opts.zero_tol {
        found.push(root(hi, false, true));
    }

    // Bracketed sign changes; brackets[i] is the root inside [xs[i], xs[i+1]].
    let mut brackets: Vec<Option<Root>> = vec![None; n];
    for i in 0..n {
        if opposite(vs[i], vs[i + 1]) {
            let x = bisect(&f, xs[i], xs[i + 1], vs[i], opts.xtol);
            brackets[i] = Some(root(x, false, false));
        } else if vs[i] == 0.0 && i > 0 {
            brackets[i] = Some(root(xs[i], false, false));
        }
    }

    for i in 1..n {
        let rising_then_falling = vs[i] > vs[i - 1] && vs[i] >= vs[i + 1];
        let falling_then_rising = vs[i] < vs[i - 1] && vs[i] <= vs[i + 1];
        if !(rising_then_falling || falling_then_rising) {
            continue;
        }
        let (xe, fe) = golden_extremum(&f, xs[i - 1], xs[i + 1], falling_then_rising);
        if fe.abs() <= opts.tangent_tol {
            // A tangency: any crossings right around it belong to the same
            // double root.
            brackets[i - 1] = None;
            brackets[i] = None;
            found.push(root(xe, true, false));
        } else if opposite(fe, vs[i - 1])
            && opposite(fe, vs[i + 1])
            && !opposite(vs[i - 1], vs[i])
            && !opposite(vs[i], vs[i + 1])
        {
            // Two crossings between neighbouring samples.
            let left = bisect(&f, xs[i - 1], xe, vs[i - 1], opts.xtol);
            let right = bisect(&f, xe, xs[i + 1], fe, opts.xtol);
            found.push(root(left, false, false));
            found.push(root(right, false, false));
        }
    }
    found.extend(brackets.into_iter().flatten());
    let mut roots = merge(found, MERGE_TOL * (hi - lo));
    if let Some(df) = df {
        for r in roots.iter_mut().filter(|r| r.tangential && !r.endpoint) {
            let a = (r.x - step).max(lo);
            let b = (r.x + step).min(hi);
            let (da, db) = (df(a), df(b));
            if opposite(da, db) {
                let x = bisect(&df, a, b, da, opts.xtol);
                let v = f(x);
                if v.abs() <= r.value.abs().max(opts.tangent_tol) {
                    r.x = x;
                    r.value = v;
                }
            }
        }
    }
    roots
}

/// Roots closer than this fraction of the interval are one (double) root.
const MERGE_TOL: f64 = 1e-7;

fn merge(mut roots: Vec<Root>, tol: f64) -> Vec<Root> {
    roots.sort_by(|a, b| a.x.total_cmp(&b.x));
    let mut out: Vec<Root> = Vec::with_capacity(roots.len());
    for r in roots {
        match out.last_mut() {
            Some(last) if (r.x - last.x).abs() <= tol => {
                if r.endpoint && !last.endpoint {
                    last.x = r.x;
                    last.value = r.value;
                }
                // two interior crossings this close are a double root
                let interior_pair = !r.endpoint && !last.endpoint;
                last.endpoint |= r.endpoint;
                last.tangential |= r.tangential || interior_pair;
            }
            _ => out.push(r),
        }
    }
    out
}
