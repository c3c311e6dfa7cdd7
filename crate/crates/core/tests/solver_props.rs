use proptest::prelude::*;
use quadrisect::geometry::side_placements;
use quadrisect::roots::bisect;
use quadrisect::solver::{X_MAX, X_MIN};
use quadrisect::{
    aeq_residual, enumerate_quadrisections, peq_residual, solve_base, verify_quadrisection, y_of_x, Point2, SideRank,
    Tolerances, TriangleSpec,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn triangle() -> impl Strategy<Value = TriangleSpec> {
    let p = || (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(x, y)| Point2::new(x, y));
    (p(), p(), p()).prop_filter_map("near-degenerate", |(a, b, c)| {
        let t = TriangleSpec::Vertices([a, b, c]);
        let l = t.longest_side();
        (l > 1e-2 && t.area() > 1e-2 * l * l).then_some(t)
    })
}

#[test]
fn area_branch_solves_the_area_equation() {
    for k in 0..1000 {
        let x = X_MIN + (X_MAX - X_MIN) * k as f64 / 999.0;
        let y = y_of_x(x).unwrap();
        assert!(aeq_residual(x, y).abs() <= 1e-12, "x = {x}");
    }
}

#[test]
fn one_root_on_the_middle_side_none_on_the_longest() {
    let mut rng = StdRng::seed_from_u64(17);
    let mut tested = 0;
    while tested < 1000 {
        let sides: [f64; 3] = [
            rng.gen_range(0.1..1.0),
            rng.gen_range(0.1..1.0),
            rng.gen_range(0.1..1.0),
        ];
        let Ok(t) = TriangleSpec::from_sides(sides[0], sides[1], sides[2]) else {
            continue;
        };
        let mut s = sides;
        s.sort_by(f64::total_cmp);
        if s[1] - s[0] < 1e-3 * s[2] || s[2] - s[1] < 1e-3 * s[2] || s[0] + s[1] - s[2] < 1e-3 * s[2] {
            continue;
        }
        tested += 1;
        let placements = side_placements(&t).unwrap();
        let roots = |rank: SideRank| {
            let ct = placements.iter().find(|ct| ct.placement.rank == rank).unwrap();
            solve_base(ct.h, ct.ht, &tol()).len()
        };
        assert_eq!(roots(SideRank::Middle), 1, "sides {sides:?}");
        assert_eq!(roots(SideRank::Longest), 0, "sides {sides:?}");
    }
}

/// Roots by a plain sign scan at step 1e-5 followed by bisection.
fn dense_roots(h: f64, ht: f64) -> Vec<f64> {
    let f = |x: f64| peq_residual(x, h, ht).unwrap();
    let n = ((X_MAX - X_MIN) / 1e-5).ceil() as usize;
    let xs: Vec<f64> = (0..=n).map(|i| (X_MIN + 1e-5 * i as f64).min(X_MAX)).collect();
    let mut out = Vec::new();
    for w in xs.windows(2) {
        let (fa, fb) = (f(w[0]), f(w[1]));
        if fa * fb < 0.0 {
            out.push(bisect(&f, w[0], w[1], fa, 1e-15));
        }
    }
    out
}

#[test]
fn base_roots_agree_with_a_dense_scan() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..500 {
        let (h, ht) = (rng.gen_range(0.5..2.0), rng.gen_range(0.01..2.0));
        let dense = dense_roots(h, ht);
        let fast: Vec<f64> = solve_base(h, ht, &tol())
            .into_iter()
            .filter(|r| !r.tangential && !r.endpoint)
            .map(|r| r.x)
            .collect();
        assert_eq!(dense.len(), fast.len(), "({h}, {ht}): {dense:?} vs {fast:?}");
        for (a, b) in dense.iter().zip(&fast) {
            assert!((a - b).abs() <= 1e-10, "({h}, {ht}): {a} vs {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn every_quadrisection_verifies(t in triangle()) {
        let qs = enumerate_quadrisections(&t, &tol()).unwrap();
        prop_assert!((1..=3).contains(&qs.len()));
        for q in &qs {
            let report = verify_quadrisection(&t, q, &tol());
            prop_assert!(report.pass, "{report:?}");
            prop_assert!(report.max_area_deviation <= 1e-9);
            prop_assert!(report.perpendicularity.abs() <= 1e-9);
        }
    }

    #[test]
    fn crossing_point_is_inside_for_interior_roots(h in 0.5..2.0f64, ht in 0.01..2.0f64) {
        let t = TriangleSpec::canonical(h, ht).unwrap();
        for q in enumerate_quadrisections(&t, &tol()).unwrap() {
            let on_vertex = [X_MIN, X_MAX].iter().any(|e| (q.solution.x - e).abs() <= 1e-12);
            if !on_vertex {
                prop_assert!(q.solution.u > 0.0 && q.solution.u < 1.0, "u = {}", q.solution.u);
                let o = q.solution.o;
                let z = q.solution.intersection_height(q.canonical.y);
                prop_assert!((o.y - z).abs() <= 1e-9 * q.canonical.y.max(1.0));
            }
        }
    }
}
