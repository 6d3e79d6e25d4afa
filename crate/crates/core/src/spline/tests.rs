use super::*;
use proptest::prelude::*;

fn seq_from_fn(f: impl Fn(f64) -> Point2, ls: &[f64]) -> BreakpointSequence {
    let pts: Vec<Point2> = ls.iter().map(|&l| f(l)).collect();
    BreakpointSequence::open(pts).unwrap()
}

fn uniform(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

#[test]
fn chordal_lengths_unit_chords() {
    let pts = [
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(1.0, 1.0),
    ];
    assert_eq!(chordal_lengths(&pts).unwrap(), vec![0.0, 1.0, 2.0]);
}

#[test]
fn chordal_lengths_345() {
    let pts = [Point2::new(0.0, 0.0), Point2::new(3.0, 4.0)];
    assert_eq!(chordal_lengths(&pts).unwrap(), vec![0.0, 5.0]);
}

#[test]
fn chordal_lengths_circle_chords() {
    let pts: Vec<Point2> = (0..=4)
        .map(|i| {
            let t = std::f64::consts::FRAC_PI_2 * i as f64;
            Point2::new(t.cos(), t.sin())
        })
        .collect();
    let ls = chordal_lengths(&pts).unwrap();
    let c = 2f64.sqrt();
    for (i, l) in ls.iter().enumerate() {
        assert!((l - c * i as f64).abs() < 1e-14, "l[{i}] = {l}");
    }
}

#[test]
fn chordal_lengths_rejects_duplicates() {
    let pts = [
        Point2::new(0.0, 0.0),
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
    ];
    assert!(matches!(
        chordal_lengths(&pts),
        Err(Error::DegenerateChord { index: 0 })
    ));
}

fn cubic_curve_spline() -> CubicSpline {
    // x(l) = l, y(l) = l^3 on knots 0..4: a single cubic satisfies the
    // not-a-knot conditions, so uniqueness forces exact reproduction.
    let knots = uniform(0.0, 4.0, 4);
    let ys: Vec<f64> = knots.iter().map(|&l| l * l * l).collect();
    CubicSpline::fit_parametric(&knots, &knots, &ys, SplineKind::NotAKnot).unwrap()
}

#[test]
fn not_a_knot_reproduces_cubic() {
    let s = cubic_curve_spline();
    for i in 0..=1000 {
        let l = 4.0 * i as f64 / 1000.0;
        let p = s.eval(l, 0).unwrap();
        assert!((p.x - l).abs() < 1e-10);
        assert!((p.y - l * l * l).abs() < 1e-10, "err {}", (p.y - l * l * l).abs());
    }
    assert!(s.fit_residual() < FIT_RESIDUAL_TOL);
}

#[test]
fn constant_data_gives_zero_moments() {
    let pts: Vec<Point2> = (0..6).map(|i| Point2::new(i as f64, 2.5)).collect();
    let seq = BreakpointSequence::open(pts).unwrap();
    let s = CubicSpline::fit(&seq, SplineKind::NotAKnot).unwrap();
    for &m in s.moments(1) {
        assert!(m.abs() < 1e-13);
    }
    let p = s.eval(1.7, 0).unwrap();
    assert!((p.y - 2.5).abs() < 1e-13);
    // Derivative of the (linear) x coordinate is 1, of y is 0.
    let d = s.eval(1.7, 1).unwrap();
    assert!((d.x - 1.0).abs() < 1e-13);
    assert!(d.y.abs() < 1e-13);
}

#[test]
fn not_a_knot_sin_respects_bound() {
    // y = sin(l) at 9 uniform knots on [0, pi]; the c0 = 5/32 bound gives
    // (5/32) (pi/8)^4 max|sin''''| ~ 3.72e-3; a dense sweep measures the
    // actual maximum.
    let knots = uniform(0.0, std::f64::consts::PI, 8);
    let ys: Vec<f64> = knots.iter().map(|&l| l.sin()).collect();
    let s = CubicSpline::fit_parametric(&knots, &knots, &ys, SplineKind::NotAKnot).unwrap();
    let mut max_err: f64 = 0.0;
    for i in 0..=10_000 {
        let l = std::f64::consts::PI * i as f64 / 10_000.0;
        let p = s.eval(l, 0).unwrap();
        max_err = max_err.max((p.y - l.sin()).abs());
    }
    let bound = 5.0 / 32.0 * (std::f64::consts::PI / 8.0).powi(4);
    assert!(bound > 3.7e-3 && bound < 3.8e-3);
    assert!(max_err <= bound, "max {max_err:.3e} > bound {bound:.3e}");
}

#[test]
fn eval_interpolates_at_knots() {
    let seq = seq_from_fn(
        |l| Point2::new(l.cos() + l, (2.0 * l).sin()),
        &uniform(0.0, 3.0, 7),
    );
    let s = CubicSpline::fit(&seq, SplineKind::NotAKnot).unwrap();
    for (i, &l) in s.knots().to_vec().iter().enumerate() {
        let p = s.eval(l, 0).unwrap();
        assert!(p.dist(s.breakpoint(i)) < 1e-12);
    }
}

#[test]
fn eval_second_derivative_of_cubic() {
    let s = cubic_curve_spline();
    let d2 = s.eval(1.5, 2).unwrap();
    assert!(d2.x.abs() < 1e-10);
    assert!((d2.y - 9.0).abs() < 1e-9, "y'' = {}", d2.y);
}

#[test]
fn eval_out_of_range_errors() {
    let seq = seq_from_fn(|l| Point2::new(l, 0.5 * l), &uniform(0.0, 1.0, 4));
    let s = CubicSpline::fit(&seq, SplineKind::NotAKnot).unwrap();
    let (lo, hi) = s.domain();
    assert!(matches!(s.eval(lo - 0.1, 0), Err(Error::OutOfRange { .. })));
    assert!(matches!(s.eval(hi + 0.1, 0), Err(Error::OutOfRange { .. })));
}

#[test]
fn curvature_straight_line_is_infinite() {
    let seq = seq_from_fn(|l| Point2::new(l, 2.0 * l), &uniform(0.0, 2.0, 5));
    let s = CubicSpline::fit(&seq, SplineKind::NotAKnot).unwrap();
    assert!(s.curvature_radius(0.7, Side::TwoSided).unwrap().is_infinite());
}

fn circle_seq(n: usize, r: f64) -> BreakpointSequence {
    let pts: Vec<Point2> = (0..=n)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            Point2::new(r * t.cos(), r * t.sin())
        })
        .collect();
    BreakpointSequence::closed(pts).unwrap()
}

#[test]
fn curvature_of_unit_circle() {
    let seq = circle_seq(64, 1.0);
    let s = CubicSpline::fit(&seq, SplineKind::Periodic).unwrap();
    for &l in s.knots() {
        let rho = s.curvature_radius(l, Side::TwoSided).unwrap();
        assert!((rho - 1.0).abs() < 1e-3, "rho = {rho}");
    }
}

#[test]
fn curvature_of_parabola_vertex() {
    // y = x^2 sampled symmetrically about 0: kappa(0) = 2, rho = 1/2.
    let pts: Vec<Point2> = (-4..=4)
        .map(|i| {
            let x = i as f64 * 0.05;
            Point2::new(x, x * x)
        })
        .collect();
    let seq = BreakpointSequence::open(pts).unwrap();
    let s = CubicSpline::fit(&seq, SplineKind::NotAKnot).unwrap();
    let mid = s.knots()[4];
    let rho = s.curvature_radius(mid, Side::TwoSided).unwrap();
    assert!((rho - 0.5).abs() < 2e-3, "rho = {rho}");
}

#[test]
fn moment_system_uniform_not_a_knot() {
    let knots = uniform(0.0, 6.0, 6);
    let data: Vec<f64> = knots.iter().map(|&l| l.sin()).collect();
    let sys = MomentSystem::not_a_knot(&knots, &data);
    let a = sys.dense();
    let n = sys.dim() - 1;
    for i in 1..n {
        assert!((a[i][i - 1] - 0.5).abs() < 1e-14);
        assert!((a[i][i] - 2.0).abs() < 1e-14);
        assert!((a[i][i + 1] - 0.5).abs() < 1e-14);
    }
    assert!((a[0][0] - 0.5).abs() < 1e-14);
    assert!((a[0][1] + 1.0).abs() < 1e-14);
    assert!((a[0][2] - 0.5).abs() < 1e-14);
    assert!((a[n][n - 2] - 0.5).abs() < 1e-14);
    assert!((a[n][n - 1] + 1.0).abs() < 1e-14);
    assert!((a[n][n] - 0.5).abs() < 1e-14);
}

#[test]
fn moment_system_periodic_row_sums() {
    let seq = circle_seq(17, 0.8);
    let data: Vec<f64> = seq.points().iter().map(|p| p.x).collect();
    let sys = assemble_moment_system(&seq, SplineKind::Periodic, &data).unwrap();
    for s in sys.row_sums() {
        assert!((s - 3.0).abs() < 1e-13);
    }
    assert!((sys.inf_norm() - 3.0).abs() < 1e-13);
}

#[test]
fn periodic_end_conditions_match() {
    let seq = circle_seq(24, 0.5);
    let s = CubicSpline::fit(&seq, SplineKind::Periodic).unwrap();
    let (lo, hi) = s.domain();
    for order in 0..=2 {
        let a = s.eval_side(lo, order, Side::Right).unwrap();
        let b = s.eval_side(hi, order, Side::Left).unwrap();
        assert!(a.dist(b) < 1e-9, "order {order}: {:?} vs {:?}", a, b);
    }
}

#[test]
fn not_a_knot_third_derivative_continuous_at_second_knot() {
    let seq = seq_from_fn(|l| Point2::new(l, (1.3 * l).sin()), &uniform(0.0, 3.0, 6));
    let s = CubicSpline::fit(&seq, SplineKind::NotAKnot).unwrap();
    let k = s.knots().to_vec();
    for &l in [k[1], k[5]].iter() {
        let a = s.eval_side(l, 3, Side::Left).unwrap();
        let b = s.eval_side(l, 3, Side::Right).unwrap();
        assert!(a.dist(b) < 1e-9 * (1.0 + a.norm()));
    }
}

#[test]
fn fourth_order_convergence_periodic() {
    // Halving a uniform h must shrink the max interpolation error of a
    // smooth periodic function by at least 12x (asymptotically 16x).
    let mut prev: Option<f64> = None;
    for n in [16usize, 32, 64, 128] {
        let pts: Vec<Point2> = (0..=n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Point2::new(t.cos(), t.sin())
            })
            .collect();
        let seq = BreakpointSequence::closed(pts).unwrap();
        let s = CubicSpline::fit(&seq, SplineKind::Periodic).unwrap();
        let (lo, hi) = s.domain();
        let mut err: f64 = 0.0;
        for i in 0..=4000 {
            let l = lo + (hi - lo) * i as f64 / 4000.0;
            let p = s.eval(l, 0).unwrap();
            err = err.max((p.norm() - 1.0).abs());
        }
        if let Some(e_prev) = prev {
            let factor = e_prev / err;
            assert!(factor >= 12.0, "n = {n}: factor {factor:.2}");
        }
        prev = Some(err);
    }
}

#[test]
fn c2_continuity_at_interior_knots() {
    let ls = [0.0, 0.4, 1.1, 1.5, 2.6, 3.0, 3.9];
    let seq = seq_from_fn(|l| Point2::new(l + (0.9 * l).cos(), (1.1 * l).sin()), &ls);
    let s = CubicSpline::fit(&seq, SplineKind::NotAKnot).unwrap();
    for &l in &ls[1..ls.len() - 1] {
        for order in 0..=2 {
            let a = s.eval_side(l, order, Side::Left).unwrap();
            let b = s.eval_side(l, order, Side::Right).unwrap();
            let scale = 1.0 + a.norm().max(b.norm());
            assert!(a.dist(b) <= 1e-9 * scale, "order {order} at {l}");
        }
    }
}

proptest! {
    // Any single cubic is reproduced exactly (to 1e-10) by a not-a-knot fit,
    // regardless of the knot layout.
    #[test]
    fn prop_cubic_reproduction(
        c0 in -2.0..2.0f64, c1 in -2.0..2.0f64, c2 in -2.0..2.0f64, c3 in -2.0..2.0f64,
        gaps in proptest::collection::vec(0.1..1.0f64, 4..10)
    ) {
        let mut ls = vec![0.0];
        for g in &gaps {
            ls.push(ls.last().unwrap() + g);
        }
        let poly = |l: f64| c0 + c1 * l + c2 * l * l + c3 * l * l * l;
        let ys: Vec<f64> = ls.iter().map(|&l| poly(l)).collect();
        let s = CubicSpline::fit_parametric(&ls, &ls, &ys, SplineKind::NotAKnot).unwrap();
        let (lo, hi) = s.domain();
        for i in 0..=200 {
            let l = lo + (hi - lo) * i as f64 / 200.0;
            let p = s.eval(l, 0).unwrap();
            prop_assert!((p.y - poly(l)).abs() < 1e-10 * (1.0 + poly(l).abs()));
        }
    }

    // Chordal lengths are strictly increasing with exact chord increments.
    #[test]
    fn prop_chordal_lengths_increments(
        pts in proptest::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 2..30)
    ) {
        let pts: Vec<Point2> = pts.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        prop_assume!(pts.windows(2).all(|w| w[0].dist(w[1]) > 1e-9));
        let ls = chordal_lengths(&pts).unwrap();
        prop_assert_eq!(ls[0], 0.0);
        for i in 1..pts.len() {
            prop_assert!(ls[i] > ls[i - 1]);
            let chord = pts[i].dist(pts[i - 1]);
            prop_assert!((ls[i] - ls[i - 1] - chord).abs() <= 1e-12 * ls[i].max(1.0));
        }
    }
}
