use std::f64::consts::PI;

use pillowcase_core::*;
use proptest::prelude::*;

fn canonical_point() -> impl Strategy<Value = PillowcasePoint> {
    (0.0..PI, 0.0..TWO_PI).prop_map(|(a, b)| canonicalize(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn canonicalize_is_idempotent(a in -50.0..50.0f64, b in -50.0..50.0f64) {
        let p = canonicalize(a, b);
        prop_assert!(p.alpha() >= 0.0 && p.alpha() <= PI);
        prop_assert!(p.beta() >= 0.0 && p.beta() < TWO_PI);
        let q = canonicalize(p.alpha(), p.beta());
        prop_assert!(p.distance(&q) < 1e-12);
        prop_assert!(canonicalize(-a, -b).distance(&p) < 1e-9);
        prop_assert!(canonicalize(a + TWO_PI * 3.0, b - TWO_PI).distance(&p) < 1e-9);
    }

    #[test]
    fn involutions_square_to_identity(p in canonical_point()) {
        for kind in [Involution::Sigma, Involution::Tau, Involution::SigmaP(3), Involution::SigmaP(5), Involution::SigmaP(7)] {
            let once = apply_involution(kind, p).unwrap();
            let twice = apply_involution(kind, once).unwrap();
            prop_assert!(twice.distance(&p) < 1e-12, "{kind:?} {p} -> {twice}");
        }
    }

    #[test]
    fn sigma_commutes_with_tau(p in canonical_point()) {
        let st = apply_involution(Involution::Sigma, apply_involution(Involution::Tau, p).unwrap()).unwrap();
        let ts = apply_involution(Involution::Tau, apply_involution(Involution::Sigma, p).unwrap()).unwrap();
        prop_assert!(st.distance(&ts) < 1e-12);
    }

    #[test]
    fn sigma_fixes_edges(b in 0.0..PI) {
        for a in [0.0, PI] {
            let p = canonicalize(a, b);
            prop_assert!(apply_involution(Involution::Sigma, p).unwrap().distance(&p) < 1e-12);
        }
    }

    #[test]
    fn transforms_compose(
        p in canonical_point(),
        m1 in prop::array::uniform4(-5i64..=5),
        m2 in prop::array::uniform4(-5i64..=5),
    ) {
        let a = [[m1[0], m1[1]], [m1[2], m1[3]]];
        let b = [[m2[0], m2[1]], [m2[2], m2[3]]];
        let ab = [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ];
        let lhs = transform_by_matrix(ab, p);
        let rhs = transform_by_matrix(a, transform_by_matrix(b, p));
        prop_assert!(lhs.distance(&rhs) < 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn gluing_inverse_round_trips(p in canonical_point()) {
        let g = GluingMatrix::new(-6, 1, 37, -6).unwrap();
        prop_assert!(g.inverse().transform(g.transform(p)).distance(&p) < 1e-8);
    }
}

// Independent winding oracle. The pillowcase is the union of two squares
// (cos α, cos β) glued along their boundary, the front where sin α sin β > 0.
// Radially squashing the square onto the unit disk and reflecting the back
// through the unit circle gives a homeomorphism onto the Riemann sphere; the
// Möbius map (w − w_P)/(w − w_Q) then sends Q to infinity.
fn mobius_coordinate(a: f64, b: f64) -> (f64, f64) {
    let x = a.cos();
    let y = b.cos();
    let s = a.sin() * b.sin();
    let r = x.hypot(y);
    let phi = if r == 0.0 { (0.0, 0.0) } else { let k = x.abs().max(y.abs()) / r; (x * k, y * k) };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let wp = (h, -h);
    let wq = (-h, -h);
    let cmul = |p: (f64, f64), q: (f64, f64)| (p.0 * q.0 - p.1 * q.1, p.0 * q.1 + p.1 * q.0);
    let cdiv = |p: (f64, f64), q: (f64, f64)| {
        let d = q.0 * q.0 + q.1 * q.1;
        ((p.0 * q.0 + p.1 * q.1) / d, (p.1 * q.0 - p.0 * q.1) / d)
    };
    if s >= 0.0 {
        cdiv((phi.0 - wp.0, phi.1 - wp.1), (phi.0 - wq.0, phi.1 - wq.1))
    } else {
        let u = (phi.0, -phi.1);
        let num = cmul(wp, u);
        let den = cmul(wq, u);
        cdiv((1.0 - num.0, -num.1), (1.0 - den.0, -den.1))
    }
}

fn winding_oracle(curve: &PillowcasePolyline) -> f64 {
    let mut total = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    for seg in curve.segments() {
        for i in 0..=600 {
            let (a, b) = seg.at(i as f64 / 600.0);
            let g = mobius_coordinate(a, b);
            if let Some(p) = prev {
                let cross = p.0 * g.1 - p.1 * g.0;
                let dot = p.0 * g.0 + p.1 * g.1;
                total += cross.atan2(dot);
            }
            prev = Some(g);
        }
    }
    total / TWO_PI
}

fn half_circle_about_p() -> PillowcasePolyline {
    PillowcasePolyline::from_parametric(48, true, |t| (0.4 * (PI * t).cos(), PI + 0.4 * (PI * t).sin()))
}

#[test]
fn oracle_agrees_on_reference_loops() {
    let hc = half_circle_about_p();
    assert!((winding_oracle(&hc).abs() - 1.0).abs() < 1e-6);
    let vl = PillowcasePolyline::vertical_loop(PI / 2.0, 40);
    assert!((winding_oracle(&vl).abs() - 1.0).abs() < 1e-6);
    assert_eq!(essential_class(&vl).unwrap().abs(), 1);
}

fn oracle_sign() -> i64 {
    let hc = half_circle_about_p();
    let o = winding_oracle(&hc).round() as i64;
    let c = essential_class(&hc).unwrap();
    assert_eq!(c.abs(), 1);
    o * c
}

fn clear_of_marked_points(curve: &PillowcasePolyline, r: f64) -> bool {
    curve.segments().iter().all(|s| {
        (-3..=3).all(|k| (-2..=2).all(|l| s.distance_to((PI * k as f64, PI + TWO_PI * l as f64)) > r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn essential_class_matches_winding_oracle(pts in prop::collection::vec(canonical_point(), 3..8)) {
        let curve = PillowcasePolyline::new(pts, true);
        prop_assume!(clear_of_marked_points(&curve, 1e-2));
        let class = essential_class(&curve).unwrap();
        let w = winding_oracle(&curve);
        prop_assert!((w - w.round()).abs() < 1e-6, "oracle not integral: {w}");
        prop_assert_eq!(class, oracle_sign() * w.round() as i64);
    }

    #[test]
    fn upward_vertical_loops_have_class_one(a in 0.05..(PI - 0.05)) {
        let c = PillowcasePolyline::vertical_loop(a, 24);
        prop_assert_eq!(essential_class(&c).unwrap(), 1);
    }
}

#[test]
fn square_loop_is_nullhomotopic() {
    let c = PillowcasePolyline::new(
        vec![
            PillowcasePoint::new(PI / 2.0 - 0.1, PI / 2.0 - 0.1),
            PillowcasePoint::new(PI / 2.0 + 0.1, PI / 2.0 - 0.1),
            PillowcasePoint::new(PI / 2.0 + 0.1, PI / 2.0 + 0.1),
            PillowcasePoint::new(PI / 2.0 - 0.1, PI / 2.0 + 0.1),
        ],
        true,
    );
    assert_eq!(essential_class(&c).unwrap(), 0);
}

#[test]
fn curve_through_p_is_degenerate() {
    let c = PillowcasePolyline::vertical_loop(0.0, 24);
    assert!(matches!(essential_class(&c), Err(PillowcaseError::DegenerateCurve(_))));
}

fn slope_line(p: f64, c: f64) -> PillowcasePolyline {
    // the line p·α + β ≡ c over 0 ≤ α ≤ π
    PillowcasePolyline::from_parametric(2000, false, |t| (PI * t, c - p * PI * t))
}

#[test]
fn trefoil_line_meets_its_swap_at_oracle_points() {
    let line = slope_line(6.0, PI);
    let swapped = line.transformed(GluingMatrix::swap().matrix());
    let hits = polyline_intersections(&line, &swapped);
    // 6α+β ≡ π and α+6β ≡ π force α = (2i+1)π/35
    let oracle: Vec<PillowcasePoint> =
        (0..18).map(|i| {
            let a = (2 * i + 1) as f64 * PI / 35.0;
            canonicalize(a, PI - 6.0 * a)
        }).collect();
    for o in &oracle {
        assert!(hits.iter().any(|h| h.point.distance(o) < 1e-9), "missing {o}");
    }
    for h in &hits {
        assert!(oracle.iter().any(|o| h.point.distance(o) < 1e-9), "extra {}", h.point);
    }
    for target in [(3.0 * PI / 7.0, 3.0 * PI / 7.0), (5.0 * PI / 7.0, 5.0 * PI / 7.0)] {
        let t = canonicalize(target.0, target.1);
        let hit = hits.iter().find(|h| h.point.distance(&t) < 1e-9).expect("listed point");
        assert!(hit.transversal);
    }
}

#[test]
fn lpi_line_meets_vertical_loop_once() {
    let hits = polyline_intersections(&PillowcasePolyline::horizontal_arc(PI, 33), &PillowcasePolyline::vertical_loop(PI / 2.0, 20));
    assert_eq!(hits.len(), 1);
    assert!(hits[0].transversal);
    assert!(hits[0].point.distance(&PillowcasePoint::new(PI / 2.0, PI)) < 1e-9);
}

#[test]
fn self_intersection_is_overlap() {
    let lp = PillowcasePolyline::vertical_loop(PI / 2.0, 20);
    let hits = polyline_intersections(&lp, &lp);
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|h| !h.transversal));
}

#[test]
fn transformed_curves_follow_matrix_products() {
    let g1 = GluingMatrix::new(-1, 0, 2, 1).unwrap();
    let g2 = GluingMatrix::swap();
    let lp = PillowcasePolyline::vertical_loop(0.7, 30);
    let two_step = lp.transformed(g2.matrix()).transformed(g1.matrix());
    let m = [[g1.a() * g2.a() + g1.b() * g2.p(), g1.a() * g2.b() + g1.b() * g2.c()],
             [g1.p() * g2.a() + g1.c() * g2.p(), g1.p() * g2.b() + g1.c() * g2.c()]];
    let direct = lp.transformed(m);
    for v in &direct.vertices {
        let nearest = two_step.segments().iter().map(|s| {
            (0..=50).map(|i| { let (x, y) = s.at(i as f64 / 50.0); canonicalize(x, y).distance(v) }).fold(f64::INFINITY, f64::min)
        }).fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-2, "{v}");
    }
}
