use std::f64::consts::PI;

use families::{fiber_swap_gluing, torus_knot_model};
use gluer::{search_nonabelian_rep, search_with_images, splice};
use pillowcase_core::{wrap_pi, GluingMatrix, PillowcasePoint};
use surep::{irreducibility_gap, relator_residual, sample_pillowcase_image, SolverConfig};

fn config(resolution: usize) -> SolverConfig {
    SolverConfig { resolution, ..SolverConfig::default() }
}

// Irreducible trefoil holonomies: 6α + β ≡ π with π/6 < α < 5π/6.
fn on_trefoil_arc(pt: PillowcasePoint) -> bool {
    let (a, b) = pt.coords();
    wrap_pi(6.0 * a + b - PI).abs() < 1e-6 && a > PI / 6.0 && a < 5.0 * PI / 6.0
}

// Points of the trefoil arc whose swap is also on the arc: 35α ≡ 5π (mod 2π).
fn swap_oracle() -> Vec<PillowcasePoint> {
    (1..35)
        .step_by(2)
        .map(|k| PillowcasePoint::new(k as f64 * PI / 35.0, PI - 6.0 * k as f64 * PI / 35.0))
        .filter(|&pt| on_trefoil_arc(pt) && on_trefoil_arc(GluingMatrix::swap().transform(pt)))
        .collect()
}

#[test]
fn swap_oracle_contains_named_points() {
    let o = swap_oracle();
    for named in [(3.0 * PI / 7.0, 3.0 * PI / 7.0), (5.0 * PI / 7.0, 5.0 * PI / 7.0)] {
        assert!(o.iter().any(|p| p.distance(&named.into()) < 1e-12));
    }
}

#[test]
fn trefoil_swap_splice_has_nonabelian_rep() {
    let t = torus_knot_model(2, 3).unwrap();
    let s = splice(&t, &t, GluingMatrix::swap()).unwrap();
    let cfg = config(100);
    let out = search_nonabelian_rep(&s, &cfg).unwrap();
    let g = out.found.expect("glued representation");
    assert!(relator_residual(&g.rep, &s.amalgamated).unwrap() < 1e-8);
    assert!(g.residual < 1e-8);
    assert!(irreducibility_gap(&g.rep.restrict(0..2), &t.presentation).unwrap() > 0.1);
    assert!(irreducibility_gap(&g.rep.restrict(2..4), &t.presentation).unwrap() > 0.1);
    let d = swap_oracle().iter().map(|o| o.distance(&g.point)).fold(f64::INFINITY, f64::min);
    assert!(d < 1e-3, "point {:?} is {d} from the oracle set", g.point);
    assert!(!g.point.on_l0(1e-6) && g.point.alpha() > 1e-6);
    assert!(g.point2.distance(&GluingMatrix::swap().transform(g.point)) < 1e-6);
    assert!(out.diagnostics.candidates.iter().any(|c| c.accepted));
}

#[test]
fn trefoil_sigma3_splice_has_nonabelian_rep() {
    let t = torus_knot_model(2, 3).unwrap();
    let g = GluingMatrix::new(-1, 0, 3, 1).unwrap();
    let s = splice(&t, &t, g).unwrap();
    let out = search_nonabelian_rep(&s, &config(100)).unwrap();
    let w = out.found.expect("glued representation");
    assert!(w.residual < 1e-8 && w.gap1 > 0.1 && w.gap2 > 0.1);
    // 6α + β ≡ π and β − 3α ≡ π give 9α ≡ 0
    let oracle: Vec<PillowcasePoint> =
        (1..=3).map(|k| 2.0 * k as f64 * PI / 9.0).map(|a| PillowcasePoint::new(a, PI - 6.0 * a)).collect();
    assert!(oracle.iter().any(|o| o.distance(&w.point) < 1e-3), "{:?}", w.point);
}

#[test]
fn search_is_deterministic() {
    let t = torus_knot_model(2, 3).unwrap();
    let s = splice(&t, &t, GluingMatrix::swap()).unwrap();
    let cfg = config(60);
    let img = sample_pillowcase_image(&t.presentation, 60, &cfg).unwrap();
    let a = search_with_images(&s, &img, &img, &cfg).unwrap();
    let b = search_with_images(&s, &img, &img, &SolverConfig { threads: Some(1), ..cfg.clone() }).unwrap();
    assert_eq!(a, b);
    let fast = search_with_images(&s, &img, &img, &SolverConfig { deterministic: false, ..cfg }).unwrap();
    assert!(fast.found.is_some());
}

#[test]
fn fiber_swap_splice_finds_nothing() {
    let t = torus_knot_model(2, 3).unwrap();
    let m = torus_knot_model(-2, 3).unwrap();
    let s = splice(&t, &m, fiber_swap_gluing((2, 3), (-2, 3))).unwrap();
    let out = search_nonabelian_rep(&s, &config(200)).unwrap();
    assert!(out.found.is_none());
    assert_eq!(out.diagnostics.resolution, 200);
}
