use proptest::prelude::*;
use zeno_core::dynamics::*;
use zeno_core::quad::composite_nodes;
use zeno_core::symbols::symbol_h;
use zeno_core::*;

fn scale(n: usize) -> SemiclassicalScale {
    SemiclassicalScale::new(n, 2.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn smooth_field_is_divergence_free(n in 4usize..=512, x in -2.5..2.5f64, p in -2.5..2.5f64) {
        let s = scale(n);
        let e = 1e-6 / s.airy_layer_coefficient().sqrt();
        let f = |x: f64, p: f64| field_smooth(&s, &PhasePoint::new(x, p));
        let div = (f(x + e, p)[0] - f(x - e, p)[0] + f(x, p + e)[1] - f(x, p - e)[1]) / (2.0 * e);
        let size = f(x, p)[0].abs() + f(x, p)[1].abs() + 1.0;
        prop_assert!(div.abs() < 1e-6 * size * s.airy_layer_coefficient(), "{div}");
    }

    #[test]
    fn symbol_field_matches_finite_differences(n in 2usize..=64, u in 0.0..0.95f64, th in 0.0..6.3f64) {
        let s = scale(n);
        let r = u * (2.0 * s.mu()).sqrt();
        let (x, p) = (r * th.cos(), r * th.sin());
        let v = field_symbol(&s, &PhasePoint::new(x, p)).unwrap();
        let h = |x: f64, p: f64| symbol_h(&s, &PhasePoint::new(x, p)).unwrap();
        let e = 1e-5;
        let dp = (h(x, p + e) - h(x, p - e)) / (2.0 * e);
        let dx = (h(x + e, p) - h(x - e, p)) / (2.0 * e);
        prop_assert!((v[0] - dp).abs() < 1e-6 * (1.0 + dp.abs()));
        prop_assert!((v[1] + dx).abs() < 1e-6 * (1.0 + dx.abs()));
    }

    #[test]
    fn limit_flow_preserves_rectangle_areas(x in -1.0..1.0f64, p in -1.0..1.0f64, t in 0.0..0.3f64) {
        // corners of a small rectangle that stays inside the disk for the whole window
        let d = 0.05;
        let c: Vec<PhasePoint> = [(0.0, 0.0), (d, 0.0), (d, d), (0.0, d)]
            .iter()
            .map(|&(a, b)| limit_flow(2.0, &PhasePoint::new(x + a, p + b), t).unwrap())
            .collect();
        let area = 0.5 * (0..4).map(|i| {
            let (a, b) = (c[i], c[(i + 1) % 4]);
            a.x * b.p - b.x * a.p
        }).sum::<f64>().abs();
        prop_assert!((area - d * d).abs() < 1e-12);
    }
}

#[test]
fn energy_is_conserved_along_smooth_trajectories() {
    for n in [16usize, 64, 256] {
        let f = FieldSpec::new(FieldKind::SmoothAiry, scale(n));
        for q in [
            PhasePoint::new(0.0, 0.5),
            PhasePoint::new(1.8, 0.5),
            PhasePoint::new(-0.3, 1.2),
        ] {
            let tol = 1e-10;
            let tr = integrate(&f, &q, 1.0, tol).unwrap();
            assert!(
                tr.energy_drift() < 10.0 * tol,
                "N={n} {q:?}: {}",
                tr.energy_drift()
            );
        }
    }
}

#[test]
fn smoothed_delta_tends_to_minus_the_boundary_delta() {
    // δ^{(N)} = dχ^{(N)}/dr, so ∫δ^{(N)} f dr → −f(√(2μ))
    let f = |r: f64| (-(r - 1.8) * (r - 1.8)).exp() * r;
    let a = (2.0f64 * 2.0).sqrt();
    let mut errs = Vec::new();
    for n in [16usize, 64, 256, 1024] {
        let s = scale(n);
        let v: f64 = composite_nodes(0.0, 6.0, 3000, 16)
            .iter()
            .map(|&(r, w)| w * delta_smooth(&s, r) * f(r))
            .sum();
        errs.push((v + f(a)).abs());
    }
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(errs[3] < 0.02, "{errs:?}");
}

#[test]
fn field_vanishes_outside_the_layer() {
    for n in [256usize, 1024] {
        let s = scale(n);
        let r = 2.0 + 5.0 * (n as f64).powf(-1.0 / 3.0) * 2.0;
        for k in 0..16 {
            let th = k as f64 * 0.39;
            let v = field_smooth(&s, &PhasePoint::new(r * th.cos(), r * th.sin()));
            assert!(v[0].hypot(v[1]) < 1e-8, "N={n}");
        }
    }
}

#[test]
fn flow_kinds_and_errors() {
    let s = scale(32);
    assert!(integrate(
        &FieldSpec::new(FieldKind::SingularLimit, s),
        &PhasePoint::new(0.0, 0.0),
        1.0,
        1e-8
    )
    .is_err());
    assert!(interior_speed(&s, 5.0, 1e-8).is_err());
    let tr = integrate(
        &FieldSpec::new(FieldKind::Symbol, s),
        &PhasePoint::new(0.2, 0.4),
        0.5,
        1e-9,
    )
    .unwrap();
    assert!(tr.energy_drift() < 1e-8);
    let v = FieldSpec::new(FieldKind::SmoothAiry, scale(1024))
        .velocity(&PhasePoint::new(0.0, 0.0))
        .unwrap();
    let want = zeno_core::specfun::airy_integrated(-(2048f64).powf(2.0 / 3.0));
    assert!((v[0] - want).abs() < 1e-14 && v[1] == 0.0);
}
