use proptest::prelude::*;
use zeno_core::*;

proptest! {
    #[test]
    fn hamiltonian_is_nonnegative(x in -10.0..10.0f64, p in -10.0..10.0f64) {
        let h = classical_hamiltonian(&PhasePoint::new(x, p));
        prop_assert!(h >= 0.0);
        prop_assert_eq!(h == 0.0, x == 0.0 && p == 0.0);
    }

    #[test]
    fn disk_indicator_is_rotation_invariant(x in -4.0..4.0f64, p in -4.0..4.0f64, th in 0.0..6.3f64, mu in 0.5..4.0f64) {
        let q = PhasePoint::new(x, p);
        prop_assume!((q.r2() - 2.0 * mu).abs() > 1e-9);
        let g = DiskGeometry::new(mu).unwrap();
        prop_assert_eq!(chi_d(&q, &g), chi_d(&q.rotate(th), &g));
    }

    #[test]
    fn semicircle_is_even_with_exact_support(y in -5.0..5.0f64, mu in 0.1..5.0f64) {
        let d = semicircle_density(y, mu);
        prop_assert_eq!(d, semicircle_density(-y, mu));
        prop_assert_eq!(d > 0.0, y.abs() < (2.0 * mu).sqrt());
    }
}

#[test]
fn turning_point_slope_is_edge_constant_cubed() {
    // p(x)² = 2μ − x² has one-sided slope ∓2√(2μ) at x = ±√(2μ)
    for mu in [0.5, 1.0, 2.0, 7.0] {
        let a = (2.0f64 * mu).sqrt();
        let p2 = |x: f64| (2.0 * mu - x * x).max(0.0);
        let h = 1e-6;
        let slope = (p2(a) - p2(a - h)) / h;
        let c3 = edge_constant(mu).powi(3);
        assert!((slope.abs() - c3).abs() < 1e-5 * c3, "{slope} {c3}");
    }
}

#[test]
fn semicircle_cdf_matches_density() {
    let mu = 2.0;
    let mut acc = 0.0;
    let n = 200_000;
    let a = 2.0;
    let h = 2.0 * a / n as f64;
    for i in 0..n {
        let y = -a + h * (i as f64 + 0.5);
        acc += h * semicircle_density(y, mu);
        if i % 20_000 == 19_999 {
            assert!((acc - semicircle_cdf(y + h / 2.0, mu)).abs() < 1e-6);
        }
    }
}
