use proptest::prelude::*;
use std::f64::consts::PI;
use zeno_core::kernels::KernelKind;
use zeno_core::quad::composite_nodes;
use zeno_core::specfun::decay_radius;
use zeno_core::symbols::*;
use zeno_core::*;

fn scale(n: usize) -> SemiclassicalScale {
    SemiclassicalScale::new(n, 2.0).unwrap()
}

fn library() -> Vec<TestFunction> {
    vec![
        TestFunction::gaussian(0.5, 0.5, 1.0),
        TestFunction::gaussian(-1.2, 0.3, 0.4),
        TestFunction::hermite_gaussian(0.2, -0.4, 0.8, 1, 2),
        TestFunction::hermite_gaussian(0.0, 0.0, 1.0, 0, 3),
        TestFunction::radial(vec![1.0, -0.5, 0.1], 1.2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn laguerre_and_fourier_routes_agree(n in 1usize..=128, u in 0.0..1.0f64, th in 0.0..6.3f64) {
        let s = scale(n);
        let r = (6.0 * s.mu() * u).sqrt();
        let q = PhasePoint::new(r * th.cos(), r * th.sin());
        let a = symbol_p_laguerre(&s, &q).unwrap();
        let b = symbol_via_fourier(&s, KernelKind::ChristoffelDarboux, &q).unwrap();
        prop_assert!((a - b).abs() <= 1e-7 * a.abs().max(1.0));
        let a = symbol_h_laguerre(&s, &q).unwrap();
        let b = symbol_via_fourier(&s, KernelKind::Momentum, &q).unwrap();
        prop_assert!((a - b).abs() <= 1e-7 * a.abs().max(1.0));
    }

    #[test]
    fn sigma_p_is_radial(n in 1usize..=200, x in -3.0..3.0f64, p in -3.0..3.0f64, th in 0.0..6.3f64) {
        let s = scale(n);
        let q = PhasePoint::new(x, p);
        let a = symbol_p(&s, &q).unwrap();
        let b = symbol_p(&s, &q.rotate(th)).unwrap();
        prop_assert!((a - b).abs() < 1e-10, "{a} {b}");
    }

    #[test]
    fn parity_in_momentum(n in 1usize..=200, x in -3.0..3.0f64, p in -3.0..3.0f64) {
        let s = scale(n);
        let (q, m) = (PhasePoint::new(x, p), PhasePoint::new(x, -p));
        prop_assert_eq!(symbol_p(&s, &q).unwrap(), symbol_p(&s, &m).unwrap());
        prop_assert_eq!(symbol_h(&s, &q).unwrap(), -symbol_h(&s, &m).unwrap());
    }
}

#[test]
fn center_value_for_all_small_ranks() {
    for n in 1..=512 {
        let v = symbol_p(&scale(n), &PhasePoint::new(0.0, 0.0)).unwrap();
        let want = 1.0 + if n % 2 == 1 { 1.0 } else { -1.0 };
        assert!((v - want).abs() < 1e-9, "N={n}: {v}");
    }
}

#[test]
fn normalization() {
    for n in [1usize, 5, 16, 64] {
        let s = scale(n);
        let h = s.hbar();
        let r = decay_radius(n, h) + 1.0;
        // ∬σ_P = π ∫ σ_P(√s, 0) ds
        let nodes = composite_nodes(0.0, r * r, ((r * r) / (h / 2.0)).ceil() as usize, 16);
        let total: f64 = nodes
            .iter()
            .map(|&(t, w)| w * symbol_p(&s, &PhasePoint::new(t.sqrt(), 0.0)).unwrap())
            .sum::<f64>()
            * PI;
        assert!(
            (total / (2.0 * PI * h) - n as f64).abs() < 1e-6,
            "N={n}: {}",
            total / (2.0 * PI * h)
        );
        // ∬σ_H over a box symmetric in p
        let g = composite_nodes(-r, r, 64, 16);
        let odd: f64 = g
            .iter()
            .flat_map(|&(x, wx)| g.iter().map(move |&(p, wp)| (x, p, wx * wp)))
            .map(|(x, p, w)| w * symbol_h(&s, &PhasePoint::new(x, p)).unwrap())
            .sum();
        assert!(odd.abs() < 1e-8, "N={n}: {odd}");
    }
}

#[test]
fn sup_norm_is_dominated_by_a_norm() {
    for phi in library() {
        let (xl, xh) = phi.x_extent();
        let (pl, ph) = phi.p_extent();
        let mut m = 0.0f64;
        for i in 0..=300 {
            for j in 0..=300 {
                let x = xl + (xh - xl) * i as f64 / 300.0;
                let p = pl + (ph - pl) * j as f64 / 300.0;
                m = m.max(phi.direct(x, p).abs());
            }
        }
        assert!(
            m <= phi.a_norm() / (2.0 * PI) * (1.0 + 1e-9),
            "{:?}: {m} {}",
            phi.shape(),
            phi.a_norm()
        );
    }
}

#[test]
fn operator_symbols_are_bounded_in_the_dual() {
    for n in [4usize, 32, 128] {
        let s = scale(n);
        let hn = s.hbar() * n as f64;
        for phi in library() {
            let a = phi.a_norm();
            let p = weak_pairing(&SymbolField::new(s, SymbolKind::SigmaP), &phi).unwrap();
            let h = weak_pairing(&SymbolField::new(s, SymbolKind::SigmaH), &phi).unwrap();
            assert!(p.abs() <= hn * a, "N={n} {:?}", phi.shape());
            assert!(
                h.abs() <= 2f64.sqrt() * hn.powf(1.5) * a,
                "N={n} {:?}",
                phi.shape()
            );
        }
    }
}

/// ∬_{r<√(2μ)} φ (or pφ) in polar coordinates: Gauss–Legendre in r, trapezoid in θ.
fn polar_disk(phi: &TestFunction, mu: f64, with_p: bool) -> f64 {
    let m = 720;
    composite_nodes(0.0, (2.0 * mu).sqrt(), 40, 16)
        .iter()
        .map(|&(r, w)| {
            let ring: f64 = (0..m)
                .map(|j| {
                    let (sn, cs) = (2.0 * PI * j as f64 / m as f64).sin_cos();
                    let (x, p) = (r * cs, r * sn);
                    phi.direct(x, p) * if with_p { p } else { 1.0 }
                })
                .sum();
            w * r * ring * 2.0 * PI / m as f64
        })
        .sum()
}

#[test]
fn pairing_matches_cartesian_quadrature() {
    for n in [3usize, 16] {
        let s = scale(n);
        for phi in [
            TestFunction::gaussian(0.5, 0.5, 1.0),
            TestFunction::hermite_gaussian(0.2, -0.4, 0.8, 1, 2),
        ] {
            for kind in SymbolKind::ALL {
                let f = SymbolField::new(s, kind);
                let a = weak_pairing(&f, &phi).unwrap();
                if matches!(kind, SymbolKind::ChiD | SymbolKind::PChiD) {
                    let b = polar_disk(&phi, s.mu(), kind == SymbolKind::PChiD);
                    assert!((a - b).abs() < 1e-10, "N={n} {kind:?}: {a} {b}");
                } else {
                    let b = cartesian_pairing(&f, &phi, 32).unwrap();
                    assert!(
                        (a - b).abs() < 1e-9 * a.abs().max(1.0),
                        "N={n} {kind:?}: {a} {b}"
                    );
                }
            }
        }
    }
}
