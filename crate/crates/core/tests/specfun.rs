use proptest::prelude::*;
use zeno_core::quad::composite_nodes;
use zeno_core::specfun::*;

fn gram_error(n: usize, hbar: f64) -> f64 {
    let r = decay_radius(n, hbar);
    let width = (4.0 * hbar / (hbar * (2 * n + 1) as f64).sqrt()).min(0.25);
    let nodes = composite_nodes(-r, r, (2.0 * r / width).ceil() as usize, 16);
    let rows: Vec<Vec<f64>> = nodes
        .iter()
        .map(|&(x, _)| hermite_sweep(n, hbar, x).unwrap())
        .collect();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in j..n {
            let g: f64 = nodes
                .iter()
                .zip(&rows)
                .map(|((_, w), v)| w * v[j] * v[k])
                .sum();
            worst = worst.max((g - if j == k { 1.0 } else { 0.0 }).abs());
        }
    }
    worst
}

#[test]
fn orthonormal_up_to_degree_64() {
    for hbar in [1.0, 1.0 / 64.0] {
        let e = gram_error(65, hbar);
        assert!(e < 1e-9, "hbar {hbar}: {e:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn three_term_relation(k in 1usize..2000, u in -1.6..1.6f64, hexp in 0.0..12.0f64) {
        let hbar = 2f64.powf(-hexp);
        let x = u * decay_radius(k, hbar);
        let c = hermite_psi(k, hbar, x).unwrap();
        let up = hermite_psi(k + 1, hbar, x).unwrap().mul_scalar((hbar * (k + 1) as f64 / 2.0).sqrt());
        let down = hermite_psi(k - 1, hbar, x).unwrap().mul_scalar((hbar * k as f64 / 2.0).sqrt());
        let lhs = c.mul_scalar(x);
        let res = lhs.add(up.mul_scalar(-1.0)).add(down.mul_scalar(-1.0));
        let size = lhs.ln_abs().max(up.ln_abs()).max(down.ln_abs());
        prop_assert!(res.is_zero() || res.ln_abs() - size < (1e-11f64).ln());
    }

    #[test]
    fn airy_solves_its_ode(x in -10.0..10.0f64) {
        let h = 1e-3;
        let d2 = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        let size = airy_ai(x).abs() + airy_ai_prime(x).abs();
        prop_assert!((d2 - x * airy_ai(x)).abs() < 1e-6 * (1.0 + x * x) * size);
    }
}

#[test]
fn edge_rescaled_function_solves_its_ode() {
    let mu = 2.0;
    for n in [16usize, 128, 1024] {
        let hbar = mu / n as f64;
        let h13 = hbar.cbrt();
        let h23 = h13 * h13;
        let psi = |y: f64| {
            hbar.powf(1.0 / 6.0)
                * hermite_psi(n, hbar, (2.0 * mu).sqrt() + h23 * y)
                    .unwrap()
                    .value()
        };
        for y in [-3.0, -1.0, 0.0, 0.7, 2.0] {
            let e = 1e-3;
            let d2 = (psi(y + e) - 2.0 * psi(y) + psi(y - e)) / (e * e);
            let rhs = (2.0 * (2.0 * mu).sqrt() * y + h23 * y * y - h13) * psi(y);
            assert!(
                (d2 - rhs).abs() < 1e-4 * (1.0 + rhs.abs()),
                "N={n} y={y}: {d2} vs {rhs}"
            );
        }
    }
}

#[test]
fn uniform_bound_on_peak() {
    let mu = 2.0;
    let mut vals = Vec::new();
    for n in [16usize, 64, 256, 1024] {
        let hbar = mu / n as f64;
        let r = decay_radius(n, hbar);
        let m = (0..=20_000)
            .map(|i| {
                hermite_psi(n, hbar, r * i as f64 / 20_000.0)
                    .unwrap()
                    .value()
                    .abs()
            })
            .fold(0.0, f64::max);
        vals.push(m * (n as f64).powf(1.0 / 12.0) * hbar.powf(0.25));
    }
    let (lo, hi) = vals
        .iter()
        .fold((f64::MAX, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(hi / lo < 1.1, "{vals:?}");
}
