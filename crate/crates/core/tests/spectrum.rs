use nalgebra::{Complex, DMatrix};
use zeno_core::spectrum::*;
use zeno_core::*;

fn scale(n: usize) -> SemiclassicalScale {
    SemiclassicalScale::new(n, 2.0).unwrap()
}

#[test]
fn symmetric_simple_spectrum_with_exact_traces() {
    for n in [1usize, 2, 17, 500, 1024, 1025, 4096] {
        let s = scale(n);
        let e = eigenvalues(&build_jacobi(&s));
        assert_eq!(e.len(), n);
        for i in 0..n {
            assert!((e[i] + e[n - 1 - i]).abs() < 1e-12, "N={n} i={i}");
        }
        for w in e.windows(2) {
            assert!(w[1] - w[0] > 1e-10 * s.hbar().sqrt(), "N={n}");
        }
        let sum: f64 = e.iter().sum();
        assert!(sum.abs() < 1e-12 * n as f64, "N={n}: {sum}");
        let sq: f64 = e.iter().map(|l| l * l).sum();
        let want = s.hbar() * (n * (n - 1)) as f64 / 2.0;
        if n > 1 {
            assert!((sq - want).abs() < 1e-9 * want, "N={n}");
        }
    }
}

#[test]
fn gauge_transform_preserves_the_spectrum() {
    // the complex Hermitian matrix ⟨ψ_j, p̂ ψ_k⟩ = i√(ħ/2)(√k δ_{j+1,k} − √j δ_{j,k+1})
    for n in [2usize, 5, 40, 120] {
        let s = scale(n);
        let c = (s.hbar() / 2.0).sqrt();
        let h = DMatrix::<Complex<f64>>::from_fn(n, n, |j, k| {
            if j + 1 == k {
                Complex::new(0.0, c * (k as f64).sqrt())
            } else if k + 1 == j {
                Complex::new(0.0, -c * (j as f64).sqrt())
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let mut dense: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        dense.sort_by(f64::total_cmp);
        let ours = eigenvalues(&build_jacobi(&s));
        for (a, b) in dense.iter().zip(&ours) {
            assert!((a - b).abs() < 1e-12, "N={n}: {a} {b}");
        }
        // U H U† with U = diag(i^k) is the real Jacobi matrix
        let u = DMatrix::<Complex<f64>>::from_fn(n, n, |j, k| {
            if j == k {
                [
                    Complex::new(1.0, 0.0),
                    Complex::new(0.0, 1.0),
                    Complex::new(-1.0, 0.0),
                    Complex::new(0.0, -1.0),
                ][k % 4]
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let real = &u * &h * u.adjoint();
        let jac = build_jacobi(&s);
        for j in 0..n {
            for k in 0..n {
                let want = if j + 1 == k {
                    jac.off_diagonal[j]
                } else if k + 1 == j {
                    jac.off_diagonal[k]
                } else {
                    0.0
                };
                assert!(
                    (real[(j, k)] - Complex::new(want, 0.0)).norm() < 1e-14,
                    "N={n} ({j},{k})"
                );
            }
        }
    }
}

#[test]
fn eigenvalues_are_zeros_of_the_degree_n_hermite_function() {
    for n in [3usize, 30, 200] {
        let s = scale(n);
        let e = eigenvalues(&build_jacobi(&s));
        let z = hermite_zeros(&s).unwrap();
        for (a, b) in e.iter().zip(&z) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn counting_measure_approaches_the_semicircle() {
    let ks: Vec<f64> = [100usize, 400, 1600]
        .iter()
        .map(|&n| SpectrumReport::new(&scale(n)).ks_distance)
        .collect();
    assert!(ks[1] < ks[0] && ks[2] < ks[1], "{ks:?}");
    let rep = SpectrumReport::new(&scale(400));
    assert_eq!(rep.counting_cdf(-3.0), 0.0);
    assert_eq!(rep.counting_cdf(3.0), 1.0);
    let bins = histogram(&rep.eigenvalues, -2.0, 2.0, 40);
    assert_eq!(bins.iter().map(|b| b.count).sum::<usize>(), 400);
}

#[test]
fn ql_and_bisection_agree() {
    for n in [3usize, 64, 777, 2000] {
        let m = build_jacobi(&scale(n));
        let a = eigenvalues(&m);
        let b = eigenvalues_bisection(&m);
        let tol = 1e-13 * m.norm_bound();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < tol, "N={n}: {x} vs {y}");
        }
    }
}
