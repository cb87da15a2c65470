//! Test functions with closed-form partial Fourier transforms 𝓕₂φ(x, y) = ∫ φ(x, p) e^{−ipy} dp.

use crate::quad::gauss_legendre;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Gaussian factors below this many widths are treated as zero.
const GAUSS_CUT: f64 = 9.2;

#[derive(Debug, Clone, PartialEq)]
pub enum TestShape {
    /// exp(−((x−x₀)² + (p−p₀)²)/(2w²)).
    Gaussian { x0: f64, p0: f64, width: f64 },
    /// H_m(ξ) H_n(η) e^{−(ξ²+η²)/2} with ξ = (x−x₀)/w, η = (p−p₀)/w (physicists' Hermite).
    HermiteGaussian {
        x0: f64,
        p0: f64,
        width: f64,
        m: usize,
        n: usize,
    },
    /// Σ_k c_k (r²/w²)^k e^{−r²/(2w²)}, centered at the origin.
    RadialPolyGaussian { coeffs: Vec<f64>, width: f64 },
}

#[derive(Debug)]
pub struct TestFunction {
    shape: TestShape,
    a_norm: OnceLock<f64>,
}

impl Clone for TestFunction {
    fn clone(&self) -> Self {
        Self::new(self.shape.clone())
    }
}

fn hermite_phys(n: usize, t: f64) -> f64 {
    let (mut a, mut b) = (0.0, 1.0);
    for k in 0..n {
        let c = 2.0 * t * b - 2.0 * k as f64 * a;
        a = b;
        b = c;
    }
    b
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

/// (−i)^n
fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

impl TestFunction {
    pub fn new(shape: TestShape) -> Self {
        Self {
            shape,
            a_norm: OnceLock::new(),
        }
    }

    pub fn gaussian(x0: f64, p0: f64, width: f64) -> Self {
        Self::new(TestShape::Gaussian { x0, p0, width })
    }

    pub fn hermite_gaussian(x0: f64, p0: f64, width: f64, m: usize, n: usize) -> Self {
        Self::new(TestShape::HermiteGaussian {
            x0,
            p0,
            width,
            m,
            n,
        })
    }

    pub fn radial(coeffs: Vec<f64>, width: f64) -> Self {
        Self::new(TestShape::RadialPolyGaussian { coeffs, width })
    }

    pub fn shape(&self) -> &TestShape {
        &self.shape
    }

    pub fn direct(&self, x: f64, p: f64) -> f64 {
        match &self.shape {
            TestShape::Gaussian { x0, p0, width } => {
                let (a, b) = ((x - x0) / width, (p - p0) / width);
                (-(a * a + b * b) / 2.0).exp()
            }
            TestShape::HermiteGaussian {
                x0,
                p0,
                width,
                m,
                n,
            } => {
                let (a, b) = ((x - x0) / width, (p - p0) / width);
                hermite_phys(*m, a) * hermite_phys(*n, b) * (-(a * a + b * b) / 2.0).exp()
            }
            TestShape::RadialPolyGaussian { coeffs, width } => {
                let s = (x * x + p * p) / (width * width);
                let poly = coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c);
                poly * (-s / 2.0).exp()
            }
        }
    }

    pub fn partial_fourier(&self, x: f64, y: f64) -> Complex64 {
        let root = (2.0 * PI).sqrt();
        match &self.shape {
            TestShape::Gaussian { x0, p0, width } => {
                let a = (x - x0) / width;
                let wy = width * y;
                let mag = (-(a * a + wy * wy) / 2.0).exp() * width * root;
                Complex64::from_polar(mag, -p0 * y)
            }
            TestShape::HermiteGaussian {
                x0,
                p0,
                width,
                m,
                n,
            } => {
                let a = (x - x0) / width;
                let wy = width * y;
                let fx = hermite_phys(*m, a) * (-a * a / 2.0).exp();
                let fy = hermite_phys(*n, wy) * (-wy * wy / 2.0).exp();
                minus_i_pow(*n) * Complex64::from_polar(fx * fy * width * root, -p0 * y)
            }
            TestShape::RadialPolyGaussian { coeffs, width } => {
                // Expand (x² + p²)^k and transform each p^{2l} e^{−p²/(2w²)} in closed form.
                let w2 = width * width;
                let a = w2 / 2.0;
                let t = a.sqrt() * y;
                let g = (-a * y * y).exp() * width * root;
                let ex = (-x * x / (2.0 * w2)).exp();
                let mut total = 0.0;
                for (k, &c) in coeffs.iter().enumerate() {
                    if c == 0.0 {
                        continue;
                    }
                    let mut s = 0.0;
                    for l in 0..=k {
                        let xpow = (x * x).powi((k - l) as i32);
                        // ∫ p^{2l} e^{−p²/(2w²)} e^{−ipy} dp = g (−1)^l a^l H_{2l}(√a y)
                        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                        let ft = sign * a.powi(l as i32) * hermite_phys(2 * l, t);
                        s += binomial(k, l) * xpow * ft;
                    }
                    total += c * s / w2.powi(k as i32);
                }
                Complex64::new(total * g * ex, 0.0)
            }
        }
    }

    /// Interval in x outside which φ (and 𝓕₂φ) is negligible.
    pub fn x_extent(&self) -> (f64, f64) {
        match &self.shape {
            TestShape::Gaussian { x0, width, .. } => {
                (x0 - GAUSS_CUT * width, x0 + GAUSS_CUT * width)
            }
            TestShape::HermiteGaussian { x0, width, m, .. } => {
                let r = GAUSS_CUT + (2.0 * *m as f64 + 1.0).sqrt();
                (x0 - r * width, x0 + r * width)
            }
            TestShape::RadialPolyGaussian { coeffs, width } => {
                let r = (GAUSS_CUT + (4.0 * coeffs.len() as f64 + 1.0).sqrt()) * width;
                (-r, r)
            }
        }
    }

    /// Interval in p outside which φ is negligible.
    pub fn p_extent(&self) -> (f64, f64) {
        match &self.shape {
            TestShape::Gaussian { p0, width, .. } => {
                (p0 - GAUSS_CUT * width, p0 + GAUSS_CUT * width)
            }
            TestShape::HermiteGaussian { p0, width, n, .. } => {
                let r = GAUSS_CUT + (2.0 * *n as f64 + 1.0).sqrt();
                (p0 - r * width, p0 + r * width)
            }
            TestShape::RadialPolyGaussian { .. } => self.x_extent(),
        }
    }

    /// Bound Y with |𝓕₂φ(x, y)| negligible for |y| > Y.
    pub fn y_extent(&self) -> f64 {
        match &self.shape {
            TestShape::Gaussian { width, .. } => GAUSS_CUT / width,
            TestShape::HermiteGaussian { width, n, .. } => {
                (GAUSS_CUT + (2.0 * *n as f64 + 1.0).sqrt()) / width
            }
            TestShape::RadialPolyGaussian { coeffs, width } => {
                (GAUSS_CUT + (4.0 * coeffs.len() as f64 + 1.0).sqrt()) * 2f64.sqrt() / width
            }
        }
    }

    /// ‖φ‖_𝒜 = ∫ sup_x |𝓕₂φ(x, y)| dy, computed once.
    pub fn a_norm(&self) -> f64 {
        *self.a_norm.get_or_init(|| self.compute_a_norm())
    }

    fn sup_x(&self, y: f64) -> f64 {
        let (lo, hi) = self.x_extent();
        let m = 801;
        let h = (hi - lo) / (m - 1) as f64;
        let f = |x: f64| self.partial_fourier(x, y).norm();
        let (mut best_x, mut best) = (lo, 0.0);
        for i in 0..m {
            let x = lo + h * i as f64;
            let v = f(x);
            if v > best {
                best = v;
                best_x = x;
            }
        }
        // golden-section polish of the grid maximum
        let (mut a, mut b) = (best_x - h, best_x + h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        for _ in 0..60 {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = f(d);
            }
        }
        best.max(fc).max(fd)
    }

    fn compute_a_norm(&self) -> f64 {
        // sup_x is attained at x = x₀ and integrates to 2π for every width
        if let TestShape::Gaussian { .. } = self.shape {
            return 2.0 * PI;
        }
        let y = self.y_extent();
        let rule = gauss_legendre(24);
        let panels = 64;
        let h = 2.0 * y / panels as f64;
        (0..panels)
            .map(|j| {
                let lo = -y + h * j as f64;
                rule.integrate(lo, lo + h, |t| self.sup_x(t))
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inverse_transform(phi: &TestFunction, x: f64, p: f64) -> f64 {
        let y = phi.y_extent();
        let rule = gauss_legendre(32);
        let panels = 80;
        let h = 2.0 * y / panels as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..panels {
            let lo = -y + h * j as f64;
            for (t, w) in rule.mapped(lo, lo + h) {
                s += phi.partial_fourier(x, t) * Complex64::from_polar(w, p * t);
            }
        }
        s.re / (2.0 * PI)
    }

    #[test]
    fn transforms_invert_to_direct_values() {
        let fns = [
            TestFunction::gaussian(0.5, -0.3, 0.8),
            TestFunction::hermite_gaussian(0.2, 0.4, 0.9, 2, 3),
            TestFunction::radial(vec![1.0, -0.5, 0.25], 0.7),
        ];
        for phi in &fns {
            for &(x, p) in &[(0.1, 0.2), (-0.7, 1.1), (1.3, -0.4)] {
                let a = phi.direct(x, p);
                let b = inverse_transform(phi, x, p);
                assert!(
                    (a - b).abs() < 1e-8,
                    "{:?} at ({x},{p}): {a} vs {b}",
                    phi.shape()
                );
            }
        }
    }

    #[test]
    fn gaussian_a_norm_closed_form() {
        let phi = TestFunction::gaussian(0.0, 0.0, 1.3);
        let numeric = {
            let rule = gauss_legendre(64);
            rule.integrate(-phi.y_extent(), phi.y_extent(), |y| phi.sup_x(y))
        };
        assert!((numeric - phi.a_norm()).abs() < 1e-8);
    }
}
