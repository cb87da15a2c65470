//! Christoffel–Darboux, momentum and commutator kernels of P_{<N}, and their sine/Airy limits.

use crate::classical::{edge_constant, semicircle_density, SemiclassicalScale};
use crate::error::{Result, ZenoError};
use crate::scalar::Scalar;
use crate::specfun::airy::{airy, airy_complex};
use crate::specfun::hermite::{hermite_pair, sqrt_int, HermitePair, HermiteRecurrence};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Below this value of |u−v|·(local wavenumber) kernels are summed from a Taylor expansion.
const TAYLOR_SWITCH: f64 = 0.5;
const TAYLOR_TERMS: usize = 32;
/// Largest |Im| accepted for complex kernel arguments.
pub const MAX_IMAGINARY_PART: f64 = 2.0;
/// Bulk diagnostics require |x| ≤ this fraction of √(2μ).
pub const BULK_MAX_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum KernelKind {
    /// K_N, the kernel of P_{<N}.
    ChristoffelDarboux,
    /// Q_N, the kernel of P_{<N} p̂ P_{<N}.
    Momentum,
    /// R_N, the kernel of [p̂, P_{<N}] P_{<N}.
    Commutator,
}

/// A kernel and its first mixed partial derivatives at (u, v).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelJet<T> {
    pub value: T,
    pub du: T,
    pub dv: T,
    pub dudv: T,
}

impl<T: Scalar> KernelJet<T> {
    fn scaled(self, c: f64) -> Self {
        Self {
            value: self.value * c,
            du: self.du * c,
            dv: self.dv * c,
            dudv: self.dudv * c,
        }
    }

    /// Component selected by derivative orders (α in u, β in v).
    pub fn component(&self, alpha: u8, beta: u8) -> T {
        match (alpha, beta) {
            (0, 0) => self.value,
            (1, 0) => self.du,
            (0, 1) => self.dv,
            _ => self.dudv,
        }
    }

    /// Chain rule for (t, s) ↦ (x₀ + γt, x₀ + γs) followed by multiplication by γ.
    pub fn rescaled(self, gamma: f64) -> Self {
        Self {
            value: self.value * gamma,
            du: self.du * (gamma * gamma),
            dv: self.dv * (gamma * gamma),
            dudv: self.dudv * (gamma * gamma * gamma),
        }
    }
}

/// Values of the two functions A, B entering a divided difference, at one point.
#[derive(Debug, Clone, Copy)]
struct TwoFunctions<T> {
    a: T,
    da: T,
    b: T,
    db: T,
}

/// Jet of (A(u)B(v) − B(u)A(v))/(u−v) from values at both points.
fn divided_jet_closed<T: Scalar>(pu: &TwoFunctions<T>, pv: &TwoFunctions<T>, d: T) -> KernelJet<T> {
    let f = pu.a * pv.b - pu.b * pv.a;
    let fu = pu.da * pv.b - pu.db * pv.a;
    let fv = pu.a * pv.db - pu.b * pv.da;
    let fuv = pu.da * pv.db - pu.db * pv.da;
    let r = T::from_f64(1.0) / d;
    let r2 = r * r;
    KernelJet {
        value: f * r,
        du: fu * r - f * r2,
        dv: fv * r + f * r2,
        dudv: fuv * r + (fu - fv) * r2 - f * r2 * r * 2.0,
    }
}

/// Same jet from derivatives of A and B at v; `a[k] = A^{(k)}(v)`, likewise `b`.
fn divided_jet_taylor<T: Scalar>(a: &[T], b: &[T], d: T) -> KernelJet<T> {
    let m = a.len().min(b.len()) - 1;
    let zero = T::zero();
    let (mut val, mut du, mut dv, mut dudv) = (zero, zero, zero, zero);
    // pw[j] = d^j / k! maintained incrementally
    let mut inv_fact = 1.0;
    let mut d_pows = vec![T::from_f64(1.0); m + 1];
    for j in 1..=m {
        d_pows[j] = d_pows[j - 1] * d;
    }
    for k in 1..m {
        inv_fact /= k as f64;
        let w = a[k] * b[0] - b[k] * a[0];
        let wp = a[k + 1] * b[0] + a[k] * b[1] - b[k + 1] * a[0] - b[k] * a[1];
        let kf = k as f64;
        val += w * d_pows[k - 1] * inv_fact;
        dv += wp * d_pows[k - 1] * inv_fact;
        if k >= 2 {
            du += w * d_pows[k - 2] * ((kf - 1.0) * inv_fact);
            dv += -(w * d_pows[k - 2] * ((kf - 1.0) * inv_fact));
            dudv += wp * d_pows[k - 2] * ((kf - 1.0) * inv_fact);
        }
        if k >= 3 {
            dudv += -(w * d_pows[k - 3] * ((kf - 1.0) * (kf - 2.0) * inv_fact));
        }
    }
    KernelJet {
        value: val,
        du,
        dv,
        dudv,
    }
}

/// Derivatives f^{(k)}, k < len, of a solution of f″ = q f with quadratic q.
fn ode_derivatives<T: Scalar>(f0: T, f1: T, q: [T; 3], len: usize) -> Vec<T> {
    let mut f = Vec::with_capacity(len);
    f.push(f0);
    f.push(f1);
    for k in 0..len.saturating_sub(2) {
        let kf = k as f64;
        let mut next = q[0] * f[k];
        if k >= 1 {
            next += q[1] * f[k - 1] * kf;
        }
        if k >= 2 {
            next += q[2] * f[k - 2] * (kf * (kf - 1.0) / 2.0);
        }
        f.push(next);
    }
    f
}

fn check_complex_argument<T: Scalar>(z: T) -> Result<()> {
    if z.im().abs() > MAX_IMAGINARY_PART {
        Err(ZenoError::OutOfDomain {
            what: "kernel argument",
            detail: format!("|Im z| = {} exceeds {}", z.im().abs(), MAX_IMAGINARY_PART),
        })
    } else {
        Ok(())
    }
}

/// ψ_{N−1}, ψ_N and their derivatives at one coordinate.
#[derive(Debug, Clone, Copy)]
pub struct EdgePair<T> {
    pub pair: HermitePair<T>,
}

impl<T: Scalar> EdgePair<T> {
    pub fn new(scale: &SemiclassicalScale, z: T) -> Result<Self> {
        check_complex_argument(z)?;
        Ok(Self {
            pair: hermite_pair(scale.n(), scale.hbar(), z)?,
        })
    }

    pub(crate) fn from_pair(pair: HermitePair<T>) -> Self {
        Self { pair }
    }

    fn functions(&self) -> TwoFunctions<T> {
        TwoFunctions {
            a: self.pair.cur,
            da: self.pair.derivative_mantissa(),
            b: self.pair.prev,
            db: self.pair.prev_derivative_mantissa(),
        }
    }

    fn q_coefficients(&self, degree: usize) -> [T; 3] {
        let h = self.pair.hbar;
        let z = self.pair.z;
        [
            z * z / (h * h) - T::from_f64((2.0 * degree as f64 + 1.0) / h),
            z * (2.0 / (h * h)),
            T::from_f64(2.0 / (h * h)),
        ]
    }

    fn wavenumber(&self) -> f64 {
        let q = self.q_coefficients(self.pair.k);
        q[0].modulus().sqrt() + q[1].modulus().cbrt() + q[2].modulus().sqrt().sqrt()
    }

    /// ψ_N(z) as a plain value.
    pub fn psi_n(&self) -> T {
        self.pair.cur.scale2(self.pair.exponent)
    }

    /// ψ_{N−1}(z) as a plain value.
    pub fn psi_n_minus_1(&self) -> T {
        self.pair.prev.scale2(self.pair.exponent)
    }
}

/// Jet of K_N from the pairs at u and v. This is the Christoffel–Darboux route.
pub fn cd_jet_from_pairs<T: Scalar>(
    scale: &SemiclassicalScale,
    pu: &EdgePair<T>,
    pv: &EdgePair<T>,
) -> KernelJet<T> {
    let n = scale.n();
    let c = (scale.hbar() * n as f64 / 2.0).sqrt();
    let d = pu.pair.z - pv.pair.z;
    let lam = pu.wavenumber().max(pv.wavenumber());
    let jet = if d.modulus() * lam < TAYLOR_SWITCH {
        let a = ode_derivatives(
            pv.pair.cur,
            pv.pair.derivative_mantissa(),
            pv.q_coefficients(n),
            TAYLOR_TERMS + 2,
        );
        let b = ode_derivatives(
            pv.pair.prev,
            pv.pair.prev_derivative_mantissa(),
            pv.q_coefficients(n - 1),
            TAYLOR_TERMS + 2,
        );
        let j = divided_jet_taylor(&a, &b, d);
        let e = 2 * pv.pair.exponent;
        KernelJet {
            value: j.value.scale2(e),
            du: j.du.scale2(e),
            dv: j.dv.scale2(e),
            dudv: j.dudv.scale2(e),
        }
    } else {
        let j = divided_jet_closed(&pu.functions(), &pv.functions(), d);
        let e = pu.pair.exponent + pv.pair.exponent;
        KernelJet {
            value: j.value.scale2(e),
            du: j.du.scale2(e),
            dv: j.dv.scale2(e),
            dudv: j.dudv.scale2(e),
        }
    };
    jet.scaled(c)
}

pub fn cd_kernel_jet<T: Scalar>(scale: &SemiclassicalScale, u: T, v: T) -> Result<KernelJet<T>> {
    let pu = EdgePair::new(scale, u)?;
    let pv = EdgePair::new(scale, v)?;
    Ok(cd_jet_from_pairs(scale, &pu, &pv))
}

/// K_N(u, v) by the Christoffel–Darboux formula.
pub fn cd_kernel<T: Scalar>(scale: &SemiclassicalScale, u: T, v: T) -> Result<T> {
    Ok(cd_kernel_jet(scale, u, v)?.value)
}

/// Direct sums over the eigenfunctions, accumulated in one joint sweep.
#[derive(Debug, Clone, Copy)]
pub struct KernelSums<T> {
    /// Σ_{k<N} ψ_k(u)ψ_k(v).
    pub direct: T,
    /// Q_N(u, v) / i.
    pub momentum_over_i: T,
    pub pu: EdgePair<T>,
    pub pv: EdgePair<T>,
}

pub fn kernel_sums<T: Scalar>(scale: &SemiclassicalScale, u: T, v: T) -> Result<KernelSums<T>> {
    check_complex_argument(u)?;
    check_complex_argument(v)?;
    let n = scale.n();
    let h = scale.hbar();
    let mut ru = HermiteRecurrence::new(h, u)?;
    let mut rv = HermiteRecurrence::new(h, v)?;
    let (_, cu, eu) = ru.raw();
    let (_, cv, ev) = rv.raw();
    let mut frame = eu + ev;
    let mut acc_k = cu * cv;
    let mut acc_q = T::zero();
    for k in 1..=n {
        ru.advance();
        rv.advance();
        if k == n {
            break;
        }
        let (pu, cu, eu) = ru.raw();
        let (pv, cv, ev) = rv.raw();
        if eu + ev != frame {
            acc_k = acc_k.scale2(frame - eu - ev);
            acc_q = acc_q.scale2(frame - eu - ev);
            frame = eu + ev;
        }
        acc_k += cu * cv;
        acc_q += (cu * pv - pu * cv) * sqrt_int(k);
    }
    Ok(KernelSums {
        direct: acc_k.scale2(frame),
        momentum_over_i: acc_q.scale2(frame) * (h / 2.0).sqrt(),
        pu: EdgePair::from_pair(ru.pair()),
        pv: EdgePair::from_pair(rv.pair()),
    })
}

/// Σ_{k<N} ψ_k(u)ψ_k(v); the oracle route for [`cd_kernel`].
pub fn kernel_direct_sum<T: Scalar>(scale: &SemiclassicalScale, u: T, v: T) -> Result<T> {
    Ok(kernel_sums(scale, u, v)?.direct)
}

/// Q_N(u, v) by its defining sum.
pub fn momentum_kernel(scale: &SemiclassicalScale, u: f64, v: f64) -> Result<Complex64> {
    Ok(Complex64::new(
        0.0,
        kernel_sums(scale, u, v)?.momentum_over_i,
    ))
}

/// R_N(u, v) = i√(ħN/2) ψ_N(u) ψ_{N−1}(v).
pub fn commutator_kernel(scale: &SemiclassicalScale, u: f64, v: f64) -> Result<Complex64> {
    let pu = EdgePair::new(scale, u)?;
    let pv = EdgePair::new(scale, v)?;
    let r = commutator_from_pairs(scale, &pu, &pv);
    Ok(Complex64::new(0.0, r))
}

/// R_N / i from pairs.
pub fn commutator_from_pairs(
    scale: &SemiclassicalScale,
    pu: &EdgePair<f64>,
    pv: &EdgePair<f64>,
) -> f64 {
    let c = (scale.hbar() * scale.n() as f64 / 2.0).sqrt();
    c * (pu.pair.cur * pv.pair.prev).scale2(pu.pair.exponent + pv.pair.exponent)
}

/// Q_N / i from pairs via Q_N = −iħ ∂_u K_N − R_N.
pub fn momentum_from_pairs(
    scale: &SemiclassicalScale,
    pu: &EdgePair<f64>,
    pv: &EdgePair<f64>,
) -> f64 {
    let jet = cd_jet_from_pairs(scale, pu, pv);
    -scale.hbar() * jet.du - commutator_from_pairs(scale, pu, pv)
}

#[derive(Debug, Clone, Copy)]
pub struct KernelEvaluator {
    pub scale: SemiclassicalScale,
    pub kind: KernelKind,
}

impl KernelEvaluator {
    pub fn new(scale: SemiclassicalScale, kind: KernelKind) -> Self {
        Self { scale, kind }
    }

    pub fn eval(&self, u: f64, v: f64) -> Result<Complex64> {
        match self.kind {
            KernelKind::ChristoffelDarboux => {
                Ok(Complex64::new(cd_kernel(&self.scale, u, v)?, 0.0))
            }
            KernelKind::Momentum => momentum_kernel(&self.scale, u, v),
            KernelKind::Commutator => commutator_kernel(&self.scale, u, v),
        }
    }
}

/// Zoom window (t, s) ↦ (x₀ + γt, x₀ + γs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaledKernelWindow {
    x0: f64,
    gamma: f64,
}

impl RescaledKernelWindow {
    pub fn new(x0: f64, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) || !x0.is_finite() {
            return Err(ZenoError::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "zoom scale must be positive and the center finite",
            });
        }
        Ok(Self { x0, gamma })
    }

    pub fn bulk(scale: &SemiclassicalScale, x0: f64) -> Self {
        Self {
            x0,
            gamma: scale.hbar(),
        }
    }

    pub fn edge(scale: &SemiclassicalScale) -> Self {
        Self {
            x0: (2.0 * scale.mu()).sqrt(),
            gamma: scale.hbar().powf(2.0 / 3.0),
        }
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn position<T: Scalar>(&self, t: T) -> T {
        t * self.gamma + T::from_f64(self.x0)
    }
}

/// γ K_N(x₀ + γt, x₀ + γs).
pub fn rescaled_kernel<T: Scalar>(
    scale: &SemiclassicalScale,
    w: &RescaledKernelWindow,
    t: T,
    s: T,
) -> Result<T> {
    Ok(cd_kernel(scale, w.position(t), w.position(s))? * w.gamma)
}

pub fn rescaled_kernel_jet<T: Scalar>(
    scale: &SemiclassicalScale,
    w: &RescaledKernelWindow,
    t: T,
    s: T,
) -> Result<KernelJet<T>> {
    Ok(cd_kernel_jet(scale, w.position(t), w.position(s))?.rescaled(w.gamma))
}

/// sin(π(u−v))/(π(u−v)).
pub fn sine_kernel(u: f64, v: f64) -> f64 {
    sinc_derivatives(u - v).0
}

/// sinc(w) = sin(πw)/(πw) and its first two derivatives.
fn sinc_derivatives(w: f64) -> (f64, f64, f64) {
    let th = PI * w;
    if th.abs() < 0.5 {
        // Σ (−1)^n θ^{2n}/(2n+1)!
        let (mut g, mut g1, mut g2) = (0.0, 0.0, 0.0);
        let mut c = 1.0;
        for n in 0..12 {
            let nf = n as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            g += sign * c * th.powi(2 * n);
            if n >= 1 {
                g1 += sign * c * 2.0 * nf * th.powi(2 * n - 1);
                g2 += sign * c * 2.0 * nf * (2.0 * nf - 1.0) * th.powi(2 * n - 2);
            }
            c /= (2.0 * nf + 2.0) * (2.0 * nf + 3.0);
        }
        (g, PI * g1, PI * PI * g2)
    } else {
        let (s, co) = th.sin_cos();
        let g = s / th;
        let g1 = (th * co - s) / (th * th);
        let g2 = (-th * th * s - 2.0 * th * co + 2.0 * s) / (th * th * th);
        (g, PI * g1, PI * PI * g2)
    }
}

/// Jet of a·K_sine(at, as) in (t, s).
pub fn sine_kernel_jet(a: f64, t: f64, s: f64) -> KernelJet<f64> {
    let (g, g1, g2) = sinc_derivatives(a * (t - s));
    KernelJet {
        value: a * g,
        du: a * a * g1,
        dv: -a * a * g1,
        dudv: -a * a * a * g2,
    }
}

/// Airy values at real or complex points.
pub trait AiryArgument: Scalar {
    fn airy_pair(self) -> Result<(Self, Self)>;
}

impl AiryArgument for f64 {
    fn airy_pair(self) -> Result<(f64, f64)> {
        let v = airy(self);
        Ok((v.ai, v.aip))
    }
}

impl AiryArgument for Complex64 {
    fn airy_pair(self) -> Result<(Complex64, Complex64)> {
        airy_complex(self)
    }
}

/// Jet of K_Ai(u, v) = (Ai(u)Ai′(v) − Ai′(u)Ai(v))/(u−v).
pub fn airy_kernel_jet<T: AiryArgument>(u: T, v: T) -> Result<KernelJet<T>> {
    let (au, apu) = u.airy_pair()?;
    let (av, apv) = v.airy_pair()?;
    let d = u - v;
    let lam = 1.0 + u.modulus().sqrt().max(v.modulus().sqrt());
    if d.modulus() * lam < TAYLOR_SWITCH {
        let one = T::from_f64(1.0);
        let a = ode_derivatives(av, apv, [v, one, T::zero()], TAYLOR_TERMS + 3);
        let b = a[1..].to_vec();
        Ok(divided_jet_taylor(&a[..TAYLOR_TERMS + 2], &b, d))
    } else {
        let pu = TwoFunctions {
            a: au,
            da: apu,
            b: apu,
            db: u * au,
        };
        let pv = TwoFunctions {
            a: av,
            da: apv,
            b: apv,
            db: v * av,
        };
        Ok(divided_jet_closed(&pu, &pv, d))
    }
}

pub fn airy_kernel(u: f64, v: f64) -> f64 {
    airy_kernel_jet(u, v).map(|j| j.value).unwrap_or(f64::NAN)
}

pub fn airy_kernel_complex(u: Complex64, v: Complex64) -> Result<Complex64> {
    Ok(airy_kernel_jet(u, v)?.value)
}

fn jet_errors<T: Scalar>(k: &KernelJet<T>, l: &KernelJet<T>, out: &mut [[f64; 2]; 2]) {
    for (a, row) in out.iter_mut().enumerate() {
        for (b, e) in row.iter_mut().enumerate() {
            let diff = (k.component(a as u8, b as u8) - l.component(a as u8, b as u8)).modulus();
            if diff > *e || diff.is_nan() {
                *e = diff;
            }
        }
    }
}

fn check_orders(alpha: u8, beta: u8) -> Result<()> {
    if alpha > 1 || beta > 1 {
        Err(ZenoError::InvalidParameter {
            name: "derivative order",
            value: alpha.max(beta) as f64,
            reason: "orders must be 0 or 1",
        })
    } else {
        Ok(())
    }
}

/// Sup over the product grid `ts × ts` of the bulk errors for all four derivative orders,
/// indexed `[α][β]`.
pub fn bulk_limit_errors(scale: &SemiclassicalScale, x: f64, ts: &[f64]) -> Result<[[f64; 2]; 2]> {
    let edge = (2.0 * scale.mu()).sqrt();
    if !(x.abs() <= BULK_MAX_FRACTION * edge) {
        return Err(ZenoError::OutOfDomain {
            what: "bulk center",
            detail: format!(
                "|x| = {} is within {} of the edge",
                x.abs(),
                (1.0 - BULK_MAX_FRACTION) * edge
            ),
        });
    }
    let w = RescaledKernelWindow::bulk(scale, x);
    let a = scale.mu() * semicircle_density(x, scale.mu());
    let pairs: Vec<EdgePair<f64>> = ts
        .iter()
        .map(|&t| EdgePair::new(scale, w.position(t)))
        .collect::<Result<_>>()?;
    let mut out = [[0.0; 2]; 2];
    for (i, &t) in ts.iter().enumerate() {
        for (j, &s) in ts.iter().enumerate() {
            let k = cd_jet_from_pairs(scale, &pairs[i], &pairs[j]).rescaled(w.gamma);
            let l = sine_kernel_jet(a, t, s);
            jet_errors(&k, &l, &mut out);
        }
    }
    Ok(out)
}

pub fn bulk_limit_error(
    scale: &SemiclassicalScale,
    x: f64,
    ts: &[f64],
    alpha: u8,
    beta: u8,
) -> Result<f64> {
    check_orders(alpha, beta)?;
    Ok(bulk_limit_errors(scale, x, ts)?[alpha as usize][beta as usize])
}

/// Edge analogue of [`bulk_limit_errors`] against c_μ K_Ai(c_μ t, c_μ s).
pub fn edge_limit_errors<T: AiryArgument>(
    scale: &SemiclassicalScale,
    ts: &[T],
) -> Result<[[f64; 2]; 2]> {
    let w = RescaledKernelWindow::edge(scale);
    let c = edge_constant(scale.mu());
    let pairs: Vec<EdgePair<T>> = ts
        .iter()
        .map(|&t| EdgePair::new(scale, w.position(t)))
        .collect::<Result<_>>()?;
    let mut out = [[0.0; 2]; 2];
    for (i, &t) in ts.iter().enumerate() {
        for (j, &s) in ts.iter().enumerate() {
            let k = cd_jet_from_pairs(scale, &pairs[i], &pairs[j]).rescaled(w.gamma);
            let l = airy_kernel_jet(t * c, s * c)?.rescaled(c);
            jet_errors(&k, &l, &mut out);
        }
    }
    Ok(out)
}

pub fn edge_limit_error<T: AiryArgument>(
    scale: &SemiclassicalScale,
    ts: &[T],
    alpha: u8,
    beta: u8,
) -> Result<f64> {
    check_orders(alpha, beta)?;
    Ok(edge_limit_errors(scale, ts)?[alpha as usize][beta as usize])
}

/// |K_{N,√(2μ),ħ^{2/3}}(−y, y)|.
pub fn antidiagonal_tail(scale: &SemiclassicalScale, y: f64) -> Result<f64> {
    let w = RescaledKernelWindow::edge(scale);
    Ok(rescaled_kernel(scale, &w, -y, y)?.abs())
}
