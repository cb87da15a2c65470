//! Airy function Ai, its derivative, and the integrated Airy function Ai₁(ξ) = ∫_ξ^∞ Ai.

use crate::dd::DoubleDouble;
use crate::error::{Result, ZenoError};
use crate::quad::gauss_legendre;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

/// Ai(0) and −Ai′(0) in double-double.
const AI0: DoubleDouble = DoubleDouble::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
const MAIP0: DoubleDouble = DoubleDouble::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);

const SERIES_LIMIT: f64 = 8.0;
const TAIL_LIMIT: f64 = 15.0;
/// Largest |z| accepted by the complex evaluator.
pub const COMPLEX_AIRY_RADIUS: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValues {
    pub ai: f64,
    pub aip: f64,
}

/// Maclaurin series in double-double; returns (Ai, Ai′, Ai₁).
fn maclaurin(x: f64) -> (f64, f64, f64) {
    let xd = DoubleDouble::from_f64(x);
    let x3 = xd * xd * xd;
    // f = Σ t_k, f′ = Σ tp_k, g = Σ s_k, g′ = Σ gp_k.
    let mut t = DoubleDouble::ONE;
    let mut s = xd;
    let mut tp = DoubleDouble::ZERO;
    let mut gp = DoubleDouble::ONE;
    let mut f = t;
    let mut g = s;
    let mut fp = DoubleDouble::ZERO;
    let mut gps = gp;
    let mut fi = t;
    let mut gi = s.div_f64(2.0);
    for k in 1..400usize {
        let kf = k as f64;
        t = (t * x3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        s = (s * x3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        tp = if k == 1 {
            (xd * xd).div_f64(2.0)
        } else {
            (tp * x3).div_f64((3.0 * kf - 3.0) * (3.0 * kf - 1.0))
        };
        gp = (gp * x3).div_f64((3.0 * kf - 2.0) * (3.0 * kf));
        f = f + t;
        g = g + s;
        fp = fp + tp;
        gps = gps + gp;
        fi = fi + t.div_f64(3.0 * kf + 1.0);
        gi = gi + s.div_f64(3.0 * kf + 2.0);
        let tail = t.hi.abs() + s.hi.abs() + tp.hi.abs() + gp.hi.abs();
        let scale = f.hi.abs() + g.hi.abs() + fp.hi.abs() + gps.hi.abs();
        if k > 2 && tail < 1e-34 * scale {
            break;
        }
    }
    let ai = AI0 * f - MAIP0 * g;
    let aip = AI0 * fp - MAIP0 * gps;
    let third = DoubleDouble::ONE.div_f64(3.0);
    let ai1 = third - (AI0 * fi - MAIP0 * gi) * xd;
    (ai.to_f64(), aip.to_f64(), ai1.to_f64())
}

/// Coefficients u_k, v_k of the large-argument expansions.
fn uv_coefficients() -> &'static [(f64, f64)] {
    static C: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    C.get_or_init(|| {
        let mut out = Vec::with_capacity(64);
        let mut u = 1.0f64;
        out.push((1.0, 1.0));
        for k in 1..64 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
            out.push((u, v));
        }
        out
    })
}

fn asymptotic(x: f64) -> AiryValues {
    let c = uv_coefficients();
    let z = x.abs();
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let q = z.sqrt().sqrt();
    if x > 0.0 {
        let mut su = 0.0;
        let mut sv = 0.0;
        let mut pw = 1.0;
        let mut last = f64::INFINITY;
        for (k, &(u, v)) in c.iter().enumerate() {
            let term = u * pw;
            if term.abs() > last || term.abs() < 1e-18 {
                break;
            }
            last = term.abs();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            su += sign * term;
            sv += sign * v * pw;
            pw /= zeta;
        }
        let e = (-zeta).exp() / (2.0 * PI.sqrt());
        AiryValues {
            ai: e / q * su,
            aip: -e * q * sv,
        }
    } else {
        let (mut ue, mut uo, mut ve, mut vo) = (0.0, 0.0, 0.0, 0.0);
        let mut pw = 1.0;
        let mut last = f64::INFINITY;
        for (k, &(u, v)) in c.iter().enumerate() {
            let term = u * pw;
            if term.abs() > last || term.abs() < 1e-18 {
                break;
            }
            last = term.abs();
            // (−1)^m on u_{2m} and u_{2m+1}
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                ue += sign * term;
                ve += sign * v * pw;
            } else {
                uo += sign * term;
                vo += sign * v * pw;
            }
            pw /= zeta;
        }
        let (s, co) = (zeta - FRAC_PI_4).sin_cos();
        let rp = 1.0 / PI.sqrt();
        AiryValues {
            ai: rp / q * (co * ue + s * uo),
            aip: rp * q * (s * ve - co * vo),
        }
    }
}

pub fn airy(x: f64) -> AiryValues {
    if x.is_nan() {
        return AiryValues {
            ai: f64::NAN,
            aip: f64::NAN,
        };
    }
    if x.abs() <= SERIES_LIMIT {
        let (ai, aip, _) = maclaurin(x);
        AiryValues { ai, aip }
    } else {
        asymptotic(x)
    }
}

pub fn airy_ai(x: f64) -> f64 {
    airy(x).ai
}

pub fn airy_ai_prime(x: f64) -> f64 {
    airy(x).aip
}

/// Σ a_k [Ai′(ξ) ξ^{−3k−1} + (3k+1) Ai(ξ) ξ^{−3k−2}], the repeated by-parts expansion of ∫ Ai.
fn by_parts_series(xi: f64) -> f64 {
    let AiryValues { ai, aip } = asymptotic(xi);
    let x3 = xi * xi * xi;
    let mut a = 1.0;
    let mut pw = 1.0 / xi;
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for k in 0..200usize {
        let kf = k as f64;
        let term = a * (aip * pw + (3.0 * kf + 1.0) * ai * pw / xi);
        if term.abs() > last {
            break;
        }
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        last = term.abs();
        a *= (3.0 * kf + 1.0) * (3.0 * kf + 2.0);
        pw /= x3;
    }
    sum
}

fn ai1_anchor_pos() -> f64 {
    static V: OnceLock<f64> = OnceLock::new();
    *V.get_or_init(|| -by_parts_series(TAIL_LIMIT))
}

fn ai1_anchor_neg() -> f64 {
    static V: OnceLock<f64> = OnceLock::new();
    *V.get_or_init(|| maclaurin(-SERIES_LIMIT).2)
}

fn integrate_asymptotic(a: f64, b: f64, width: f64) -> f64 {
    let rule = gauss_legendre(20);
    let panels = (((b - a) / width).ceil() as usize).max(1);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|j| {
            let lo = a + h * j as f64;
            rule.integrate(lo, lo + h, |u| asymptotic(u).ai)
        })
        .sum()
}

/// Integrated Airy function Ai₁(ξ) = ∫_ξ^∞ Ai(u) du.
pub fn airy_integrated(xi: f64) -> f64 {
    if xi.is_nan() {
        f64::NAN
    } else if xi >= TAIL_LIMIT {
        -by_parts_series(xi)
    } else if xi > SERIES_LIMIT {
        integrate_asymptotic(xi, TAIL_LIMIT, 1.0) + ai1_anchor_pos()
    } else if xi >= -SERIES_LIMIT {
        maclaurin(xi).2
    } else if xi > -TAIL_LIMIT {
        integrate_asymptotic(xi, -SERIES_LIMIT, 0.5) + ai1_anchor_neg()
    } else {
        1.0 - by_parts_series(xi)
    }
}

/// Ai, Ai′ and Ai₁ at one point, sharing the series pass where possible.
pub fn airy_with_integral(xi: f64) -> (f64, f64, f64) {
    if xi.abs() <= SERIES_LIMIT {
        maclaurin(xi)
    } else {
        let v = asymptotic(xi);
        (v.ai, v.aip, airy_integrated(xi))
    }
}

/// Ai(z) and Ai′(z) for complex |z| ≤ [`COMPLEX_AIRY_RADIUS`] by the Maclaurin series.
pub fn airy_complex(z: Complex64) -> Result<(Complex64, Complex64)> {
    if !(z.norm() <= COMPLEX_AIRY_RADIUS) {
        return Err(ZenoError::OutOfDomain {
            what: "complex Airy argument",
            detail: format!("|z| = {} exceeds {}", z.norm(), COMPLEX_AIRY_RADIUS),
        });
    }
    let z3 = z * z * z;
    let one = Complex64::new(1.0, 0.0);
    let (mut t, mut s, mut tp, mut gp) = (one, z, Complex64::new(0.0, 0.0), one);
    let (mut f, mut g, mut fp, mut gps) = (t, s, tp, gp);
    for k in 1..200usize {
        let kf = k as f64;
        t = t * z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        s = s * z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        tp = if k == 1 {
            z * z / 2.0
        } else {
            tp * z3 / ((3.0 * kf - 3.0) * (3.0 * kf - 1.0))
        };
        gp = gp * z3 / ((3.0 * kf - 2.0) * (3.0 * kf));
        f += t;
        g += s;
        fp += tp;
        gps += gp;
        if k > 2
            && t.norm() + s.norm() + tp.norm() + gp.norm()
                < 1e-18 * (f.norm() + g.norm() + fp.norm() + gps.norm())
        {
            break;
        }
    }
    let c1 = AI0.to_f64();
    let c2 = MAIP0.to_f64();
    Ok((f * c1 - g * c2, fp * c1 - gps * c2))
}

#[cfg(test)]
mod tests {
    use super::*;

    // (x, Ai, Ai′) from a 30-digit reference evaluation.
    const REF: &[(f64, f64, f64)] = &[
        (-20.0, -0.176_406_127_077_984_69, 0.892_862_856_736_471_24),
        (-15.0, 0.278_217_490_870_828_93, 0.272_374_204_308_642_02),
        (-10.0, 0.040_241_238_486_443_19, 0.996_265_044_132_790_06),
        (-8.0, -0.052_705_050_356_386_2, 0.935_560_938_198_306_55),
        (-5.0, 0.350_761_009_024_114_32, 0.327_192_818_554_443_14),
        (-2.0, 0.227_407_428_201_685_58, 0.618_259_020_741_691_04),
        (-1.0, 0.535_560_883_292_352_12, -0.010_160_567_116_645_209),
        (0.0, 0.355_028_053_887_817_24, -0.258_819_403_792_806_8),
        (0.5, 0.231_693_606_480_833_49, -0.224_910_532_664_683_89),
        (1.0, 0.135_292_416_312_881_42, -0.159_147_441_296_793_21),
        (2.0, 0.034_924_130_423_274_379, -0.053_090_384_433_653_632),
        (5.0, 1.083_444_281_360_744_2e-4, -2.474_138_908_684_624_8e-4),
        (8.0, 4.692_207_616_099_231_6e-8, -1.341_439_297_906_786_6e-7),
        (
            10.0,
            1.104_753_255_289_868_6e-10,
            -3.520_633_676_738_923_6e-10,
        ),
        (
            15.0,
            2.164_962_520_737_992_3e-18,
            -8.420_567_954_017_772_8e-18,
        ),
        (
            20.0,
            1.691_672_868_670_540_3e-27,
            -7.586_391_625_748_354_9e-27,
        ),
    ];

    fn envelope(x: f64) -> f64 {
        if x < 0.0 {
            (x.abs().powf(-0.25) / PI.sqrt()).min(1.0)
        } else {
            0.0
        }
    }

    #[test]
    fn matches_reference_values() {
        for &(x, ai, aip) in REF {
            let v = airy(x);
            let sa = ai.abs().max(envelope(x));
            let sp = aip.abs().max(envelope(x) * x.abs().sqrt());
            assert!(
                (v.ai - ai).abs() <= 1e-12 * sa,
                "Ai({x}) = {} vs {ai}",
                v.ai
            );
            assert!(
                (v.aip - aip).abs() <= 1e-12 * sp,
                "Ai'({x}) = {} vs {aip}",
                v.aip
            );
        }
    }

    #[test]
    fn branches_agree_at_crossover() {
        for &x in &[-8.0, 8.0] {
            let (s, _, _) = maclaurin(x);
            let a = asymptotic(x);
            let scale = s.abs().max(envelope(x));
            assert!((s - a.ai).abs() < 1e-12 * scale, "x={x}: {s} vs {}", a.ai);
        }
    }

    #[test]
    fn integrated_reference_values() {
        let cases: &[(f64, f64)] = &[
            (0.0, 1.0 / 3.0),
            (1.0, 0.097_015_991_416_223_554),
            (-1.0, 0.799_007_316_800_401_95),
            (3.0, 0.003_412_957_326_311_560_8),
            (-3.0, 1.134_796_176_004_656_8),
            (5.0, 4.574_302_741_545_384_7e-5),
            (-5.0, 1.051_215_537_881_161),
            (8.0, 1.609_084_975_913_270_7e-8),
            (-8.0, 1.117_315_929_904_510_7),
            (10.0, 3.416_431_739_054_009_4e-11),
            (-10.0, 1.099_031_736_467_546_3),
            (12.0, 3.953_145_915_043_153_3e-14),
            (-12.0, 1.085_621_722_499_434_6),
            (20.0, 3.751_812_198_954_065_2e-28),
            (-20.0, 1.045_072_585_973_251_8),
            (30.0, 5.831_032_693_526_648_5e-50),
            (-30.0, 1.041_048_702_207_620_1),
            (-100.0, 0.997_559_359_331_311_69),
        ];
        for &(x, want) in cases {
            let got = airy_integrated(x);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs(),
                "Ai1({x}) = {got} vs {want}"
            );
        }
    }

    #[test]
    fn complex_reference_values() {
        let cases = [
            (
                Complex64::new(0.0, 0.5),
                Complex64::new(0.353_649_223_375_101_89, -0.136_802_054_228_524_28),
                Complex64::new(-0.303_140_780_165_205_45, 0.011_153_850_054_972_978),
            ),
            (
                Complex64::new(1.0, 1.0),
                Complex64::new(0.060_458_308_371_838_149, -0.151_889_565_877_181_4),
                Complex64::new(-0.130_627_953_499_647_52, 0.163_067_596_449_323_92),
            ),
            (
                Complex64::new(-2.0, 0.7),
                Complex64::new(0.361_697_548_757_039_71, 0.491_221_749_399_936_72),
                Complex64::new(0.870_378_896_612_679_56, -0.453_055_655_576_991_46),
            ),
        ];
        for (z, ai, aip) in cases {
            let (a, b) = airy_complex(z).unwrap();
            assert!((a - ai).norm() < 1e-13, "Ai({z})");
            assert!((b - aip).norm() < 1e-13, "Ai'({z})");
        }
        assert!(airy_complex(Complex64::new(7.0, 0.0)).is_err());
    }
}
