//! Hamiltonian flows of σ_H, of the smoothed p·χ_D^{(N)}, and the formal singular limit.

use crate::classical::{PhasePoint, SemiclassicalScale};
use crate::error::{check_positive, Result, ZenoError};
use crate::specfun::airy::airy_with_integral;
use crate::symbols::laguerre::chi_d_smooth_gradient;
use crate::symbols::{p_chi_d_smooth, symbol_h, symbol_h_gradient};
use serde::Serialize;

/// Layer threshold in the Airy argument ξ = κ(r² − 2μ).
pub const LAYER_XI: f64 = -5.0;
const MAX_STEPS: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldKind {
    /// Hamiltonian field of σ_H.
    Symbol,
    /// Hamiltonian field of p·χ_D^{(N)}.
    SmoothAiry,
    /// Formal field of p·χ_D; only solvable piecewise, see [`limit_flow`].
    SingularLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub scale: SemiclassicalScale,
}

impl FieldSpec {
    pub fn new(kind: FieldKind, scale: SemiclassicalScale) -> Self {
        Self { kind, scale }
    }

    pub fn velocity(&self, q: &PhasePoint) -> Result<[f64; 2]> {
        match self.kind {
            FieldKind::Symbol => field_symbol(&self.scale, q),
            FieldKind::SmoothAiry => Ok(field_smooth(&self.scale, q)),
            FieldKind::SingularLimit => Err(not_integrable()),
        }
    }

    /// The generating Hamiltonian.
    pub fn energy(&self, q: &PhasePoint) -> Result<f64> {
        match self.kind {
            FieldKind::Symbol => symbol_h(&self.scale, q),
            FieldKind::SmoothAiry => Ok(p_chi_d_smooth(&self.scale, q)),
            FieldKind::SingularLimit => Ok(q.p * crate::classical::chi_d(q, &self.scale.disk())),
        }
    }

    /// Largest distance a single step may cover: a fraction of the Airy layer width in r.
    fn step_length(&self) -> f64 {
        let s = &self.scale;
        let layer = 1.0 / (2.0 * s.airy_layer_coefficient() * (2.0 * s.mu()).sqrt());
        0.05 * layer.min(1.0)
    }
}

fn not_integrable() -> ZenoError {
    ZenoError::InvalidParameter {
        name: "field",
        value: f64::NAN,
        reason: "the singular field is not integrated numerically; use limit_flow",
    }
}

/// δ^{(N)}(r) = −r (2N)^{2/3}/μ · Ai((2N)^{2/3}(r² − 2μ)/(2μ)).
pub fn delta_smooth(scale: &SemiclassicalScale, r: f64) -> f64 {
    let k = scale.airy_layer_coefficient();
    let (ai, _, _) = airy_with_integral(k * (r * r - 2.0 * scale.mu()));
    -r * 2.0 * k * ai
}

/// (∂_p, −∂_x) of p·χ_D^{(N)}; the δ^{(N)}(r)/r factor is evaluated without dividing by r.
pub fn field_smooth(scale: &SemiclassicalScale, q: &PhasePoint) -> [f64; 2] {
    let (chi, [gx, gp]) = chi_d_smooth_gradient(scale, q);
    [chi + q.p * gp, -q.p * gx]
}

/// (∂_p σ_H, −∂_x σ_H) from the Laguerre representation.
pub fn field_symbol(scale: &SemiclassicalScale, q: &PhasePoint) -> Result<[f64; 2]> {
    let (_, [dx, dp]) = symbol_h_gradient(scale, q)?;
    Ok([dp, -dx])
}

/// Explicit solution of the singular system: free motion along x inside D with the boundary
/// point (√(2μ−p₀²), p₀) identified with (−√(2μ−p₀²), p₀); points outside are at rest.
pub fn limit_flow(mu: f64, q0: &PhasePoint, t: f64) -> Result<PhasePoint> {
    check_positive("mu", mu)?;
    let disk = crate::classical::DiskGeometry::new(mu)?;
    if disk.on_boundary(q0) {
        return Err(ZenoError::OutOfDomain {
            what: "initial point",
            detail: "the singular flow is undefined on the boundary circle".into(),
        });
    }
    if !disk.contains_strictly(q0) {
        return Ok(*q0);
    }
    let xb = (2.0 * mu - q0.p * q0.p).sqrt();
    let x = (q0.x + xb + t).rem_euclid(2.0 * xb) - xb;
    Ok(PhasePoint::new(x, q0.p))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<PhasePoint>,
    pub energy_log: Vec<f64>,
}

impl Trajectory {
    pub fn last(&self) -> Option<(f64, PhasePoint)> {
        Some((*self.times.last()?, *self.points.last()?))
    }

    /// max |E(t) − E(0)|
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.energy_log.first().copied().unwrap_or(0.0);
        self.energy_log
            .iter()
            .map(|e| (e - e0).abs())
            .fold(0.0, f64::max)
    }
}

// Dormand–Prince 5(4) tableau; the fields are autonomous so the nodes c_i are not needed
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One state of an integration, handed to stopping predicates.
#[derive(Debug, Clone, Copy)]
pub struct FlowState {
    pub t: f64,
    pub q: PhasePoint,
    pub velocity: [f64; 2],
}

/// Adaptive Dormand–Prince integration, stopping early when `stop` returns true.
pub fn integrate_until(
    field: &FieldSpec,
    q0: &PhasePoint,
    t_final: f64,
    tol: f64,
    mut stop: impl FnMut(&FlowState) -> bool,
) -> Result<Trajectory> {
    if field.kind == FieldKind::SingularLimit {
        return Err(not_integrable());
    }
    check_positive("tol", tol)?;
    let cap = field.step_length();
    let mut traj = Trajectory::default();
    let mut t = 0.0;
    let mut y = [q0.x, q0.p];
    let mut k = [[0.0; 2]; 7];
    k[0] = field.velocity(q0)?;
    traj.times.push(t);
    traj.points.push(*q0);
    traj.energy_log.push(field.energy(q0)?);
    if stop(&FlowState {
        t,
        q: *q0,
        velocity: k[0],
    }) {
        return Ok(traj);
    }
    let mut h = (cap / (k[0][0].hypot(k[0][1]) + 1e-300))
        .min(t_final)
        .min(0.01);
    let mut steps = 0;
    while t < t_final {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(ZenoError::StepBudget {
                t,
                steps: MAX_STEPS,
            });
        }
        let speed = k[0][0].hypot(k[0][1]);
        h = h.min(cap / (speed + 1e-300)).min(t_final - t);
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(ZenoError::StepUnderflow { t, h });
        }
        for s in 1..7 {
            let mut ys = y;
            for j in 0..s {
                ys[0] += h * A[s][j] * k[j][0];
                ys[1] += h * A[s][j] * k[j][1];
            }
            k[s] = field.velocity(&PhasePoint::new(ys[0], ys[1]))?;
        }
        let mut y5 = y;
        let mut err: f64 = 0.0;
        for d in 0..2 {
            let (mut a5, mut a4) = (0.0, 0.0);
            for s in 0..7 {
                a5 += B5[s] * k[s][d];
                a4 += B4[s] * k[s][d];
            }
            y5[d] += h * a5;
            let scale = tol * (1.0 + y[d].abs().max(y5[d].abs()));
            err = err.max((h * (a5 - a4)).abs() / scale);
        }
        if err <= 1.0 {
            t += h;
            y = y5;
            k[0] = k[6];
            let q = PhasePoint::new(y[0], y[1]);
            traj.times.push(t);
            traj.points.push(q);
            traj.energy_log.push(field.energy(&q)?);
            if stop(&FlowState {
                t,
                q,
                velocity: k[0],
            }) {
                break;
            }
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Ok(traj)
}

pub fn integrate(field: &FieldSpec, q0: &PhasePoint, t_final: f64, tol: f64) -> Result<Trajectory> {
    integrate_until(field, q0, t_final, tol, |_| false)
}

fn layer_xi(scale: &SemiclassicalScale, q: &PhasePoint) -> f64 {
    scale.airy_layer_coefficient() * (q.r2() - 2.0 * scale.mu())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitReport {
    pub n: usize,
    pub p0: f64,
    /// Where the smooth flow leaves the layer on the far side.
    pub exit: PhasePoint,
    /// Distance from `exit` to the reflected point (−√(2μ−p₀²), p₀).
    pub reflection_error: f64,
    pub max_speed: f64,
    pub transit_time: f64,
}

/// Follow the smooth flow from the inner edge of the layer (ξ = −5) on the right through the transit,
/// until it re-enters the plateau region (ξ < −5, x < 0, ẋ > 0.9).
pub fn boundary_transit(scale: &SemiclassicalScale, p0: f64, tol: f64) -> Result<TransitReport> {
    let mu = scale.mu();
    let k = scale.airy_layer_coefficient();
    let r2_start = 2.0 * mu + LAYER_XI / k;
    if p0 * p0 >= r2_start {
        return Err(ZenoError::InvalidParameter {
            name: "p0",
            value: p0,
            reason: "must lie inside the plateau at the Airy layer margin",
        });
    }
    let start = PhasePoint::new((r2_start - p0 * p0).sqrt(), p0);
    let field = FieldSpec::new(FieldKind::SmoothAiry, *scale);
    let mut entered = false;
    let mut max_speed: f64 = 0.0;
    let traj = integrate_until(&field, &start, 50.0, tol, |st| {
        max_speed = max_speed.max(st.velocity[0].hypot(st.velocity[1]));
        let xi = layer_xi(scale, &st.q);
        if !entered {
            entered = xi > LAYER_XI;
            return false;
        }
        xi < LAYER_XI && st.q.x < 0.0 && st.velocity[0] > 0.9
    })?;
    let (t, exit) = traj.last().expect("trajectory has a start point");
    let target = PhasePoint::new(-(2.0 * mu - p0 * p0).sqrt(), p0);
    Ok(TransitReport {
        n: scale.n(),
        p0,
        exit,
        reflection_error: (exit.x - target.x).hypot(exit.p - target.p),
        max_speed,
        transit_time: t,
    })
}

pub fn reflection_error(mu: f64, n: usize, p0: f64) -> Result<f64> {
    let scale = SemiclassicalScale::new(n, mu)?;
    Ok(boundary_transit(&scale, p0, 1e-10)?.reflection_error)
}

/// Time-averaged ẋ of the (♣) flow along the chord p = 0 from (x0, 0), stopped once the orbit is
/// within 3N^{-1/3} of the boundary.
///
/// On p = 0 the δ-terms vanish and ẋ = χ^{(N)}(x). Off the axis they do not: at a fixed interior point
/// 2κp²|Ai(ξ)| grows like N^{1/2}, and for N ≳ 256 orbits through (0, 0.5) close inside a ripple cell.
pub fn interior_speed(scale: &SemiclassicalScale, x0: f64, tol: f64) -> Result<f64> {
    let stop_r = (2.0 * scale.mu()).sqrt() - 3.0 * (scale.n() as f64).powf(-1.0 / 3.0);
    if !(x0.abs() < stop_r) {
        return Err(ZenoError::OutOfDomain {
            what: "interior start",
            detail: format!("|x0| = {} must be below {stop_r}", x0.abs()),
        });
    }
    let field = FieldSpec::new(FieldKind::SmoothAiry, *scale);
    let q0 = PhasePoint::new(x0, 0.0);
    let traj = integrate_until(&field, &q0, 50.0, tol, |st| st.q.x >= stop_r)?;
    let (t, q) = traj.last().expect("trajectory has a start point");
    Ok((q.x - x0) / t)
}
