use crate::config::{
    CommonArgs, Defaults, DynamicsArgs, ExperimentConfig, SymbolArgs, UsageError, VerifyArgs,
};
use crate::table::{emit, Cell, Table};
use anyhow::Result;
use serde_json::json;
use std::path::PathBuf;
use zeno_core::dynamics::{boundary_transit, integrate, limit_flow, FieldKind, FieldSpec};
use zeno_core::kernels::{
    airy_kernel, bulk_limit_errors, edge_limit_errors, rescaled_kernel, RescaledKernelWindow,
};
use zeno_core::spectrum::{build_jacobi, histogram, SpectrumReport};
use zeno_core::symbols::{chi_d_smooth, p_chi_d_smooth, symbol_h, symbol_p};
use zeno_core::verify::{run_criterion, VerifyConfig, VerifyReport, CRITERIA};
use zeno_core::{chi_d, edge_constant, semicircle_density, PhasePoint, SemiclassicalScale};

/// Outcome of a subcommand: files written and whether every check passed.
pub struct Outcome {
    pub written: Vec<PathBuf>,
    pub passed: bool,
}

fn done(written: Vec<PathBuf>) -> Outcome {
    Outcome {
        written,
        passed: true,
    }
}

fn linspace(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    (0..m)
        .map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64)
        .collect()
}

fn meta(c: &ExperimentConfig) -> serde_json::Value {
    json!({
        "N": c.ns,
        "mu": c.mu,
        "grid": [c.grid.0, c.grid.1],
        "xrange": [c.xrange.0, c.xrange.1],
        "prange": [c.prange.0, c.prange.1],
        "tol": c.tol,
    })
}

fn symbol_row(s: &SemiclassicalScale, x: f64, p: f64) -> Result<Vec<Cell>> {
    let q = PhasePoint::new(x, p);
    Ok(vec![
        x.into(),
        p.into(),
        symbol_p(s, &q)?.into(),
        symbol_h(s, &q)?.into(),
        chi_d(&q, &s.disk()).into(),
        chi_d_smooth(s, &q).into(),
        p_chi_d_smooth(s, &q).into(),
    ])
}

const SYMBOL_COLUMNS: [&str; 7] = [
    "x",
    "p",
    "sigma_p",
    "sigma_h",
    "chi_d",
    "chi_d_smooth",
    "p_chi_d_smooth",
];

pub fn cmd_symbol(a: &SymbolArgs) -> Result<Outcome> {
    let d = Defaults {
        ns: &[17],
        grid: (200, 200),
        range: (-3.0, 3.0),
        tol: 1e-10,
    };
    let c = ExperimentConfig::from_args("symbol", &a.common, &d)?;
    let mut tables = Vec::new();
    for &n in &c.ns {
        let s = SemiclassicalScale::new(n, c.mu)?;
        let mut t = Table::new(
            if c.ns.len() == 1 {
                "symbol".to_string()
            } else {
                format!("symbol_n{n}")
            },
            &SYMBOL_COLUMNS,
        );
        match a.section {
            Some(x) => {
                for p in linspace(c.prange.0, c.prange.1, c.grid.1) {
                    t.push(symbol_row(&s, x, p)?);
                }
            }
            None => {
                for x in linspace(c.xrange.0, c.xrange.1, c.grid.0) {
                    for p in linspace(c.prange.0, c.prange.1, c.grid.1) {
                        t.push(symbol_row(&s, x, p)?);
                    }
                }
            }
        }
        tables.push(t);
    }
    let mut m = meta(&c);
    m["section_x"] = json!(a.section);
    Ok(done(emit(
        "symbol",
        m,
        &tables,
        c.format,
        c.out.as_deref(),
    )?))
}

pub fn cmd_kernel_limit(a: &CommonArgs) -> Result<Outcome> {
    let d = Defaults {
        ns: &[64, 256, 1024],
        grid: (17, 401),
        range: (-2.0, 2.0),
        tol: 1e-10,
    };
    let c = ExperimentConfig::from_args("kernel-limit", a, &d)?;
    let ts = linspace(c.xrange.0, c.xrange.1, c.grid.0);
    let mut bulk = Table::new("bulk", &["n", "hbar", "x", "alpha", "beta", "sup_error"]);
    let mut edge = Table::new("edge", &["n", "hbar", "alpha", "beta", "sup_error"]);
    let mut tail = Table::new("tail", &["n", "y", "kernel", "limit"]);
    let half = 0.5 * (2.0 * c.mu).sqrt();
    let cm = edge_constant(c.mu);
    for &n in &c.ns {
        let s = SemiclassicalScale::new(n, c.mu)?;
        for x in [-half, 0.0, half] {
            let e = bulk_limit_errors(&s, x, &ts)?;
            for (al, row) in e.iter().enumerate() {
                for (be, v) in row.iter().enumerate() {
                    bulk.push(vec![
                        n.into(),
                        s.hbar().into(),
                        x.into(),
                        al.into(),
                        be.into(),
                        (*v).into(),
                    ]);
                }
            }
        }
        let e = edge_limit_errors(&s, &ts)?;
        for (al, row) in e.iter().enumerate() {
            for (be, v) in row.iter().enumerate() {
                edge.push(vec![
                    n.into(),
                    s.hbar().into(),
                    al.into(),
                    be.into(),
                    (*v).into(),
                ]);
            }
        }
        let w = RescaledKernelWindow::edge(&s);
        for y in linspace(0.0, 8.0, c.grid.1) {
            let k = rescaled_kernel(&s, &w, -y, y)?;
            tail.push(vec![
                n.into(),
                y.into(),
                k.into(),
                (cm * airy_kernel(-cm * y, cm * y)).into(),
            ]);
        }
    }
    Ok(done(emit(
        "kernel-limit",
        meta(&c),
        &[bulk, edge, tail],
        c.format,
        c.out.as_deref(),
    )?))
}

pub fn cmd_spectrum(a: &CommonArgs) -> Result<Outcome> {
    let d = Defaults {
        ns: &[2000],
        grid: (50, 2),
        range: (-2.0, 2.0),
        tol: 1e-10,
    };
    let c = ExperimentConfig::from_args("spectrum", a, &d)?;
    let mut eig = Table::new("eigenvalues", &["n", "index", "lambda"]);
    let mut hist = Table::new(
        "histogram",
        &["n", "bin_lo", "bin_hi", "count", "density", "semicircle"],
    );
    let mut summary = Table::new("summary", &["n", "mu", "hbar", "ks_distance", "norm_bound"]);
    let edge = (2.0 * c.mu).sqrt();
    for &n in &c.ns {
        let s = SemiclassicalScale::new(n, c.mu)?;
        let rep = SpectrumReport::new(&s);
        for (i, l) in rep.eigenvalues.iter().enumerate() {
            eig.push(vec![n.into(), i.into(), (*l).into()]);
        }
        for b in histogram(&rep.eigenvalues, -edge, edge, c.grid.0) {
            let mid = 0.5 * (b.lo + b.hi);
            hist.push(vec![
                n.into(),
                b.lo.into(),
                b.hi.into(),
                b.count.into(),
                b.density.into(),
                semicircle_density(mid, c.mu).into(),
            ]);
        }
        summary.push(vec![
            n.into(),
            c.mu.into(),
            s.hbar().into(),
            rep.ks_distance.into(),
            build_jacobi(&s).norm_bound().into(),
        ]);
    }
    Ok(done(emit(
        "spectrum",
        meta(&c),
        &[eig, hist, summary],
        c.format,
        c.out.as_deref(),
    )?))
}

pub fn cmd_dynamics(a: &DynamicsArgs) -> Result<Outcome> {
    let d = Defaults {
        ns: &[64],
        grid: (9, 400),
        range: (-3.0, 3.0),
        tol: 1e-10,
    };
    // --N picks the portrait rank, --N-sweep the scaling tables
    let mut portrait_args = a.common.clone();
    let sweep = portrait_args
        .n_sweep
        .take()
        .unwrap_or_else(|| vec![16, 64, 256, 1024]);
    if sweep.is_empty() || sweep.contains(&0) {
        return Err(UsageError("--N-sweep entries must be at least 1".into()).into());
    }
    let c = ExperimentConfig::from_args("dynamics", &portrait_args, &d)?;
    if !(a.time.is_finite() && a.time > 0.0) {
        return Err(UsageError("--time must be positive".into()).into());
    }
    let s = SemiclassicalScale::new(c.ns[0], c.mu)?;
    let edge = (2.0 * c.mu).sqrt();
    let mut orbits = Table::new("trajectories", &["field", "orbit", "t", "x", "p", "energy"]);
    let starts: Vec<PhasePoint> = linspace(-0.9 * edge, 0.9 * edge, c.grid.0)
        .into_iter()
        .map(|p| PhasePoint::new(0.0, p))
        .collect();
    for (kind, name) in [
        (FieldKind::Symbol, "symbol"),
        (FieldKind::SmoothAiry, "smooth_airy"),
    ] {
        let f = FieldSpec::new(kind, s);
        for (k, q) in starts.iter().enumerate() {
            let tr = integrate(&f, q, a.time, c.tol)?;
            for ((t, q), e) in tr.times.iter().zip(&tr.points).zip(&tr.energy_log) {
                orbits.push(vec![
                    name.into(),
                    k.into(),
                    (*t).into(),
                    q.x.into(),
                    q.p.into(),
                    (*e).into(),
                ]);
            }
        }
    }
    let f = FieldSpec::new(FieldKind::SingularLimit, s);
    for (k, q0) in starts.iter().enumerate() {
        for t in linspace(0.0, a.time, c.grid.1) {
            let q = limit_flow(c.mu, q0, t)?;
            orbits.push(vec![
                "singular_limit".into(),
                k.into(),
                t.into(),
                q.x.into(),
                q.p.into(),
                f.energy(&q)?.into(),
            ]);
        }
    }
    let mut transit = Table::new("transit", &["n", "p0", "max_speed", "transit_time"]);
    let mut reflection = Table::new(
        "reflection",
        &["n", "p0", "exit_x", "exit_p", "reflection_error"],
    );
    for &n in &sweep {
        let sc = SemiclassicalScale::new(n, c.mu)?;
        for p0 in [0.0, 0.5, 1.0] {
            let r = boundary_transit(&sc, p0, c.tol)?;
            if p0 == 0.5 {
                transit.push(vec![
                    n.into(),
                    p0.into(),
                    r.max_speed.into(),
                    r.transit_time.into(),
                ]);
            }
            reflection.push(vec![
                n.into(),
                p0.into(),
                r.exit.x.into(),
                r.exit.p.into(),
                r.reflection_error.into(),
            ]);
        }
    }
    let mut m = meta(&c);
    m["N_sweep"] = json!(sweep);
    m["time"] = json!(a.time);
    Ok(done(emit(
        "dynamics",
        m,
        &[orbits, transit, reflection],
        c.format,
        c.out.as_deref(),
    )?))
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let c = &a.common;
    if !(c.mu.is_finite() && c.mu > 0.0) {
        return Err(UsageError(format!("--mu must be positive, got {}", c.mu)).into());
    }
    if let Some(v) = &c.n_sweep {
        if v.len() < 2 || v.contains(&0) {
            return Err(
                UsageError("--N-sweep needs at least two ranks, each at least 1".into()).into(),
            );
        }
    }
    let ids: Vec<u8> = a.only.clone().unwrap_or_else(|| CRITERIA.to_vec());
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.contains(id)) {
        return Err(UsageError(format!("unknown criterion {bad}")).into());
    }
    let cfg = VerifyConfig {
        mu: c.mu,
        quick: a.quick,
        sweep: c.n_sweep.clone(),
    };
    let criteria: Vec<_> = ids
        .iter()
        .map(|&id| {
            let r = run_criterion(id, &cfg);
            eprintln!("{}", r.line());
            r
        })
        .collect();
    let report = VerifyReport {
        passed: criteria.iter().all(|r| r.passed),
        config: cfg,
        criteria,
    };
    let body = serde_json::to_string_pretty(&report)? + "\n";
    let written = match &c.out {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| anyhow::anyhow!("writing {}: {e}", p.display()))?;
            vec![p.clone()]
        }
        None => {
            print!("{body}");
            Vec::new()
        }
    };
    Ok(Outcome {
        written,
        passed: report.passed,
    })
}
