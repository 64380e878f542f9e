//! Acceptance checks, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line straight to stderr (bypassing output
//! capture) before asserting, so the full table shows up in a plain
//! `cargo test` log.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use pulselab::ddp::{
    approx_closed_form, born_approx, cpt_estimate, ddp_single, gamma_factor, st_nearest_upper_zeros, st_zero_points,
    QuadratureConfig, GAMMA_RADIUS,
};
use pulselab::{
    make_landau_zener, make_model, propagate, Complex64, IntegratorConfig, ModelId, ModelParams, PulseModel,
    StateVector,
};

// pinned tolerances
const RZ_TOL: f64 = 1e-6;
const LZ_TOL: f64 = 1e-6;
const NULL_TOL: f64 = 1e-8;
const DRIFT_TOL: f64 = 1e-9;
const CPT_BAND: (f64, f64) = (0.94, 1.0);
const CPT_TOL: f64 = 0.05;
const DELTA2_TOL: f64 = 0.05;
/// Locked from a converged run (measured 0.0284, at aT = 0.5, bT = 0.5).
const APPROX_BOUND: f64 = 0.03;
const ZERO_RESIDUAL_TOL: f64 = 1e-10;
const GAMMA_TOL: f64 = 1e-3;
const BORN_REL_TOL: f64 = 0.1;

fn report(n: u32, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n}: {verdict} {detail}");
}

fn model(id: ModelId, a: f64, b: f64) -> PulseModel {
    make_model(id, ModelParams::scaled(a, b).unwrap()).unwrap()
}

struct Run {
    p: f64,
    drift: f64,
}

fn numeric(m: &PulseModel) -> Run {
    let tr = propagate(m, &IntegratorConfig::for_model(m), StateVector::ground()).unwrap();
    Run {
        p: tr.final_p,
        drift: tr.max_norm_drift,
    }
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

fn rosen_zener_runs() -> (Vec<(f64, f64, f64, f64)>, f64, Duration) {
    let start = Instant::now();
    let mut out = Vec::new();
    let mut drift: f64 = 0.0;
    for a in [0.0, 0.1, 0.3, 1.0] {
        for k in 0..17 {
            let b = 0.25 * k as f64;
            let run = numeric(&model(ModelId::RosenZener, a, b));
            let oracle = (PI * b).sin().powi(2) * sech(PI * a).powi(2);
            drift = drift.max(run.drift);
            out.push((a, b, run.p, oracle));
        }
    }
    (out, drift, start.elapsed())
}

fn odd_odd_runs() -> (Vec<(f64, f64, f64)>, f64, Duration) {
    let start = Instant::now();
    let mut out = Vec::new();
    let mut drift: f64 = 0.0;
    let axis: Vec<f64> = (0..5).map(|i| 0.2 + 0.7 * i as f64).collect();
    for &a in &axis {
        for &b in &axis {
            let run = numeric(&model(ModelId::OddOdd, a, b));
            drift = drift.max(run.drift);
            out.push((a, b, run.p));
        }
    }
    (out, drift, start.elapsed())
}

#[test]
fn criterion_01_rosen_zener_oracle() {
    let (runs, _, elapsed) = rosen_zener_runs();
    let worst = runs.iter().map(|r| (r.2 - r.3).abs()).fold(0.0, f64::max);
    let pass = runs.len() == 68 && worst < RZ_TOL && elapsed < Duration::from_secs(10);
    report(
        1,
        pass,
        format!("Rosen-Zener: max |numeric - closed form| = {worst:.2e} (< {RZ_TOL:e}) over 68 points in {elapsed:.2?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_02_landau_zener_ddp() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for ratio in [0.25f64, 1.0, 4.0] {
        // b^2 / alpha = ratio with alpha = 1
        let lz = make_landau_zener(ModelParams::scaled(0.0, ratio.sqrt()).unwrap(), 1.0).unwrap();
        let p = ddp_single(&lz, &QuadratureConfig::default()).unwrap().probability;
        worst = worst.max((p - (-PI * ratio).exp()).abs());
    }
    let elapsed = start.elapsed();
    let pass = worst < LZ_TOL && elapsed < Duration::from_secs(5);
    report(
        2,
        pass,
        format!("Landau-Zener: max |ddp1 - exp(-pi b^2/alpha)| = {worst:.2e} (< {LZ_TOL:e}) in {elapsed:.2?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_03_odd_odd_null() {
    let (runs, _, elapsed) = odd_odd_runs();
    let worst = runs.iter().map(|r| r.2).fold(0.0, f64::max);
    let pass = runs.len() == 25 && worst < NULL_TOL && elapsed < Duration::from_secs(20);
    report(
        3,
        pass,
        format!("odd-odd: max final P = {worst:.2e} (< {NULL_TOL:e}) on 5x5 grid in {elapsed:.2?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_04_norm_conservation() {
    // criterion 2 uses no propagation; 1 and 3 do
    let (_, rz, _) = rosen_zener_runs();
    let (_, oo, _) = odd_odd_runs();
    let drift = rz.max(oo);
    let pass = drift < DRIFT_TOL;
    report(
        4,
        pass,
        format!("norm drift: max | |psi|^2 - 1 | = {drift:.2e} (< {DRIFT_TOL:e}) over 93 propagations"),
    );
    assert!(pass);
}

#[test]
fn criterion_05_sech_tanh_cpt() {
    let (a, ratio) = (3.0, 20.0);
    let m = model(ModelId::SechTanh, a, a * ratio);
    let p = numeric(&m).p;
    // sin^2(arctan(b / 2a)) in closed form: x^2 / (1 + x^2)
    let x = ratio / 2.0;
    let oracle = x * x / (1.0 + x * x);
    let estimate = cpt_estimate(m.params()).unwrap();
    assert!((estimate - oracle).abs() < 1e-15);
    let in_band = p >= CPT_BAND.0 && p <= CPT_BAND.1;
    let close = (p - oracle).abs() < CPT_TOL;
    let pass = in_band && close;
    report(
        5,
        pass,
        format!(
            "sech-tanh aT=3, b/a=20: numeric P = {p:.6} (band [{}, {}]: {in_band}), cpt = {oracle:.6}, |diff| = {:.4} (< {CPT_TOL}: {close})",
            CPT_BAND.0,
            CPT_BAND.1,
            (p - oracle).abs()
        ),
    );
    assert!(pass);
}

struct DdpGrid {
    delta: [f64; 3],
    approx_gap: f64,
    elapsed: Duration,
}

fn ddp_grid() -> DdpGrid {
    let start = Instant::now();
    let cfg = QuadratureConfig::default();
    let mut delta = [0.0; 3];
    let mut approx_gap: f64 = 0.0;
    for (slot, a) in [0.5, 1.0, 2.0].into_iter().enumerate() {
        for k in 0..100 {
            let b = 0.5 + 7.5 * k as f64 / 99.0;
            let m = model(ModelId::SechTanh, a, b);
            let exact = numeric(&m).p;
            let p1 = ddp_single(&m, &cfg).unwrap().probability;
            delta[slot] = f64::max(delta[slot], (p1 - exact).abs());
            approx_gap = approx_gap.max((approx_closed_form(m.params()).unwrap() - p1).abs());
        }
    }
    DdpGrid {
        delta,
        approx_gap,
        elapsed: start.elapsed(),
    }
}

#[test]
fn criterion_06_ddp_accuracy_ordering() {
    let g = ddp_grid();
    let [d05, d1, d2] = g.delta;
    let pass = d2 < d1 && d1 < d05 && d2 < DELTA2_TOL && g.elapsed < Duration::from_secs(120);
    report(
        6,
        pass,
        format!(
            "ddp1 vs numeric: delta(0.5) = {d05:.4}, delta(1) = {d1:.4}, delta(2) = {d2:.4} (< {DELTA2_TOL}) in {:.2?}",
            g.elapsed
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_approx_fidelity() {
    let g = ddp_grid();
    let pass = g.approx_gap < APPROX_BOUND;
    report(
        7,
        pass,
        format!("approx1 vs ddp1: max gap = {:.4} (locked bound {APPROX_BOUND})", g.approx_gap),
    );
    assert!(pass);
}

fn rho_sq(ratio: f64, tau: Complex64) -> Complex64 {
    // a = 1: rho^2 = 1 + (b/a)^2 sech^2 tanh^2
    let c = tau.cosh();
    let v = tau.sinh() / (c * c) * ratio;
    Complex64::new(1.0, 0.0) + v * v
}

#[test]
fn criterion_08_zero_structure() {
    let mut residual: f64 = 0.0;
    for ratio in [0.1, 0.8, 2.0, 10.0] {
        for z in st_zero_points(ratio, 2).unwrap() {
            residual = residual.max(rho_sq(ratio, z.tau).norm());
        }
    }
    let at_zero = st_nearest_upper_zeros(0.0, 1).unwrap()[0].tau;
    let resonance = (at_zero - Complex64::new(0.0, PI / 2.0)).norm();

    let ratios: Vec<f64> = (0..60).map(|k| 0.01 * 1.2f64.powi(k)).collect();
    let ims: Vec<f64> = ratios
        .iter()
        .map(|&r| st_nearest_upper_zeros(r, 1).unwrap()[0].tau.im)
        .collect();
    let monotone = ims.windows(2).all(|w| w[1] < w[0]);

    let mut gamma_dev: f64 = 0.0;
    for ratio in [0.1, 0.8, 2.0, 10.0] {
        let m = model(ModelId::SechTanh, 1.0, ratio);
        for z in st_nearest_upper_zeros(ratio, 3).unwrap() {
            let g = gamma_factor(&m, z.tau, GAMMA_RADIUS).unwrap();
            gamma_dev = gamma_dev.max((g.value.norm() - 1.0).abs());
        }
    }
    let pass = residual < ZERO_RESIDUAL_TOL && resonance < 1e-12 && monotone && gamma_dev < GAMMA_TOL;
    report(
        8,
        pass,
        format!(
            "zeros: max |rho^2| = {residual:.2e}, |tau_c - i pi/2| at b/a=0 = {resonance:.1e}, Im decreasing over {} ratios: {monotone}, max ||Gamma| - 1| = {gamma_dev:.1e}",
            ratios.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_born_regime() {
    let m = model(ModelId::SechTanh, 0.5, 0.05);
    let p = numeric(&m).p;
    // 4 (aT)^2 (bT)^2 pi^2 sech^2(pi aT)
    let oracle = 4.0 * 0.25 * 0.0025 * PI * PI * sech(PI * 0.5).powi(2);
    let born = born_approx(m.params());
    assert!((born - oracle).abs() < 1e-15);
    let p1 = ddp_single(&m, &QuadratureConfig::default()).unwrap().probability;
    let rel = (p - born).abs() / born;
    let pass = rel < BORN_REL_TOL && (p1 - p).abs() > (born - p).abs();
    report(
        9,
        pass,
        format!(
            "Born regime aT=0.5, bT=0.05: numeric = {p:.4e}, born = {born:.4e} (rel {rel:.1e} < {BORN_REL_TOL}), ddp1 = {p1:.4e}"
        ),
    );
    assert!(pass);
}

fn figure_run(dir: &Path, jobs: &str) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_pulselab"))
        .args(["figure", "--id", "3", "--out-dir"])
        .arg(dir)
        .args(["--jobs", jobs])
        .status()
        .unwrap();
    assert!(status.success());
    std::fs::read(dir.join("fig3.csv")).unwrap()
}

#[test]
fn criterion_10_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let first = figure_run(&tmp.path().join("one"), "1");
    let second = figure_run(&tmp.path().join("two"), "4");
    let pass = !first.is_empty() && first == second;
    report(
        10,
        pass,
        format!("two `figure --id 3` runs (1 and 4 workers): {} bytes, identical: {}", first.len(), first == second),
    );
    assert!(pass);
}
