//! Phase integrals `D(tau_c) = 2 ∫_0^tau_c rho(s) ds` and residue factors
//! `Gamma = 4i lim (tau - tau_c) gamma(tau)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::adiabatic::adiabatic_coupling_complex;
use crate::error::{Error, Result};
use crate::models::{sech_pole_distance, sech_pole_distance_to_segment, PulseModel};
use crate::quad::gauss_legendre;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Relative change between successive panel doublings accepted as converged.
    pub rel_tol: f64,
    /// Gauss-Legendre nodes per panel.
    pub order: usize,
    pub initial_panels: usize,
    pub max_panels: usize,
    /// Minimum distance between the contour and any pole of the integrand.
    pub min_pole_distance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-9,
            order: 16,
            initial_panels: 4,
            max_panels: 1 << 16,
            min_pole_distance: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseIntegral {
    pub value: Complex64,
    /// `|D_2N - D_N|` of the last refinement.
    pub error: f64,
    pub panels: usize,
}

/// `D(tau_c)` along the straight segment from 0 with the square-root branch
/// continued from the positive root at `s = 0`.
///
/// The segment is parametrised as `s(x) = tau_c (1 - (1 - x)^2)`, which
/// turns the square-root endpoint singularity at a simple zero into a
/// smooth integrand; the contour itself is unchanged.
pub fn ddp_phase(model: &PulseModel, tau_c: Complex64, cfg: &QuadratureConfig) -> Result<PhaseIntegral> {
    if tau_c.norm() == 0.0 {
        return Ok(PhaseIntegral {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            panels: 0,
        });
    }
    if model.has_poles() {
        let distance = sech_pole_distance_to_segment(Complex64::new(0.0, 0.0), tau_c);
        if distance <= cfg.min_pole_distance {
            return Err(Error::Contour { tau: tau_c, distance });
        }
    }
    let s0 = model.eval_complex(Complex64::new(0.0, 0.0))?;
    let f0 = s0.detuning * s0.detuning + s0.coupling * s0.coupling;
    if !(f0.re > 0.0 && f0.im.abs() <= 1e-14 * f0.re) {
        return Err(Error::Precondition(format!(
            "rho^2(0) must be positive real to fix the branch, got {f0}"
        )));
    }
    let root0 = Complex64::new(f0.re.sqrt(), 0.0);
    let rule = gauss_legendre(cfg.order);

    let mut panels = cfg.initial_panels.max(1);
    let mut prev: Option<Complex64> = None;
    loop {
        let estimate = contour_sum(model, tau_c, &rule, panels, root0)?;
        if let (Some(p), Some(d)) = (prev, estimate) {
            let diff = (d - p).norm();
            if diff <= cfg.rel_tol * d.norm() {
                return Ok(PhaseIntegral {
                    value: d,
                    error: diff,
                    panels,
                });
            }
            if panels * 2 > cfg.max_panels {
                return Err(Error::ContourAccuracy { coarse: p, fine: d });
            }
        } else if panels * 2 > cfg.max_panels {
            return Err(Error::ContourAccuracy {
                coarse: prev.unwrap_or_default(),
                fine: Complex64::new(f64::NAN, f64::NAN),
            });
        }
        // a branch-tracking failure (None) is retried on a finer grid
        if estimate.is_some() {
            prev = estimate;
        }
        panels *= 2;
    }
}

/// Composite sum on `panels` equal panels in `x`. Returns `None` when two
/// consecutive integrand values turn by `pi/2` or more, i.e. the grid is too
/// coarse to follow the branch.
fn contour_sum(
    model: &PulseModel,
    tau_c: Complex64,
    rule: &(Vec<f64>, Vec<f64>),
    panels: usize,
    root0: Complex64,
) -> Result<Option<Complex64>> {
    let width = 1.0 / panels as f64;
    let mut prev = root0;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = p as f64 * width;
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in rule.0.iter().zip(&rule.1) {
            let xx = lo + 0.5 * width * (x + 1.0);
            let u = 1.0 - xx;
            let s = tau_c * (1.0 - u * u);
            let ds = tau_c * (2.0 * u);
            let sample = model.eval_complex(s)?;
            let f = sample.detuning * sample.detuning + sample.coupling * sample.coupling;
            let r = f.sqrt();
            let rho = if (r - prev).norm() <= (r + prev).norm() { r } else { -r };
            if prev.norm() > 0.0 && rho.norm() > 0.0 && (rho / prev).arg().abs() >= FRAC_PI_2 {
                return Ok(None);
            }
            prev = rho;
            acc += rho * ds * *w;
        }
        total += acc * (0.5 * width);
    }
    Ok(Some(total * 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    pub value: Complex64,
    /// Change of the estimate when the radius is halved.
    pub change: f64,
}

const CIRCLE_POINTS: usize = 32;

fn circle_average(model: &PulseModel, tau_c: Complex64, radius: f64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..CIRCLE_POINTS {
        let phi = 2.0 * PI * (j as f64 + 0.5) / CIRCLE_POINTS as f64;
        let offset = Complex64::from_polar(radius, phi);
        let g = adiabatic_coupling_complex(model, tau_c + offset)?;
        sum += Complex64::i() * 4.0 * offset * g;
    }
    Ok(sum / CIRCLE_POINTS as f64)
}

/// Numerical limit `4i lim (tau - tau_c) gamma(tau)`: the mean of
/// `4i (tau - tau_c) gamma(tau)` on a circle around `tau_c`, checked for
/// stability under halving of the radius.
pub fn gamma_factor(model: &PulseModel, tau_c: Complex64, radius: f64) -> Result<GammaFactor> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Parameter(format!("circle radius must be positive, got {radius}")));
    }
    if model.has_poles() {
        let distance = sech_pole_distance(tau_c);
        if distance <= 2.0 * radius {
            return Err(Error::Contour { tau: tau_c, distance });
        }
    }
    let coarse = circle_average(model, tau_c, radius)?;
    let fine = circle_average(model, tau_c, 0.5 * radius)?;
    let change = (coarse - fine).norm();
    if change >= 1e-4 {
        return Err(Error::LimitUnstable { coarse, fine });
    }
    Ok(GammaFactor { value: fine, change })
}
