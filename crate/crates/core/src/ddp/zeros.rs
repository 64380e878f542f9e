//! Complex zeros of `rho^2 = eps^2 + V^2`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::{sech_pole_distance, ModelId, PulseModel, POLE_GUARD};

/// The two solution families `cosh^2(tau_c) = X+-` of the sech-tanh model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    XPlus,
    XMinus,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::XPlus => "X+",
            Branch::XMinus => "X-",
        }
    }
}

/// A transition point, optionally carrying its phase integral and
/// residue factor once computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdpZero {
    pub tau: Complex64,
    /// Solution family (sech-tanh only).
    pub branch: Option<Branch>,
    /// Ladder index: `tau = +-(1/2) Arcosh(2X - 1) + i pi k`.
    pub k: i64,
    pub phase: Option<Complex64>,
    pub gamma: Option<Complex64>,
}

impl DdpZero {
    pub fn at(tau: Complex64) -> Self {
        DdpZero {
            tau,
            branch: None,
            k: 0,
            phase: None,
            gamma: None,
        }
    }
}

/// `(X+, 1 - X+, X-)` for `r = b / a`, in cancellation-free form.
pub fn st_roots(b_over_a: f64) -> (f64, f64, f64) {
    let r = b_over_a;
    let q = r + (r * r + 4.0).sqrt();
    let x_plus = 2.0 * r / q;
    let one_minus = 4.0 / (q * q);
    let x_minus = -0.5 * r * q;
    (x_plus, one_minus, x_minus)
}

/// `Im Arcosh(2X+ - 1)`, in `(0, pi]`.
pub fn st_plus_angle(b_over_a: f64) -> f64 {
    let (xp, one_minus, _) = st_roots(b_over_a);
    2.0 * one_minus.sqrt().atan2(xp.sqrt())
}

/// All sech-tanh zeros with `|k| <= k_max` from both families and both
/// signs of the inverse hyperbolic cosine, deduplicated and ordered by
/// ascending `Im`, then ascending `|Re|`, then `Re`.
///
/// At `b/a = 0` the lattice degenerates onto the poles `i(pi/2 + k pi)`; the
/// limiting positions are returned.
pub fn st_zero_points(b_over_a: f64, k_max: u32) -> Result<Vec<DdpZero>> {
    if !(b_over_a.is_finite() && b_over_a >= 0.0) {
        return Err(Error::Parameter(format!("b/a must be finite and >= 0, got {b_over_a}")));
    }
    let (_, _, x_minus) = st_roots(b_over_a);
    // half of the principal Arcosh(2X - 1) for each family
    let plus_half = Complex64::new(0.0, 0.5 * st_plus_angle(b_over_a));
    let minus_half = Complex64::new((-x_minus).sqrt().asinh(), FRAC_PI_2);

    let k_max = k_max as i64;
    let mut out: Vec<DdpZero> = Vec::new();
    for (branch, half) in [(Branch::XPlus, plus_half), (Branch::XMinus, minus_half)] {
        for sign in [1.0, -1.0] {
            for k in -k_max..=k_max {
                let tau = half * sign + Complex64::new(0.0, PI * k as f64);
                if out.iter().any(|z| (z.tau - tau).norm() < 1e-12) {
                    continue;
                }
                out.push(DdpZero {
                    tau,
                    branch: Some(branch),
                    k,
                    phase: None,
                    gamma: None,
                });
            }
        }
    }
    out.sort_by(|p, q| {
        let key = |z: &DdpZero| (z.tau.im, z.tau.re.abs(), z.tau.re);
        key(p).partial_cmp(&key(q)).expect("finite zero positions")
    });
    Ok(out)
}

/// The `count` sech-tanh zeros in the upper half plane closest to the real
/// axis, in the ordering of [`st_zero_points`].
pub fn st_nearest_upper_zeros(b_over_a: f64, count: usize) -> Result<Vec<DdpZero>> {
    let k_max = (count as u32 / 2) + 2;
    Ok(st_zero_points(b_over_a, k_max)?
        .into_iter()
        .filter(|z| z.tau.im > 0.0)
        .take(count)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub tau: Complex64,
    pub iterations: usize,
    pub residual: f64,
}

const MAX_NEWTON: usize = 50;

/// Newton iteration on `f = eps^2 + V^2` with `f' = 2 (eps eps' + V V')`.
pub fn refine_zero(model: &PulseModel, seed: Complex64) -> Result<Refinement> {
    let tol = 1e-12 * model.energy_scale();
    let mut tau = seed;
    for iterations in 0..=MAX_NEWTON {
        if model.has_poles() && sech_pole_distance(tau) < POLE_GUARD {
            return Err(Error::Refinement {
                last: tau,
                iterations,
            });
        }
        let s = model.eval_complex(tau).map_err(|_| Error::Refinement {
            last: tau,
            iterations,
        })?;
        let f = s.detuning * s.detuning + s.coupling * s.coupling;
        if f.norm() < tol {
            return Ok(Refinement {
                tau,
                iterations,
                residual: f.norm(),
            });
        }
        if iterations == MAX_NEWTON {
            break;
        }
        let df = (s.detuning * s.d_detuning + s.coupling * s.d_coupling) * 2.0;
        let step = f / df;
        if !(step.re.is_finite() && step.im.is_finite()) {
            break;
        }
        tau -= step;
    }
    Err(Error::Refinement {
        last: tau,
        iterations: MAX_NEWTON,
    })
}

/// Upper-half-plane zeros ordered by distance from the real axis, for the
/// models where they are known in closed form (refined numerically).
pub fn upper_zeros(model: &PulseModel, count: usize) -> Result<Vec<DdpZero>> {
    let p = model.params();
    let unsupported = |what: &str| Error::Unsupported {
        model: model.id().to_string(),
        what: what.to_string(),
    };
    match model.id() {
        ModelId::SechTanh => {
            if p.a_t() == 0.0 {
                return Err(unsupported("transition points need nonzero detuning"));
            }
            st_nearest_upper_zeros(p.b_over_a(), count)
        }
        ModelId::LandauZener => {
            let slope = model.slope().ok_or_else(|| unsupported("missing slope"))?;
            if p.b_t() == 0.0 {
                return Err(unsupported("transition points need nonzero coupling"));
            }
            let tau = refine_zero(model, Complex64::new(0.0, p.b_t() / slope))?.tau;
            Ok(vec![DdpZero::at(tau)])
        }
        ModelId::RosenZener => {
            if p.a_t() == 0.0 || p.b_t() == 0.0 {
                return Err(unsupported("transition points need nonzero detuning and coupling"));
            }
            // cosh(tau) = +-i b/a  =>  tau = +-asinh(b/a) + i pi/2 (+ i pi k)
            let re = p.b_over_a().asinh();
            let mut out = Vec::new();
            for k in 0..count.div_ceil(2) as i64 {
                for sign in [-1.0, 1.0] {
                    let seed = Complex64::new(sign * re, FRAC_PI_2 + PI * k as f64);
                    let mut z = DdpZero::at(refine_zero(model, seed)?.tau);
                    z.k = k;
                    out.push(z);
                }
            }
            out.truncate(count);
            Ok(out)
        }
        ModelId::Rabi | ModelId::OddOdd => Err(unsupported("no isolated complex transition points")),
    }
}
