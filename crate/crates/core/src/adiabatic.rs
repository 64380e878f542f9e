//! Adiabatic-frame quantities: quasienergy `rho`, mixing angle `theta`
//! (`tan theta = V / eps`), adiabatic coupling `gamma = theta' / 2` and the
//! local adiabaticity ratio. Eigenvectors follow
//! `chi+ = (cos theta/2, sin theta/2)`, `chi- = (-sin theta/2, cos theta/2)`
//! in the `(c2, c1)` ordering.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dynamics::StateVector;
use crate::error::{Error, Result};
use crate::models::PulseModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticSample {
    pub tau: f64,
    pub rho: f64,
    /// Continuous along the sampled grid.
    pub theta: f64,
    pub gamma: f64,
    pub adiabaticity_ratio: f64,
}

/// Amplitudes on `chi+` and `chi-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticState {
    pub plus: Complex64,
    pub minus: Complex64,
}

impl AdiabaticState {
    pub fn norm_sqr(&self) -> f64 {
        self.plus.norm_sqr() + self.minus.norm_sqr()
    }
}

pub fn quasienergy(model: &PulseModel, tau: f64) -> f64 {
    let s = model.eval(tau);
    s.detuning.hypot(s.coupling)
}

/// `theta(tau)` from `atan2(V, eps)`, unwrapped by multiples of `pi` so that
/// it varies continuously along the (ordered) grid.
pub fn mixing_angle(model: &PulseModel, grid: &[f64]) -> Result<Vec<f64>> {
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Precondition("mixing angle grid must be strictly increasing".into()));
    }
    let mut out = Vec::with_capacity(grid.len());
    let mut prev: Option<f64> = None;
    for &tau in grid {
        let s = model.eval(tau);
        if s.detuning == 0.0 && s.coupling == 0.0 {
            return Err(Error::Degenerate { tau });
        }
        let raw = s.coupling.atan2(s.detuning);
        let theta = match prev {
            None => raw,
            Some(p) => raw + PI * ((p - raw) / PI).round(),
        };
        out.push(theta);
        prev = Some(theta);
    }
    Ok(out)
}

/// `gamma = (eps V' - eps' V) / (2 (eps^2 + V^2))`.
pub fn adiabatic_coupling(model: &PulseModel, tau: f64) -> Result<f64> {
    let s = model.eval(tau);
    let rho2 = s.detuning * s.detuning + s.coupling * s.coupling;
    if rho2 == 0.0 {
        return Err(Error::Singular {
            tau: Complex64::new(tau, 0.0),
        });
    }
    Ok((s.detuning * s.d_coupling - s.d_detuning * s.coupling) / (2.0 * rho2))
}

/// Analytic continuation of [`adiabatic_coupling`] to complex `tau`.
pub fn adiabatic_coupling_complex(model: &PulseModel, tau: Complex64) -> Result<Complex64> {
    let s = model.eval_complex(tau)?;
    let rho2 = s.detuning * s.detuning + s.coupling * s.coupling;
    if rho2.norm() == 0.0 {
        return Err(Error::Singular { tau });
    }
    Ok((s.detuning * s.d_coupling - s.d_detuning * s.coupling) / (rho2 * 2.0))
}

/// `|eps V' - eps' V| / (eps^2 + V^2)^(3/2)`; locally adiabatic where `<< 1`.
pub fn adiabaticity_ratio(model: &PulseModel, tau: f64) -> Result<f64> {
    let s = model.eval(tau);
    let rho = s.detuning.hypot(s.coupling);
    if rho == 0.0 {
        return Err(Error::Singular {
            tau: Complex64::new(tau, 0.0),
        });
    }
    Ok((s.detuning * s.d_coupling - s.d_detuning * s.coupling).abs() / rho.powi(3))
}

/// Samples along an ordered grid with a continuous mixing angle.
pub fn sample_grid(model: &PulseModel, grid: &[f64]) -> Result<Vec<AdiabaticSample>> {
    let thetas = mixing_angle(model, grid)?;
    grid.iter()
        .zip(thetas)
        .map(|(&tau, theta)| {
            Ok(AdiabaticSample {
                tau,
                rho: quasienergy(model, tau),
                theta,
                gamma: adiabatic_coupling(model, tau)?,
                adiabaticity_ratio: adiabaticity_ratio(model, tau)?,
            })
        })
        .collect()
}

/// Project a diabatic state onto `chi+(theta)`, `chi-(theta)`.
pub fn rotate_to_adiabatic(state: &StateVector, theta: f64) -> AdiabaticState {
    let (s, c) = (0.5 * theta).sin_cos();
    AdiabaticState {
        plus: state.c2 * c + state.c1 * s,
        minus: -state.c2 * s + state.c1 * c,
    }
}

/// Inverse of [`rotate_to_adiabatic`].
pub fn rotate_to_diabatic(state: &AdiabaticState, theta: f64) -> StateVector {
    let (s, c) = (0.5 * theta).sin_cos();
    StateVector::new(state.plus * c - state.minus * s, state.plus * s + state.minus * c)
}

/// Adiabatic components at `tau`, using the principal mixing angle.
pub fn to_adiabatic(state: &StateVector, model: &PulseModel, tau: f64) -> Result<AdiabaticState> {
    let s = model.eval(tau);
    if s.detuning == 0.0 && s.coupling == 0.0 {
        return Err(Error::Degenerate { tau });
    }
    Ok(rotate_to_adiabatic(state, s.coupling.atan2(s.detuning)))
}

/// Hamiltonian in the rotating adiabatic frame, `R^T H R - i R^T R'`, with
/// `R'` from a central difference of step `h` of the continuous mixing
/// angle. Should reproduce `[[rho, i gamma], [-i gamma, -rho]]`.
pub fn adiabatic_frame_hamiltonian(model: &PulseModel, tau: f64, h: f64) -> Result<[[Complex64; 2]; 2]> {
    let thetas = mixing_angle(model, &[tau - h, tau, tau + h])?;
    let rot = |theta: f64| {
        let (s, c) = (0.5 * theta).sin_cos();
        [[c, -s], [s, c]]
    };
    let r = rot(thetas[1]);
    let rp = rot(thetas[2]);
    let rm = rot(thetas[0]);
    let dr = |i: usize, j: usize| (rp[i][j] - rm[i][j]) / (2.0 * h);
    let s = model.eval(tau);
    let hm = [[s.detuning, s.coupling], [s.coupling, -s.detuning]];
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut rhr = 0.0;
            let mut rdr = 0.0;
            for k in 0..2 {
                rdr += r[k][i] * dr(k, j);
                for l in 0..2 {
                    rhr += r[k][i] * hm[k][l] * r[l][j];
                }
            }
            out[i][j] = Complex64::new(rhr, -rdr);
        }
    }
    Ok(out)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rotation_is_unitary(theta in -20.0f64..20.0, x in -1.0f64..1.0, y in -1.0f64..1.0, phase in 0.0f64..6.3) {
            let n = (x * x + y * y).sqrt().max(1e-3);
            let c2 = Complex64::new(x / n, y / n) * 0.6;
            let c1 = Complex64::from_polar(0.8, phase);
            let s = StateVector::new(c2, c1);
            let r = rotate_to_adiabatic(&s, theta);
            prop_assert!((r.norm_sqr() - s.norm_sqr()).abs() < 1e-14);
        }
    }
}
