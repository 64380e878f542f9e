//! Propagation of `i d/dtau psi = H(tau) psi` in the diabatic basis with an
//! adaptive eighth-order Runge-Kutta method.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::{ModelId, PulseModel};
use crate::ode::{self, State};

/// Amplitudes `(c2, c1)`; the system starts in state one (`c1 = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub c2: Complex64,
    pub c1: Complex64,
}

impl StateVector {
    pub fn new(c2: Complex64, c1: Complex64) -> Self {
        StateVector { c2, c1 }
    }

    /// All population in state one.
    pub fn ground() -> Self {
        StateVector::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }

    /// Transition probability `|c2|^2`.
    pub fn probability(&self) -> f64 {
        self.c2.norm_sqr()
    }

    fn to_array(self) -> State {
        [self.c2, self.c1]
    }

    fn from_array(y: State) -> Self {
        StateVector::new(y[0], y[1])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    /// Half-width of the symmetric window `[-tau_max, tau_max]`.
    pub tau_max: f64,
    pub max_steps: usize,
    pub dense_output_points: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rtol: 1e-10,
            atol: 1e-12,
            tau_max: 20.0,
            max_steps: 10_000_000,
            dense_output_points: 2001,
        }
    }
}

impl IntegratorConfig {
    /// Default configuration, using the model's own window when it has one.
    pub fn for_model(model: &PulseModel) -> Self {
        let mut cfg = IntegratorConfig::default();
        if let Some(w) = model.window() {
            cfg.tau_max = w;
        }
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(Error::Parameter("rtol and atol must be positive".into()));
        }
        if !(self.tau_max.is_finite() && self.tau_max > 0.0) {
            return Err(Error::Parameter(format!("tau_max must be positive, got {}", self.tau_max)));
        }
        if self.dense_output_points < 2 {
            return Err(Error::Parameter("dense_output_points must be at least 2".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::Parameter("max_steps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub grid: Vec<f64>,
    pub states: Vec<StateVector>,
    /// `|c2|^2` at each grid point.
    pub probabilities: Vec<f64>,
    pub final_state: StateVector,
    pub final_p: f64,
    /// Largest `| |psi|^2 - 1 |` seen at grid points and step ends.
    pub max_norm_drift: f64,
    /// Sum of the absolute local error estimates of all accepted steps.
    pub error_estimate: f64,
    pub steps: usize,
    pub rejected: usize,
}

fn hamiltonian_rhs(model: &PulseModel) -> impl Fn(f64, &State) -> State + '_ {
    let i = Complex64::i();
    move |tau, y| {
        let s = model.eval(tau);
        let (e, v) = (s.detuning, s.coupling);
        [
            -i * (y[0] * e + y[1] * v),
            -i * (y[0] * v - y[1] * e),
        ]
    }
}

const MAX_STEP_IN_SPACINGS: f64 = 10.0;
/// Total norm change the step endpoints may accumulate over a full span.
const NORM_DRIFT_BUDGET: f64 = 1e-10;
/// Per-step allowance below which rounding would reject every step.
const NORM_DEFECT_FLOOR: f64 = 1e-15;

fn norm_sqr(y: &State) -> f64 {
    y.iter().map(|c| c.norm_sqr()).sum()
}

/// Propagate over the configured window `[-tau_max, tau_max]`.
pub fn propagate(
    model: &PulseModel,
    config: &IntegratorConfig,
    initial: StateVector,
) -> Result<Trajectory> {
    propagate_between(model, config, initial, -config.tau_max, config.tau_max)
}

/// Propagate from `from` to `to` (either direction), sampling
/// `dense_output_points` equally spaced times by interpolation.
pub fn propagate_between(
    model: &PulseModel,
    config: &IntegratorConfig,
    initial: StateVector,
    from: f64,
    to: f64,
) -> Result<Trajectory> {
    config.validate()?;
    let drift0 = (initial.norm_sqr() - 1.0).abs();
    if drift0 > 1e-12 {
        return Err(Error::Precondition(format!(
            "initial state not normalized (| |psi|^2 - 1 | = {drift0:e})"
        )));
    }
    if !(from.is_finite() && to.is_finite()) || from == to {
        return Err(Error::Precondition(format!("invalid propagation span [{from}, {to}]")));
    }
    let n = config.dense_output_points;
    let grid: Vec<f64> = (0..n)
        .map(|k| {
            if k == n - 1 {
                to
            } else {
                from + (to - from) * k as f64 / (n - 1) as f64
            }
        })
        .collect();

    let f = hamiltonian_rhs(model);
    let dir = (to - from).signum();
    let span = (to - from).abs();
    let (rtol, atol) = (config.rtol, config.atol);

    let mut t = from;
    let mut y = initial.to_array();
    let mut k1 = f(t, &y);
    // the interpolant is less accurate than the step ends; keeping steps
    // within a few grid spacings holds sampled states to the same accuracy
    let h_max = MAX_STEP_IN_SPACINGS * span / (n - 1) as f64;
    let mut h = ode::initial_step(&f, t, &y, &k1, dir, rtol, atol).min(h_max);

    let mut states = Vec::with_capacity(n);
    let mut next = 0usize;
    states.push(initial);
    next += 1;

    let mut steps = 0usize;
    let mut rejected = 0usize;
    let mut error_estimate = 0.0;
    let mut max_drift = drift0;

    let partial = |states: &[StateVector], y: State, steps, rejected, drift, err| {
        let final_state = StateVector::from_array(y);
        let probabilities: Vec<f64> = states.iter().map(|s| s.probability()).collect();
        Trajectory {
            grid: grid[..states.len()].to_vec(),
            states: states.to_vec(),
            probabilities,
            final_state,
            final_p: final_state.probability(),
            max_norm_drift: drift,
            error_estimate: err,
            steps,
            rejected,
        }
    };

    while (to - t) * dir > 0.0 {
        if steps + rejected >= config.max_steps {
            return Err(Error::Convergence {
                steps: steps + rejected,
                partial: Box::new(partial(&states, y, steps, rejected, max_drift, error_estimate)),
            });
        }
        h = h.min(h_max);
        let remaining = (to - t).abs();
        let last = h >= remaining;
        let hh = if last { remaining } else { h };
        let step = ode::try_step(&f, t, &y, &k1, dir * hh, rtol, atol);
        if !step.err.is_finite() || !step.y1.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::NonFinite { tau: t + dir * hh });
        }
        // the exact flow is unitary, so the change in norm is a measured
        // local error; each step may spend its share of the drift budget
        let defect = (norm_sqr(&step.y1) - norm_sqr(&y)).abs();
        let allowance = (NORM_DRIFT_BUDGET * hh / span).max(NORM_DEFECT_FLOOR);
        let err = step.err.max(defect / allowance);
        if err <= 1.0 {
            let t_new = if last { to } else { t + dir * hh };
            let mut dense = None;
            while next < n && (grid[next] - t_new) * dir <= 0.0 {
                let s = if next == n - 1 && last {
                    StateVector::from_array(step.y1)
                } else {
                    let d = dense.get_or_insert_with(|| step.dense(&f));
                    StateVector::from_array(d.at(grid[next]))
                };
                max_drift = max_drift.max((s.norm_sqr() - 1.0).abs());
                states.push(s);
                next += 1;
            }
            // error norm is relative to the tolerance scale
            let scale = atol + rtol * y.iter().map(|c| c.norm()).fold(0.0, f64::max);
            error_estimate += step.err * scale;
            y = step.y1;
            k1 = step.last_stage();
            t = t_new;
            steps += 1;
            max_drift = max_drift.max((StateVector::from_array(y).norm_sqr() - 1.0).abs());
        } else {
            rejected += 1;
        }
        let factor = if err == 0.0 {
            10.0
        } else {
            (0.9 * err.powf(-1.0 / 8.0)).clamp(0.2, 10.0)
        };
        h = if err <= 1.0 {
            hh * factor
        } else {
            hh * factor.min(1.0)
        };
    }
    while states.len() < n {
        // only reachable through rounding of the last grid point
        states.push(StateVector::from_array(y));
    }
    let final_state = StateVector::from_array(y);
    let probabilities = states.iter().map(|s| s.probability()).collect();
    Ok(Trajectory {
        grid,
        states,
        probabilities,
        final_state,
        final_p: final_state.probability(),
        max_norm_drift: max_drift,
        error_estimate,
        steps,
        rejected,
    })
}

/// Final `|c2|^2` starting from state one.
pub fn final_transition_probability(model: &PulseModel, config: &IntegratorConfig) -> Result<f64> {
    Ok(propagate(model, config, StateVector::ground())?.final_p)
}

/// Twice the coupling magnitude integrated beyond `tau_max` on one side,
/// using closed-form tails. Bounds the pulse area lost to truncation.
pub fn truncation_check(model: &PulseModel, tau_max: f64) -> Result<f64> {
    if !(tau_max >= 0.0) {
        return Err(Error::Parameter(format!("tau_max must be >= 0, got {tau_max}")));
    }
    let b = model.params().b_t();
    match model.id() {
        // ∫ sech tanh = sech
        ModelId::SechTanh | ModelId::OddOdd => Ok(2.0 * b / tau_max.cosh()),
        // ∫ sech = 2 atan(exp(-tau))
        ModelId::RosenZener => Ok(2.0 * b * 2.0 * (-tau_max).exp().atan()),
        ModelId::Rabi | ModelId::LandauZener => Err(Error::Unsupported {
            model: model.id().to_string(),
            what: "truncation check needs a decaying coupling".into(),
        }),
    }
}
