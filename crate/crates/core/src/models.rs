//! Catalogue of two-level models in scaled time `tau = t / T`.
//!
//! Every model returns the dimensionless products `eps(tau) * T` and
//! `V(tau) * T`, so the Schrödinger equation in `tau` only involves `aT`,
//! `bT` (and the scaled slope `alpha * T^2` for Landau-Zener). The diabatic
//! Hamiltonian is `[[eps, V], [V, -eps]]` acting on `(c2, c1)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;

/// Evaluations closer than this to a pole of `sech`/`tanh` are rejected.
pub const POLE_GUARD: f64 = 1e-8;

/// The triple `(a, b, T)` shared by all models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Detuning amplitude (angular frequency).
    pub a: f64,
    /// Coupling amplitude (angular frequency).
    pub b: f64,
    /// Pulse timescale.
    pub t: f64,
}

impl ModelParams {
    pub fn new(a: f64, b: f64, t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Parameter(format!("timescale T must be positive, got {t}")));
        }
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::Parameter(format!("detuning amplitude a must be >= 0, got {a}")));
        }
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::Parameter(format!("coupling amplitude b must be >= 0, got {b}")));
        }
        if !((a * t).is_finite() && (b * t).is_finite()) {
            return Err(Error::Parameter("aT and bT must be finite".into()));
        }
        Ok(ModelParams { a, b, t })
    }

    /// Parameters given directly in dimensionless form (`T = 1`).
    pub fn scaled(a_t: f64, b_t: f64) -> Result<Self> {
        Self::new(a_t, b_t, 1.0)
    }

    pub fn a_t(&self) -> f64 {
        self.a * self.t
    }

    pub fn b_t(&self) -> f64 {
        self.b * self.t
    }

    /// `b / a`; infinite on resonance with nonzero coupling.
    pub fn b_over_a(&self) -> f64 {
        if self.b == 0.0 {
            0.0
        } else {
            self.b / self.a
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    Rabi,
    RosenZener,
    LandauZener,
    SechTanh,
    OddOdd,
}

impl ModelId {
    pub const ALL: [ModelId; 5] = [
        ModelId::Rabi,
        ModelId::RosenZener,
        ModelId::LandauZener,
        ModelId::SechTanh,
        ModelId::OddOdd,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelId::Rabi => "rabi",
            ModelId::RosenZener => "rosen-zener",
            ModelId::LandauZener => "landau-zener",
            ModelId::SechTanh => "sech-tanh",
            ModelId::OddOdd => "odd-odd",
        }
    }

    /// Whether a closed-form final probability is available.
    pub fn has_exact(&self) -> bool {
        matches!(
            self,
            ModelId::RosenZener | ModelId::LandauZener | ModelId::OddOdd
        )
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symmetry {
    pub detuning: Parity,
    pub coupling: Parity,
}

/// Detuning, coupling and their `tau` derivatives at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    pub detuning: T,
    pub coupling: T,
    pub d_detuning: T,
    pub d_coupling: T,
}

/// A model from the fixed catalogue, immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseModel {
    id: ModelId,
    params: ModelParams,
    /// Scaled Landau-Zener slope `alpha * T^2`.
    slope: Option<f64>,
    window: Option<f64>,
}

/// Build any model except Landau-Zener, which also needs a slope
/// (see [`make_landau_zener`]).
pub fn make_model(id: ModelId, params: ModelParams) -> Result<PulseModel> {
    let params = ModelParams::new(params.a, params.b, params.t)?;
    if id == ModelId::LandauZener {
        return Err(Error::Parameter(
            "landau-zener requires a slope; use make_landau_zener".into(),
        ));
    }
    Ok(PulseModel {
        id,
        params,
        slope: None,
        window: None,
    })
}

/// Landau-Zener model `eps = alpha t`, `V = b`, truncated to a finite window.
///
/// `slope` is the physical sweep rate `alpha`; the default window half-width
/// in scaled time is `20 max(1, bT / sqrt(s)) / sqrt(s)` with `s = alpha T^2`.
pub fn make_landau_zener(params: ModelParams, slope: f64) -> Result<PulseModel> {
    let params = ModelParams::new(params.a, params.b, params.t)?;
    if !(slope.is_finite() && slope > 0.0) {
        return Err(Error::Parameter(format!("landau-zener slope must be positive, got {slope}")));
    }
    let scaled = slope * params.t * params.t;
    if !scaled.is_finite() {
        return Err(Error::Parameter("alpha T^2 must be finite".into()));
    }
    let root = scaled.sqrt();
    let window = 20.0 * (params.b_t() / root).max(1.0) / root;
    Ok(PulseModel {
        id: ModelId::LandauZener,
        params,
        slope: Some(scaled),
        window: Some(window),
    })
}

/// Parse an identifier and build the model. `slope` is consulted only for
/// Landau-Zener.
pub fn model_from_str(id: &str, params: ModelParams, slope: Option<f64>) -> Result<PulseModel> {
    match id.parse::<ModelId>()? {
        ModelId::LandauZener => {
            let slope = slope.ok_or_else(|| {
                Error::Parameter("landau-zener requires a slope (alpha)".into())
            })?;
            make_landau_zener(params, slope)
        }
        other => make_model(other, params),
    }
}

fn sech_tanh_real(tau: f64) -> (f64, f64) {
    // 1/cosh overflows gracefully to 0
    (1.0 / tau.cosh(), tau.tanh())
}

fn sech_tanh_complex(tau: Complex64) -> (Complex64, Complex64) {
    let c = tau.cosh();
    (c.inv(), tau.sinh() / c)
}

/// Distance from `tau` to the nearest point `i(pi/2 + k pi)`.
pub fn sech_pole_distance(tau: Complex64) -> f64 {
    let k = ((tau.im - FRAC_PI_2) / PI).round();
    let pole = FRAC_PI_2 + k * PI;
    tau.re.hypot(tau.im - pole)
}

/// Distance from the straight segment `[from, to]` to the nearest `sech` pole.
pub fn sech_pole_distance_to_segment(from: Complex64, to: Complex64) -> f64 {
    let lo = from.im.min(to.im);
    let hi = from.im.max(to.im);
    let k_lo = ((lo - FRAC_PI_2) / PI).floor() as i64 - 1;
    let k_hi = ((hi - FRAC_PI_2) / PI).ceil() as i64 + 1;
    let dir = to - from;
    let len2 = dir.norm_sqr();
    (k_lo..=k_hi)
        .map(|k| {
            let pole = Complex64::new(0.0, FRAC_PI_2 + k as f64 * PI);
            let s = if len2 == 0.0 {
                0.0
            } else {
                (((pole - from) * dir.conj()).re / len2).clamp(0.0, 1.0)
            };
            (from + dir * s - pole).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

impl PulseModel {
    pub fn id(&self) -> ModelId {
        self.id
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Scaled Landau-Zener slope `alpha T^2`.
    pub fn slope(&self) -> Option<f64> {
        self.slope
    }

    /// Natural truncation half-width, only set for Landau-Zener.
    pub fn window(&self) -> Option<f64> {
        self.window
    }

    pub fn with_window(mut self, tau_max: f64) -> Result<Self> {
        if !(tau_max.is_finite() && tau_max > 0.0) {
            return Err(Error::Parameter(format!("window must be positive, got {tau_max}")));
        }
        self.window = Some(tau_max);
        Ok(self)
    }

    pub fn symmetry(&self) -> Symmetry {
        use Parity::*;
        let (detuning, coupling) = match self.id {
            ModelId::Rabi | ModelId::RosenZener => (Even, Even),
            ModelId::LandauZener => (Odd, Even),
            ModelId::SechTanh => (Even, Odd),
            ModelId::OddOdd => (Odd, Odd),
        };
        Symmetry { detuning, coupling }
    }

    /// Whether the coupling decays at large `|tau|`.
    pub fn has_decaying_coupling(&self) -> bool {
        matches!(
            self.id,
            ModelId::RosenZener | ModelId::SechTanh | ModelId::OddOdd
        )
    }

    /// Whether the model functions have poles at `i(pi/2 + k pi)`.
    pub fn has_poles(&self) -> bool {
        let (a, b) = (self.params.a_t(), self.params.b_t());
        match self.id {
            ModelId::Rabi | ModelId::LandauZener => false,
            ModelId::RosenZener | ModelId::SechTanh => b != 0.0,
            ModelId::OddOdd => a != 0.0 || b != 0.0,
        }
    }

    /// Energy scale used for relative zero tests, in scaled units squared.
    pub fn energy_scale(&self) -> f64 {
        let (a, b) = (self.params.a_t(), self.params.b_t());
        let s = self.slope.unwrap_or(0.0);
        a.powi(2).max(b.powi(2)).max(s).max(f64::MIN_POSITIVE)
    }

    /// Closed-form final transition probability, where one exists.
    pub fn exact_probability(&self) -> Option<f64> {
        match self.id {
            ModelId::RosenZener => Some(exact_p_rosen_zener(&self.params)),
            ModelId::LandauZener => {
                let s = self.slope?;
                Some((-PI * self.params.b_t().powi(2) / s).exp())
            }
            ModelId::OddOdd => Some(0.0),
            _ => None,
        }
    }

    /// Real-time evaluation; never fails for finite `tau`.
    pub fn eval(&self, tau: f64) -> Sample<f64> {
        let (a, b) = (self.params.a_t(), self.params.b_t());
        match self.id {
            ModelId::Rabi => Sample {
                detuning: a,
                coupling: b,
                d_detuning: 0.0,
                d_coupling: 0.0,
            },
            ModelId::RosenZener => {
                let (s, t) = sech_tanh_real(tau);
                Sample {
                    detuning: a,
                    coupling: b * s,
                    d_detuning: 0.0,
                    d_coupling: -b * s * t,
                }
            }
            ModelId::LandauZener => {
                let alpha = self.slope.unwrap_or(0.0);
                Sample {
                    detuning: alpha * tau,
                    coupling: b,
                    d_detuning: alpha,
                    d_coupling: 0.0,
                }
            }
            ModelId::SechTanh => {
                let (s, t) = sech_tanh_real(tau);
                Sample {
                    detuning: a,
                    coupling: b * s * t,
                    d_detuning: 0.0,
                    d_coupling: b * s * (s * s - t * t),
                }
            }
            ModelId::OddOdd => {
                let (s, t) = sech_tanh_real(tau);
                Sample {
                    detuning: a * t,
                    coupling: b * s * t,
                    d_detuning: a * s * s,
                    d_coupling: b * s * (s * s - t * t),
                }
            }
        }
    }

    /// Evaluation at complex scaled time. Fails within [`POLE_GUARD`] of a pole.
    pub fn eval_complex(&self, tau: Complex64) -> Result<Sample<Complex64>> {
        let (a, b) = (self.params.a_t(), self.params.b_t());
        let zero = Complex64::new(0.0, 0.0);
        let ac = Complex64::new(a, 0.0);
        if self.has_poles() {
            let distance = sech_pole_distance(tau);
            if distance < POLE_GUARD {
                return Err(Error::Domain { tau, distance });
            }
        }
        let sample = match self.id {
            ModelId::Rabi => Sample {
                detuning: ac,
                coupling: Complex64::new(b, 0.0),
                d_detuning: zero,
                d_coupling: zero,
            },
            ModelId::RosenZener => {
                if b == 0.0 {
                    Sample {
                        detuning: ac,
                        coupling: zero,
                        d_detuning: zero,
                        d_coupling: zero,
                    }
                } else {
                    let (s, t) = sech_tanh_complex(tau);
                    Sample {
                        detuning: ac,
                        coupling: s * b,
                        d_detuning: zero,
                        d_coupling: -s * t * b,
                    }
                }
            }
            ModelId::LandauZener => {
                let alpha = self.slope.unwrap_or(0.0);
                Sample {
                    detuning: tau * alpha,
                    coupling: Complex64::new(b, 0.0),
                    d_detuning: Complex64::new(alpha, 0.0),
                    d_coupling: zero,
                }
            }
            ModelId::SechTanh => {
                if b == 0.0 {
                    Sample {
                        detuning: ac,
                        coupling: zero,
                        d_detuning: zero,
                        d_coupling: zero,
                    }
                } else {
                    let (s, t) = sech_tanh_complex(tau);
                    Sample {
                        detuning: ac,
                        coupling: s * t * b,
                        d_detuning: zero,
                        d_coupling: s * (s * s - t * t) * b,
                    }
                }
            }
            ModelId::OddOdd => {
                if a == 0.0 && b == 0.0 {
                    Sample {
                        detuning: zero,
                        coupling: zero,
                        d_detuning: zero,
                        d_coupling: zero,
                    }
                } else {
                    let (s, t) = sech_tanh_complex(tau);
                    Sample {
                        detuning: t * a,
                        coupling: s * t * b,
                        d_detuning: s * s * a,
                        d_coupling: s * (s * s - t * t) * b,
                    }
                }
            }
        };
        Ok(sample)
    }
}

/// `sin^2(pi bT) sech^2(pi aT)`.
pub fn exact_p_rosen_zener(params: &ModelParams) -> f64 {
    let sech = 1.0 / (PI * params.a_t()).cosh();
    let s = (PI * params.b_t()).sin();
    (s * s * sech * sech).clamp(0.0, 1.0)
}

/// `exp(-pi b^2 / alpha)`: probability of staying in the initial diabatic
/// state through a linear crossing, equal to the nonadiabatic transition
/// probability between the adiabatic states.
pub fn exact_p_landau_zener(params: &ModelParams, slope: f64) -> Result<f64> {
    if !(slope.is_finite() && slope > 0.0) {
        return Err(Error::Parameter(format!("landau-zener slope must be positive, got {slope}")));
    }
    Ok((-PI * params.b * params.b / slope).exp())
}

/// Pulse area `A = 2 ∫ V T dtau` between two scaled times (either may be
/// infinite for decaying couplings).
pub fn pulse_area(model: &PulseModel, tau_i: f64, tau_f: f64, tolerance: f64) -> Result<f64> {
    if tau_i == tau_f {
        return Ok(0.0);
    }
    if tau_i > tau_f || tau_i.is_nan() || tau_f.is_nan() {
        return Err(Error::Precondition(format!(
            "pulse area needs tau_i < tau_f, got [{tau_i}, {tau_f}]"
        )));
    }
    if !(tau_i.is_finite() && tau_f.is_finite()) && !model.has_decaying_coupling() {
        return Err(Error::Unsupported {
            model: model.id().to_string(),
            what: "infinite integration limits for a non-decaying coupling".into(),
        });
    }
    let q = quad::integrate(|t| model.eval(t).coupling, tau_i, tau_f, 0.5 * tolerance)?;
    Ok(2.0 * q.value)
}

/// Area-theorem probability `sin^2(A(tau, tau_i) / 2)` for a resonant model.
pub fn resonant_p(model: &PulseModel, tau_i: f64, tau: f64) -> Result<f64> {
    const GRID: usize = 10_001;
    let (lo, hi) = if tau_i <= tau { (tau_i, tau) } else { (tau, tau_i) };
    let max_detuning = (0..GRID)
        .map(|k| lo + (hi - lo) * k as f64 / (GRID - 1) as f64)
        .map(|t| model.eval(t).detuning.abs())
        .fold(0.0, f64::max);
    if max_detuning > 1e-12 {
        return Err(Error::Precondition(format!(
            "area theorem needs zero detuning, found |eps| = {max_detuning:e}"
        )));
    }
    if tau == tau_i {
        return Ok(0.0);
    }
    let area = if tau > tau_i {
        pulse_area(model, tau_i, tau, 1e-13)?
    } else {
        -pulse_area(model, tau, tau_i, 1e-13)?
    };
    Ok((0.5 * area).sin().powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(a: f64, b: f64) -> PulseModel {
        make_model(ModelId::SechTanh, ModelParams::scaled(a, b).unwrap()).unwrap()
    }

    fn all_models() -> Vec<PulseModel> {
        let p = ModelParams::scaled(0.7, 1.3).unwrap();
        let mut v: Vec<_> = [ModelId::Rabi, ModelId::RosenZener, ModelId::SechTanh, ModelId::OddOdd]
            .into_iter()
            .map(|id| make_model(id, p).unwrap())
            .collect();
        v.push(make_landau_zener(p, 0.9).unwrap());
        v
    }

    #[test]
    fn parse_identifiers() {
        for id in ModelId::ALL {
            assert_eq!(id.as_str().parse::<ModelId>().unwrap(), id);
        }
        assert!(matches!("sech".parse::<ModelId>(), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(ModelParams::new(1.0, 1.0, 0.0), Err(Error::Parameter(_))));
        assert!(matches!(ModelParams::new(1.0, 1.0, -2.0), Err(Error::Parameter(_))));
        assert!(ModelParams::new(-1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 1.0).is_err());
        assert!(make_model(ModelId::LandauZener, ModelParams::scaled(0.0, 1.0).unwrap()).is_err());
        assert!(make_landau_zener(ModelParams::scaled(0.0, 1.0).unwrap(), 0.0).is_err());
        assert!(model_from_str("nope", ModelParams::scaled(1.0, 1.0).unwrap(), None).is_err());
    }

    #[test]
    fn catalogue_values() {
        assert_eq!(st(1.0, 2.0).eval(0.0).coupling, 0.0);
        let rz = make_model(ModelId::RosenZener, ModelParams::scaled(1.0, 1.0).unwrap()).unwrap();
        assert_eq!(rz.eval(0.0).coupling, 1.0);
        let peak = st(1.0, 1.0).eval(1f64.asinh()).coupling;
        assert!((peak - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sech_tanh_peak_by_dense_scan() {
        let m = st(1.0, 1.0);
        let (mut best_t, mut best_v) = (0.0, f64::MIN);
        for k in 0..=200_000 {
            let t = k as f64 * 1e-5;
            let v = m.eval(t).coupling;
            if v > best_v {
                best_v = v;
                best_t = t;
            }
        }
        assert!((best_t - 0.881_373_587).abs() < 2e-5);
        assert!((best_v - 0.5).abs() < 1e-9);
    }

    #[test]
    fn declared_parity_holds() {
        for m in all_models() {
            let sym = m.symmetry();
            for t in [0.1, 0.5, 1.0, 3.0] {
                let (p, q) = (m.eval(t), m.eval(-t));
                let check = |x: f64, y: f64, parity: Parity| match parity {
                    Parity::Even => (x - y).abs() < 1e-12,
                    Parity::Odd => (x + y).abs() < 1e-12,
                };
                assert!(check(p.detuning, q.detuning, sym.detuning), "{} eps", m.id());
                assert!(check(p.coupling, q.coupling, sym.coupling), "{} V", m.id());
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for m in all_models() {
            for t in [-2.3, -0.4, 0.3, 1.1, 4.0] {
                let s = m.eval(t);
                let fd_e = (m.eval(t + h).detuning - m.eval(t - h).detuning) / (2.0 * h);
                let fd_v = (m.eval(t + h).coupling - m.eval(t - h).coupling) / (2.0 * h);
                let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(1e-3);
                assert!(rel(fd_e, s.d_detuning) < 1e-6, "{} eps' at {t}", m.id());
                assert!(rel(fd_v, s.d_coupling) < 1e-6, "{} V' at {t}", m.id());
            }
        }
    }

    #[test]
    fn complex_evaluation_is_real_on_real_axis() {
        for m in all_models() {
            for t in [-3.0, -0.5, 0.0, 0.2, 2.5] {
                let c = m.eval_complex(Complex64::new(t, 0.0)).unwrap();
                let r = m.eval(t);
                assert!(c.detuning.im.abs() < 1e-15 && c.coupling.im.abs() < 1e-15);
                assert!((c.detuning.re - r.detuning).abs() < 1e-13);
                assert!((c.coupling.re - r.coupling).abs() < 1e-13);
                assert!((c.d_coupling.re - r.d_coupling).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn cauchy_riemann_for_sech_tanh() {
        let m = st(0.8, 1.7);
        let h = 1e-6;
        for (x, y) in [(0.3, 0.4), (-1.2, 1.1), (0.9, -0.7), (2.0, 1.4)] {
            let z = Complex64::new(x, y);
            let f = |z| m.eval_complex(z).unwrap().coupling;
            let dx = (f(z + h) - f(z - h)) / (2.0 * h);
            let dy = (f(z + Complex64::i() * h) - f(z - Complex64::i() * h)) / (2.0 * h);
            // analytic: df/dy = i df/dx
            let rel = (dy - Complex64::i() * dx).norm() / dx.norm();
            assert!(rel < 1e-5, "CR violated at {z}: {rel}");
            let analytic = m.eval_complex(z).unwrap().d_coupling;
            assert!((analytic - dx).norm() / dx.norm() < 1e-6);
        }
    }

    #[test]
    fn poles_are_rejected() {
        let m = st(1.0, 1.0);
        let near = Complex64::new(0.0, FRAC_PI_2 + 1e-9);
        assert!(matches!(m.eval_complex(near), Err(Error::Domain { .. })));
        let lower = Complex64::new(5e-9, -FRAC_PI_2);
        assert!(m.eval_complex(lower).is_err());
        assert!(m.eval_complex(Complex64::new(0.0, FRAC_PI_2 + 1e-6)).is_ok());
        // zero coupling has no poles at all
        assert!(st(1.0, 0.0).eval_complex(Complex64::new(0.0, FRAC_PI_2)).is_ok());
    }

    #[test]
    fn segment_pole_distance() {
        let d = sech_pole_distance_to_segment(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        assert!((d - FRAC_PI_2).abs() < 1e-15);
        let d = sech_pole_distance_to_segment(
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 3.0 * FRAC_PI_2),
        );
        assert!(d < 1e-15);
    }

    #[test]
    fn rosen_zener_closed_form() {
        let p = |a, b| exact_p_rosen_zener(&ModelParams::scaled(a, b).unwrap());
        assert!((p(0.0, 0.5) - 1.0).abs() < 1e-15);
        assert!(p(0.0, 1.0) < 1e-30);
        // direct evaluation: sin^2(pi/2) / cosh^2(0.1 pi)
        let expected = 1.0 / (0.1 * PI).cosh().powi(2);
        assert!((p(0.1, 0.5) - expected).abs() < 1e-15);
        assert!((p(0.1, 0.5) - 0.9074).abs() < 1e-4);
        assert_eq!(p(400.0, 0.5), 0.0);
    }

    #[test]
    fn landau_zener_closed_form() {
        let params = |b| ModelParams::scaled(0.0, b).unwrap();
        assert_eq!(exact_p_landau_zener(&params(0.0), 3.0).unwrap(), 1.0);
        let p = exact_p_landau_zener(&params(1.0), 1.0).unwrap();
        assert!((p - 0.043_213_918).abs() < 1e-8);
        assert!(exact_p_landau_zener(&params(30.0), 1.0).unwrap() < 1e-300);
        assert!(exact_p_landau_zener(&params(1.0), -1.0).is_err());
        let lz = make_landau_zener(params(1.0), 1.0).unwrap();
        assert_eq!(lz.window(), Some(20.0));
        assert!((lz.exact_probability().unwrap() - p).abs() < 1e-15);
    }

    #[test]
    fn pulse_areas() {
        let area = pulse_area(&st(1.0, 1.0), -20.0, 20.0, 1e-12).unwrap();
        assert!(area.abs() < 1e-10);
        let rz = make_model(ModelId::RosenZener, ModelParams::scaled(0.3, 0.5).unwrap()).unwrap();
        let area = pulse_area(&rz, f64::NEG_INFINITY, f64::INFINITY, 1e-12).unwrap();
        assert!((area - PI).abs() < 1e-11, "{area}");
        assert_eq!(pulse_area(&rz, 1.5, 1.5, 1e-12).unwrap(), 0.0);
        assert!(pulse_area(&rz, 2.0, 1.0, 1e-12).is_err());
        let lz = make_landau_zener(ModelParams::scaled(0.0, 1.0).unwrap(), 1.0).unwrap();
        assert!(pulse_area(&lz, 0.0, f64::INFINITY, 1e-9).is_err());
    }

    #[test]
    fn area_theorem_values() {
        // constant resonant coupling: half-area = b * duration
        let rabi = |b| make_model(ModelId::Rabi, ModelParams::scaled(0.0, b).unwrap()).unwrap();
        let p = resonant_p(&rabi(FRAC_PI_2), 0.0, 1.0).unwrap();
        assert!((p - 1.0).abs() < 1e-14);
        let p = resonant_p(&rabi(PI), 0.0, 1.0).unwrap();
        assert!(p < 1e-14);
        let p = resonant_p(&rabi(PI / 4.0), 0.0, 1.0).unwrap();
        assert!((p - 0.5).abs() < 1e-14);
        let detuned = make_model(ModelId::Rabi, ModelParams::scaled(0.1, 1.0).unwrap()).unwrap();
        assert!(matches!(resonant_p(&detuned, 0.0, 1.0), Err(Error::Precondition(_))));
        // zero-area pulse on resonance returns everything
        let p = resonant_p(&st(0.0, 3.0), -20.0, 20.0).unwrap();
        assert!(p < 1e-20);
    }
}
