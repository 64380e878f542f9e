use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::ddp::{approx_closed_form, born_approx, cpt_estimate, ddp_nearest, ddp_single, QuadratureConfig};
use crate::dynamics::{propagate, IntegratorConfig, StateVector};
use crate::error::{Error, Result};
use crate::models::{make_landau_zener, make_model, ModelId, ModelParams, PulseModel};

/// How a row's probability is obtained. The declaration order is the sort
/// order used for output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SweepMethod {
    Numeric,
    Exact,
    Ddp1,
    /// Coherent sum over this many zeros nearest the real axis.
    DdpN(usize),
    Approx1,
    Born,
    Cpt,
}

impl fmt::Display for SweepMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepMethod::Numeric => f.write_str("numeric"),
            SweepMethod::Exact => f.write_str("exact"),
            SweepMethod::Ddp1 => f.write_str("ddp1"),
            SweepMethod::DdpN(n) => write!(f, "ddpN:{n}"),
            SweepMethod::Approx1 => f.write_str("approx1"),
            SweepMethod::Born => f.write_str("born"),
            SweepMethod::Cpt => f.write_str("cpt"),
        }
    }
}

impl FromStr for SweepMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "numeric" => SweepMethod::Numeric,
            "exact" => SweepMethod::Exact,
            "ddp1" => SweepMethod::Ddp1,
            "approx1" => SweepMethod::Approx1,
            "born" => SweepMethod::Born,
            "cpt" => SweepMethod::Cpt,
            _ => {
                let n = s
                    .strip_prefix("ddpN:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| Error::Spec(format!("unknown method `{s}`")))?;
                if n == 0 {
                    return Err(Error::Spec("ddpN needs at least one zero".into()));
                }
                SweepMethod::DdpN(n)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub model: ModelId,
    pub a_values: Vec<f64>,
    pub b_min: f64,
    pub b_max: f64,
    pub b_steps: usize,
    pub methods: Vec<SweepMethod>,
    /// Landau-Zener sweep rate; required for that model only.
    pub alpha: Option<f64>,
    /// `tau_max` is overridden by the model's own window unless
    /// `window` is set.
    pub integrator: IntegratorConfig,
    pub window: Option<f64>,
    pub quadrature: QuadratureConfig,
    /// Worker threads; `None` uses all available cores.
    pub jobs: Option<usize>,
}

impl SweepSpec {
    /// A spec with default numerics and the default grid `bT in [0, 10]`
    /// with 401 points.
    pub fn new(model: ModelId, a_values: Vec<f64>, methods: Vec<SweepMethod>) -> Self {
        SweepSpec {
            model,
            a_values,
            b_min: 0.0,
            b_max: 10.0,
            b_steps: 401,
            methods,
            alpha: None,
            integrator: IntegratorConfig::default(),
            window: None,
            quadrature: QuadratureConfig::default(),
            jobs: None,
        }
    }

    pub fn with_b_range(mut self, min: f64, max: f64, steps: usize) -> Self {
        self.b_min = min;
        self.b_max = max;
        self.b_steps = steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Spec("method list is empty".into()));
        }
        if self.a_values.is_empty() {
            return Err(Error::Spec("aT list is empty".into()));
        }
        if let Some(a) = self.a_values.iter().find(|a| !a.is_finite() || **a < 0.0) {
            return Err(Error::Spec(format!("aT values must be finite and >= 0, got {a}")));
        }
        if self.b_steps < 2 {
            return Err(Error::Spec(format!("bT steps must be >= 2, got {}", self.b_steps)));
        }
        if !(self.b_min.is_finite() && self.b_max.is_finite() && self.b_min < self.b_max) {
            return Err(Error::Spec(format!(
                "bT range needs finite min < max, got [{}, {}]",
                self.b_min, self.b_max
            )));
        }
        if self.b_min < 0.0 {
            return Err(Error::Spec(format!("bT must be >= 0, got {}", self.b_min)));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return Err(Error::Spec(format!("method `{m}` listed twice")));
            }
            let ok = match m {
                SweepMethod::Numeric => true,
                SweepMethod::Exact => self.model.has_exact(),
                SweepMethod::Ddp1 | SweepMethod::DdpN(_) => matches!(
                    self.model,
                    ModelId::SechTanh | ModelId::LandauZener | ModelId::RosenZener
                ),
                SweepMethod::Approx1 | SweepMethod::Born | SweepMethod::Cpt => self.model == ModelId::SechTanh,
            };
            if !ok {
                return Err(Error::Spec(format!("method `{m}` is not available for model `{}`", self.model)));
            }
        }
        match (self.model, self.alpha) {
            (ModelId::LandauZener, None) => return Err(Error::Spec("landau-zener needs alpha".into())),
            (ModelId::LandauZener, Some(s)) if !(s.is_finite() && s > 0.0) => {
                return Err(Error::Spec(format!("alpha must be positive, got {s}")))
            }
            _ => {}
        }
        if let Some(w) = self.window {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Spec(format!("tau-max must be positive, got {w}")));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::Spec("jobs must be >= 1".into()));
        }
        self.integrator.validate().map_err(|e| Error::Spec(e.to_string()))?;
        Ok(())
    }

    pub fn b_grid(&self) -> Vec<f64> {
        let n = self.b_steps;
        (0..n)
            .map(|k| {
                if k == n - 1 {
                    self.b_max
                } else {
                    self.b_min + (self.b_max - self.b_min) * k as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    fn build_model(&self, a: f64, b: f64) -> Result<PulseModel> {
        let params = ModelParams::scaled(a, b)?;
        let model = match self.model {
            ModelId::LandauZener => make_landau_zener(params, self.alpha.unwrap_or(f64::NAN))?,
            id => make_model(id, params)?,
        };
        match self.window {
            Some(w) if self.model == ModelId::LandauZener => model.with_window(w),
            _ => Ok(model),
        }
    }

    fn integrator_for(&self, model: &PulseModel) -> IntegratorConfig {
        let mut cfg = self.integrator.clone();
        if let Some(w) = model.window() {
            cfg.tau_max = w;
        }
        if let Some(w) = self.window {
            cfg.tau_max = w;
        }
        cfg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowFlag {
    None,
    /// `P > 1`, which only interference sums can produce.
    Gt1,
    /// The point failed; `P` is absent.
    Err,
}

impl RowFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowFlag::None => "",
            RowFlag::Gt1 => "gt1",
            RowFlag::Err => "err",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub model: ModelId,
    pub a_t: f64,
    pub b_t: f64,
    pub method: SweepMethod,
    pub p: Option<f64>,
    pub flag: RowFlag,
    /// Integrator or quadrature error estimate; absent for closed forms.
    pub error_estimate: Option<f64>,
    /// Failure message for `RowFlag::Err` rows. Not part of the CSV.
    pub error: Option<String>,
}

impl SweepRow {
    fn from_outcome(model: ModelId, a_t: f64, b_t: f64, method: SweepMethod, outcome: Result<(f64, Option<f64>)>) -> Self {
        let mut row = SweepRow {
            model,
            a_t,
            b_t,
            method,
            p: None,
            flag: RowFlag::Err,
            error_estimate: None,
            error: None,
        };
        match outcome {
            Ok((p, _)) if !p.is_finite() => row.error = Some(format!("non-finite probability {p}")),
            Ok((p, err)) => {
                row.p = Some(p);
                row.flag = if p > 1.0 { RowFlag::Gt1 } else { RowFlag::None };
                row.error_estimate = err;
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        row
    }

    pub(crate) fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.a_t
            .total_cmp(&other.a_t)
            .then(self.b_t.total_cmp(&other.b_t))
            .then(self.method.cmp(&other.method))
    }
}

fn evaluate(spec: &SweepSpec, a: f64, b: f64, method: SweepMethod) -> Result<(f64, Option<f64>)> {
    let model = spec.build_model(a, b)?;
    let params = *model.params();
    match method {
        SweepMethod::Numeric => {
            let tr = propagate(&model, &spec.integrator_for(&model), StateVector::ground())?;
            Ok((tr.final_p, Some(tr.error_estimate)))
        }
        SweepMethod::Exact => model
            .exact_probability()
            .map(|p| (p, None))
            .ok_or_else(|| Error::Unsupported {
                model: model.id().to_string(),
                what: "no closed form".into(),
            }),
        SweepMethod::Ddp1 => {
            let est = ddp_single(&model, &spec.quadrature)?;
            Ok((est.probability, Some(est.diagnostics.quadrature_error)))
        }
        SweepMethod::DdpN(n) => {
            let est = ddp_nearest(&model, n, &spec.quadrature)?;
            Ok((est.probability, Some(est.diagnostics.quadrature_error)))
        }
        SweepMethod::Approx1 => Ok((approx_closed_form(&params)?, None)),
        SweepMethod::Born => Ok((born_approx(&params), None)),
        SweepMethod::Cpt => Ok((cpt_estimate(&params)?, None)),
    }
}

/// Evaluate every `(aT, bT, method)` combination. Points run in parallel;
/// the result is sorted by `(aT, bT, method)` and does not depend on the
/// worker count. Single-point failures become `err` rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let grid = spec.b_grid();
    let mut work = Vec::with_capacity(spec.a_values.len() * grid.len() * spec.methods.len());
    for &a in &spec.a_values {
        for &b in &grid {
            for &m in &spec.methods {
                work.push((a, b, m));
            }
        }
    }
    let compute = || -> Vec<SweepRow> {
        work.par_iter()
            .map(|&(a, b, m)| SweepRow::from_outcome(spec.model, a, b, m, evaluate(spec, a, b, m)))
            .collect()
    };
    let mut rows = match spec.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Spec(format!("cannot start {n} workers: {e}")))?
            .install(compute),
        None => compute(),
    };
    rows.sort_by(SweepRow::sort_key_cmp);
    Ok(rows)
}
