use std::fmt;
use std::path::Path;

use crate::adiabatic::{adiabatic_coupling, quasienergy};
use crate::ddp::{ddp_phase, gamma_factor, st_zero_points, DdpZero, QuadratureConfig, GAMMA_RADIUS};
use crate::dynamics::{propagate, IntegratorConfig, StateVector, Trajectory};
use crate::error::{Error, Result};
use crate::models::{make_model, ModelId, ModelParams, PulseModel};

use super::io::{encode_csv, fmt_f64, write_atomic, TRACE_HEADER};

/// Trace CSV for a trajectory; `gamma` is left empty where `rho = 0`.
pub fn trace_csv(model: &PulseModel, trajectory: &Trajectory) -> Vec<u8> {
    let records = trajectory.grid.iter().zip(&trajectory.states).map(|(&tau, s)| {
        let gamma = adiabatic_coupling(model, tau).ok().map(fmt_f64).unwrap_or_default();
        vec![
            fmt_f64(tau),
            fmt_f64(s.c1.re),
            fmt_f64(s.c1.im),
            fmt_f64(s.c2.re),
            fmt_f64(s.c2.im),
            fmt_f64(s.probability()),
            fmt_f64(quasienergy(model, tau)),
            gamma,
        ]
    });
    encode_csv(&TRACE_HEADER, records)
}

/// Propagate from state one over the configured window and write the trace.
pub fn simulate_cmd(model: &PulseModel, config: &IntegratorConfig, trace: &Path, overwrite: bool) -> Result<Trajectory> {
    let tr = propagate(model, config, StateVector::ground())?;
    write_atomic(trace, &trace_csv(model, &tr), overwrite)?;
    Ok(tr)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRow {
    pub zero: DdpZero,
    /// Why the phase or residue factor is missing, when requested.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    pub b_over_a: f64,
    pub a_t: Option<f64>,
    pub rows: Vec<ZeroRow>,
}

/// Sech-tanh zeros for `|k| <= k_max`. With `phases = Some(aT)` the phase
/// integral and residue factor are added per zero; a zero whose straight
/// contour from the origin runs into a pole keeps its position and gets a
/// note instead.
pub fn zeros_cmd(b_over_a: f64, k_max: u32, phases: Option<f64>) -> Result<ZeroTable> {
    let zeros = st_zero_points(b_over_a, k_max)?;
    let model = match phases {
        Some(a) => {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::Parameter(format!("aT for phases must be positive, got {a}")));
            }
            Some(make_model(ModelId::SechTanh, ModelParams::scaled(a, a * b_over_a)?)?)
        }
        None => None,
    };
    let cfg = QuadratureConfig::default();
    let rows = zeros
        .into_iter()
        .map(|mut zero| {
            let mut note = None;
            if let Some(m) = &model {
                let extra = ddp_phase(m, zero.tau, &cfg)
                    .and_then(|d| Ok((d.value, gamma_factor(m, zero.tau, GAMMA_RADIUS)?.value)));
                match extra {
                    Ok((d, g)) => {
                        zero.phase = Some(d);
                        zero.gamma = Some(g);
                    }
                    Err(e) => note = Some(e.to_string()),
                }
            }
            ZeroRow { zero, note }
        })
        .collect();
    Ok(ZeroTable {
        b_over_a,
        a_t: phases,
        rows,
    })
}

impl fmt::Display for ZeroTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let with_phases = self.a_t.is_some();
        write!(f, "{:>24} {:>24} {:>6} {:>4}", "re", "im", "branch", "k")?;
        if with_phases {
            write!(f, " {:>24} {:>24} {:>24} {:>24}", "D_re", "D_im", "Gamma_re", "Gamma_im")?;
        }
        writeln!(f)?;
        for r in &self.rows {
            let z = &r.zero;
            write!(
                f,
                "{:>24} {:>24} {:>6} {:>4}",
                fmt_f64(z.tau.re),
                fmt_f64(z.tau.im),
                z.branch.map(|b| b.as_str()).unwrap_or("-"),
                z.k
            )?;
            if with_phases {
                match (z.phase, z.gamma) {
                    (Some(d), Some(g)) => write!(
                        f,
                        " {:>24} {:>24} {:>24} {:>24}",
                        fmt_f64(d.re),
                        fmt_f64(d.im),
                        fmt_f64(g.re),
                        fmt_f64(g.im)
                    )?,
                    _ => write!(f, "  n/a: {}", r.note.as_deref().unwrap_or("not computed"))?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::io::decode_csv;

    fn trace_rows(model: &PulseModel) -> Vec<Vec<String>> {
        let tr = propagate(model, &IntegratorConfig::default(), StateVector::ground()).unwrap();
        decode_csv(&trace_csv(model, &tr), &TRACE_HEADER, Path::new("mem")).unwrap()
    }

    #[test]
    fn zero_coupling_trace_is_flat() {
        let m = make_model(ModelId::SechTanh, ModelParams::scaled(1.0, 0.0).unwrap()).unwrap();
        let rows = trace_rows(&m);
        assert_eq!(rows.len(), 2001);
        assert!(rows.iter().all(|r| r[5] == "0.0"));
    }

    #[test]
    fn gamma_blank_where_rho_vanishes() {
        // resonant Rosen-Zener with b = 0: rho is zero everywhere
        let m = make_model(ModelId::RosenZener, ModelParams::scaled(0.0, 0.0).unwrap()).unwrap();
        assert!(trace_rows(&m).iter().all(|r| r[7].is_empty() && r[6] == "0.0"));
    }

    #[test]
    fn simulate_writes_trace() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trace.csv");
        let m = make_model(ModelId::OddOdd, ModelParams::scaled(1.0, 2.0).unwrap()).unwrap();
        let tr = simulate_cmd(&m, &IntegratorConfig::default(), &path, false).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("tau,re_c1,im_c1,re_c2,im_c2,P,rho,gamma\n"));
        assert_eq!(text.lines().count(), tr.grid.len() + 1);
        assert!(simulate_cmd(&m, &IntegratorConfig::default(), &path, false).is_err());
    }

    #[test]
    fn zero_table() {
        let t = zeros_cmd(0.8, 1, None).unwrap();
        assert_eq!(t.rows.len(), st_zero_points(0.8, 1).unwrap().len());
        let text = t.to_string();
        assert!(text.lines().next().unwrap().contains("branch"));
        assert!(!text.contains("D_re"));

        let t = zeros_cmd(0.8, 1, Some(1.0)).unwrap();
        let nearest = t
            .rows
            .iter()
            .find(|r| r.zero.k == 0 && r.zero.tau.im > 0.0 && r.zero.tau.re == 0.0)
            .unwrap();
        let g = nearest.zero.gamma.unwrap();
        assert!((g.norm() - 1.0).abs() < 1e-3);
        assert!(nearest.zero.phase.unwrap().im > 0.0);
        // some contours cross a pole and are annotated, not fatal
        assert!(t.rows.iter().any(|r| r.note.is_some()));
        assert!(t.to_string().contains("n/a"));
        assert!(zeros_cmd(-1.0, 1, None).is_err());
        assert!(zeros_cmd(0.8, 1, Some(0.0)).is_err());
    }
}
