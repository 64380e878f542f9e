// On resonance the probability follows `sin^2(A/2)` with `A` the pulse
// area accumulated so far. Checked pointwise along a Rosen-Zener trace.

use pulselab::{make_model, propagate, pulse_area, resonant_p, IntegratorConfig, ModelId, ModelParams, StateVector};

pub fn run_example() -> pulselab::Result<()> {
    let model = make_model(ModelId::RosenZener, ModelParams::scaled(0.0, 0.75)?)?;
    let cfg = IntegratorConfig {
        dense_output_points: 41,
        ..IntegratorConfig::default()
    };
    let tr = propagate(&model, &cfg, StateVector::ground())?;
    let tau_i = -cfg.tau_max;
    let mut worst: f64 = 0.0;
    for (&tau, &p) in tr.grid.iter().zip(&tr.probabilities) {
        worst = worst.max((p - resonant_p(&model, tau_i, tau)?).abs());
    }
    let area = pulse_area(&model, f64::NEG_INFINITY, f64::INFINITY, 1e-12)?;
    println!("total area {area:.6} (pi * 1.5 = {:.6})", 1.5 * std::f64::consts::PI);
    println!("final P {:.8}, worst pointwise gap {worst:.1e}", tr.final_p);
    assert!(worst < 1e-7);
    Ok(())
}

fn main() -> pulselab::Result<()> {
    run_example()
}
