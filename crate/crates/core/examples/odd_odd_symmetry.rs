// Odd detuning with odd coupling: population leaves state one during the
// pulse and comes back exactly at the end.

use pulselab::{make_model, propagate, IntegratorConfig, ModelId, ModelParams, StateVector};

pub fn run_example() -> pulselab::Result<()> {
    let cfg = IntegratorConfig::default();
    for (a, b) in [(0.5, 1.0), (1.0, 3.0), (2.0, 5.0)] {
        let model = make_model(ModelId::OddOdd, ModelParams::scaled(a, b)?)?;
        let tr = propagate(&model, &cfg, StateVector::ground())?;
        let peak = tr.probabilities.iter().cloned().fold(0.0, f64::max);
        println!(
            "aT={a} bT={b}: peak P = {peak:.4}, final P = {:.1e}, drift {:.1e}",
            tr.final_p, tr.max_norm_drift
        );
        assert!(peak > 1e-3 && tr.final_p < 1e-8);
    }
    Ok(())
}

fn main() -> pulselab::Result<()> {
    run_example()
}
