// Quasienergy, mixing angle and nonadiabatic coupling of a sech-tanh pulse,
// and a propagated state seen in the adiabatic basis.

use pulselab::adiabatic::{sample_grid, to_adiabatic};
use pulselab::{make_model, propagate, IntegratorConfig, ModelId, ModelParams, StateVector};

pub fn run_example() -> pulselab::Result<()> {
    let model = make_model(ModelId::SechTanh, ModelParams::scaled(2.0, 2.0)?)?;
    let grid: Vec<f64> = (0..=12).map(|k| -3.0 + 0.5 * k as f64).collect();
    println!("{:>6} {:>10} {:>10} {:>11} {:>10}", "tau", "rho", "theta", "gamma", "ratio");
    for s in sample_grid(&model, &grid)? {
        println!(
            "{:>6.2} {:>10.5} {:>10.5} {:>11.5} {:>10.4}",
            s.tau, s.rho, s.theta, s.gamma, s.adiabaticity_ratio
        );
    }

    let cfg = IntegratorConfig {
        dense_output_points: 9,
        ..IntegratorConfig::default()
    };
    let tr = propagate(&model, &cfg, StateVector::ground())?;
    for (&tau, state) in tr.grid.iter().zip(&tr.states) {
        let ad = to_adiabatic(state, &model, tau)?;
        println!("tau {tau:>6.1}: |plus|^2 = {:.6}, |minus|^2 = {:.6}", ad.plus.norm_sqr(), ad.minus.norm_sqr());
        assert!((ad.norm_sqr() - 1.0).abs() < 1e-9);
    }
    Ok(())
}

fn main() -> pulselab::Result<()> {
    run_example()
}
