// Linear sweep: the single transition point reproduces the Landau-Zener
// formula exactly, and the numerics approach it as the window grows.

use pulselab::ddp::{ddp_single, QuadratureConfig};
use pulselab::{exact_p_landau_zener, make_landau_zener, propagate, IntegratorConfig, ModelParams, StateVector};

pub fn run_example() -> pulselab::Result<()> {
    let params = ModelParams::scaled(0.0, 1.0)?;
    let slope = 2.0;
    let exact = exact_p_landau_zener(&params, slope)?;
    let model = make_landau_zener(params, slope)?;
    let d = ddp_single(&model, &QuadratureConfig::default())?;
    println!("exp(-pi b^2/alpha) = {exact:.12}, ddp1 = {:.12}", d.probability);
    assert!((d.probability - exact).abs() < 1e-10);

    for w in [10.0, 20.0, 40.0, 80.0] {
        let m = model.clone().with_window(w)?;
        let tr = propagate(&m, &IntegratorConfig::for_model(&m), StateVector::ground())?;
        // survival in the starting diabatic state
        let survival = tr.final_state.c1.norm_sqr();
        println!("window {w:>4}: survival {survival:.6}, gap {:.1e}, steps {}", (survival - exact).abs(), tr.steps);
    }
    Ok(())
}

fn main() -> pulselab::Result<()> {
    run_example()
}
