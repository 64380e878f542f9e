// Sech-tanh transition probability four ways: numerics, the single-zero
// estimate, the three-zero interference sum and the closed form.

use pulselab::ddp::{approx_closed_form, born_approx, ddp_nearest, ddp_single, QuadratureConfig};
use pulselab::{final_transition_probability, make_model, IntegratorConfig, ModelId, ModelParams};

pub fn run_example() -> pulselab::Result<()> {
    let icfg = IntegratorConfig::default();
    let qcfg = QuadratureConfig::default();
    println!(
        "{:>4} {:>4} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "aT", "bT", "numeric", "ddp1", "ddpN:3", "approx1", "born"
    );
    for a in [0.5, 1.0, 2.0] {
        for b in [0.5, 2.0, 5.0] {
            let params = ModelParams::scaled(a, b)?;
            let model = make_model(ModelId::SechTanh, params)?;
            let p = final_transition_probability(&model, &icfg)?;
            let d1 = ddp_single(&model, &qcfg)?;
            let d3 = ddp_nearest(&model, 3, &qcfg)?;
            println!(
                "{a:>4} {b:>4} {p:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}{}",
                d1.probability,
                d3.probability,
                approx_closed_form(&params)?,
                born_approx(&params),
                if d3.diagnostics.exceeds_one { "  (sum > 1)" } else { "" }
            );
        }
    }
    Ok(())
}

fn main() -> pulselab::Result<()> {
    run_example()
}
