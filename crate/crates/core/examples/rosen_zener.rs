// Rosen-Zener: numerical final probability against the closed form
// `sin^2(pi bT) sech^2(pi aT)`.

use pulselab::{exact_p_rosen_zener, final_transition_probability, make_model, IntegratorConfig, ModelId, ModelParams};

pub fn run_example() -> pulselab::Result<()> {
    let cfg = IntegratorConfig::default();
    println!("{:>5} {:>5} {:>14} {:>14} {:>10}", "aT", "bT", "numeric", "exact", "diff");
    for a in [0.0, 0.1, 0.3] {
        for b in [0.25, 0.5, 1.0, 1.5] {
            let params = ModelParams::scaled(a, b)?;
            let p = final_transition_probability(&make_model(ModelId::RosenZener, params)?, &cfg)?;
            let exact = exact_p_rosen_zener(&params);
            println!("{a:>5} {b:>5} {p:>14.10} {exact:>14.10} {:>10.2e}", (p - exact).abs());
            assert!((p - exact).abs() < 1e-6);
        }
    }
    Ok(())
}

fn main() -> pulselab::Result<()> {
    run_example()
}
