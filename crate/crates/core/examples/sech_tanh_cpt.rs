// Strongly coupled sech-tanh pulse next to the coherent-population-trapping
// estimate `sin^2(arctan(b / 2a))`. The two disagree at large b/a; the
// numbers are printed, not asserted.

use pulselab::ddp::cpt_estimate;
use pulselab::{final_transition_probability, make_model, IntegratorConfig, ModelId, ModelParams};

pub fn run_example() -> pulselab::Result<()> {
    let cfg = IntegratorConfig::default();
    println!("{:>4} {:>6} {:>12} {:>12}", "aT", "b/a", "numeric", "cpt");
    for a in [1.0, 3.0] {
        for r in [5.0, 20.0, 100.0] {
            let params = ModelParams::scaled(a, r * a)?;
            let p = final_transition_probability(&make_model(ModelId::SechTanh, params)?, &cfg)?;
            println!("{a:>4} {r:>6} {p:>12.6} {:>12.6}", cpt_estimate(&params)?);
            assert!((0.0..=1.0 + 1e-9).contains(&p));
        }
    }
    Ok(())
}

fn main() -> pulselab::Result<()> {
    run_example()
}
