// Complex transition points of the sech-tanh model, with phase integrals
// and residue factors for aT = 1.

use pulselab::harness::zeros_cmd;

pub fn run_example() -> pulselab::Result<()> {
    for ratio in [0.1, 0.8, 5.0] {
        println!("b/a = {ratio}");
        let table = zeros_cmd(ratio, 1, Some(1.0))?;
        print!("{table}");
        let lowest = table
            .rows
            .iter()
            .filter(|r| r.zero.tau.im > 0.0)
            .map(|r| r.zero.tau.im)
            .fold(f64::INFINITY, f64::min);
        assert!(lowest < std::f64::consts::FRAC_PI_2);
    }
    Ok(())
}

fn main() -> pulselab::Result<()> {
    run_example()
}
