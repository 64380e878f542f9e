// A small parameter sweep written as CSV, then a full figure (CSV + SVG)
// into a scratch directory.

use pulselab::harness::{
    parse_sweep_csv, reproduce_figure, run_sweep, sweep_csv, write_atomic, FigureOptions, SweepMethod, SweepSpec,
};
use pulselab::ModelId;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;

    let spec = SweepSpec::new(ModelId::SechTanh, vec![0.5, 1.0], vec![SweepMethod::Numeric, SweepMethod::Ddp1])
        .with_b_range(0.0, 4.0, 9);
    let rows = run_sweep(&spec)?;
    let path = dir.path().join("sweep.csv");
    write_atomic(&path, &sweep_csv(&rows), false)?;
    let back = parse_sweep_csv(&std::fs::read(&path)?, &path)?;
    assert_eq!(back.len(), rows.len());
    for r in rows.iter().filter(|r| r.b_t == 2.0) {
        println!("aT={} bT={} {:>7}: P = {:?} {}", r.a_t, r.b_t, r.method, r.p, r.flag.as_str());
    }

    let written = reproduce_figure(1, dir.path(), &FigureOptions::default())?;
    for p in &written {
        println!("wrote {} ({} bytes)", p.file_name().unwrap().to_string_lossy(), std::fs::metadata(p)?.len());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
