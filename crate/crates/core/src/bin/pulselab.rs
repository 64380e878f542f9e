//! Command-line front end. Every flag can also be given in the file passed
//! to `--config` under the same name (without the dashes); flags on the
//! command line win.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use pulselab::harness::{
    reproduce_figure, run_sweep, simulate_cmd, sweep_csv, sweep_spec_from_config, write_atomic, zeros_cmd, Config,
    FigureOptions, RowFlag,
};
use pulselab::{model_from_str, Error, IntegratorConfig, ModelParams, Result};

#[derive(Parser)]
#[command(name = "pulselab", version, about = "Two-level transition probabilities: numerics and DDP estimates")]
struct Cli {
    /// `key = value` file with defaults for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate one model and write a trace CSV
    Simulate {
        #[arg(long)]
        model: Option<String>,
        #[arg(long = "aT")]
        a_t: Option<f64>,
        #[arg(long = "bT")]
        b_t: Option<f64>,
        /// Landau-Zener sweep rate
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        tau_max: Option<f64>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        overwrite: bool,
    },
    /// Run a parameter sweep described by a config file
    Sweep {
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        overwrite: bool,
    },
    /// List the sech-tanh transition points for a ratio b/a
    Zeros {
        #[arg(long)]
        b_over_a: Option<f64>,
        #[arg(long)]
        k_max: Option<u32>,
        /// Also compute phase integrals and residue factors
        #[arg(long)]
        phases: bool,
        /// Detuning used for the phases (default 1)
        #[arg(long = "aT")]
        a_t: Option<f64>,
    },
    /// Regenerate the CSV and SVG of a figure (1, 3, 4 or 5)
    Figure {
        #[arg(long)]
        id: Option<u32>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        overwrite: bool,
    },
}

const CONFIG_KEYS: &[&str] = &[
    "model", "aT", "bT", "alpha", "tau-max", "trace", "spec", "out", "jobs", "overwrite", "b-over-a", "k-max", "phases",
    "id", "out-dir",
];

/// Command-line value if given, else the config twin.
fn pick<T: FromStr>(flag: Option<T>, cfg: &Config, key: &str) -> Result<Option<T>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match cfg.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| Error::Parameter(format!("config value `{key} = {v}` is not valid"))),
    }
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::Parameter(format!("missing --{flag}")))
}

fn switch(flag: bool, cfg: &Config, key: &str) -> Result<bool> {
    Ok(flag || cfg.get_bool(key)?.unwrap_or(false))
}

fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => {
            let c = Config::load(path)?;
            c.check_keys(CONFIG_KEYS)?;
            c
        }
        None => Config::default(),
    };
    match cli.command {
        Command::Simulate {
            model,
            a_t,
            b_t,
            alpha,
            tau_max,
            trace,
            overwrite,
        } => {
            let id: String = required(pick(model, &cfg, "model")?, "model")?;
            let params = ModelParams::scaled(
                required(pick(a_t, &cfg, "aT")?, "aT")?,
                required(pick(b_t, &cfg, "bT")?, "bT")?,
            )?;
            let mut model = model_from_str(&id, params, pick(alpha, &cfg, "alpha")?)?;
            let tau_max = pick(tau_max, &cfg, "tau-max")?;
            if let (Some(w), Some(_)) = (tau_max, model.window()) {
                model = model.with_window(w)?;
            }
            let mut integrator = IntegratorConfig::for_model(&model);
            if let Some(w) = tau_max {
                integrator.tau_max = w;
            }
            let trace: PathBuf = required(pick(trace, &cfg, "trace")?, "trace")?;
            let tr = simulate_cmd(&model, &integrator, &trace, switch(overwrite, &cfg, "overwrite")?)?;
            println!("final P = {:?}", tr.final_p);
            println!("steps = {} (rejected {})", tr.steps, tr.rejected);
            println!("max norm drift = {:e}", tr.max_norm_drift);
            println!("trace written to {}", trace.display());
        }
        Command::Sweep {
            spec,
            out,
            jobs,
            overwrite,
        } => {
            let spec_path: PathBuf = required(pick(spec, &cfg, "spec")?, "spec")?;
            let out: PathBuf = required(pick(out, &cfg, "out")?, "out")?;
            let overwrite = switch(overwrite, &cfg, "overwrite")?;
            let mut spec = sweep_spec_from_config(&Config::load(&spec_path)?)
                .map_err(|e| Error::Spec(format!("{}: {e}", spec_path.display())))?;
            if let Some(j) = pick(jobs, &cfg, "jobs")? {
                spec.jobs = Some(j);
                spec.validate()?;
            }
            // fail before doing the work
            if !overwrite && out.exists() {
                return write_atomic(&out, &[], false);
            }
            let rows = run_sweep(&spec)?;
            write_atomic(&out, &sweep_csv(&rows), overwrite)?;
            let failed: Vec<_> = rows.iter().filter(|r| r.flag == RowFlag::Err).collect();
            for r in &failed {
                eprintln!(
                    "warning: aT={:?} bT={:?} {}: {}",
                    r.a_t,
                    r.b_t,
                    r.method,
                    r.error.as_deref().unwrap_or("failed")
                );
            }
            println!("{} rows ({} failed) written to {}", rows.len(), failed.len(), out.display());
        }
        Command::Zeros {
            b_over_a,
            k_max,
            phases,
            a_t,
        } => {
            let ratio = required(pick(b_over_a, &cfg, "b-over-a")?, "b-over-a")?;
            let k_max = required(pick(k_max, &cfg, "k-max")?, "k-max")?;
            let phases = switch(phases, &cfg, "phases")?;
            let a = pick(a_t, &cfg, "aT")?.unwrap_or(1.0);
            let table = zeros_cmd(ratio, k_max, phases.then_some(a))?;
            print!("{table}");
        }
        Command::Figure {
            id,
            out_dir,
            jobs,
            overwrite,
        } => {
            let id = required(pick(id, &cfg, "id")?, "id")?;
            let out_dir: PathBuf = required(pick(out_dir, &cfg, "out-dir")?, "out-dir")?;
            let options = FigureOptions {
                jobs: pick(jobs, &cfg, "jobs")?,
                overwrite: switch(overwrite, &cfg, "overwrite")?,
            };
            if options.jobs == Some(0) {
                return Err(Error::Parameter("--jobs must be >= 1".into()));
            }
            for p in reproduce_figure(id, &out_dir, &options)? {
                println!("{}", p.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
