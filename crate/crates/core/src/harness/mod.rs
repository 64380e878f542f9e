//! Parameter sweeps, figure recipes, trace output and the flat config
//! format. This is the only module that runs work in parallel; everything
//! it calls is a pure function, and results are merged by sorting.

mod commands;
pub mod config;
pub mod figures;
pub mod io;
pub mod plot;
mod sweep;

pub use commands::{simulate_cmd, trace_csv, zeros_cmd, ZeroRow, ZeroTable};
pub use config::{sweep_spec_from_config, Config};
pub use figures::{figure_csv, figure_from_csv, figure_svg, reproduce_figure, FigureOptions, FIGURE_IDS};
pub use io::{parse_sweep_csv, sweep_csv, write_atomic};
pub use sweep::{run_sweep, RowFlag, SweepMethod, SweepRow, SweepSpec};
