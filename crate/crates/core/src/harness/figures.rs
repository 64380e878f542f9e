//! Figure recipes: each writes `fig<id>.csv` and `fig<id>.svg`. The SVG is
//! always rendered from the CSV bytes, so re-plotting a saved CSV gives the
//! identical picture.
//!
//! Axis ranges and grid densities are choices made here: `bT` runs over
//! `[0, 4]` for the Rosen-Zener figure and `[0, 10]` otherwise, with 401
//! points.

use std::path::{Path, PathBuf};

use crate::ddp::{st_zero_points, Branch};
use crate::error::{Error, Result};
use crate::models::ModelId;

use super::io::{decode_csv, encode_csv, fmt_f64, parse_sweep_csv, sweep_csv, write_atomic};
use super::plot::{render_svg, Figure, Mark, Panel, Series};
use super::sweep::{run_sweep, SweepMethod, SweepRow, SweepSpec};

pub const FIGURE_IDS: [u32; 4] = [1, 3, 4, 5];
pub const ZEROS_HEADER: [&str; 5] = ["kind", "branch", "k", "re", "im"];
/// `b/a` used for the zero-point figure.
pub const FIG4_B_OVER_A: f64 = 0.8;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FigureOptions {
    pub jobs: Option<usize>,
    pub overwrite: bool,
}

/// The sweep behind a line figure; `None` for the zero-point figure.
pub fn figure_spec(id: u32) -> Result<Option<SweepSpec>> {
    let spec = match id {
        1 => SweepSpec::new(ModelId::RosenZener, vec![0.0, 0.1, 0.3], vec![SweepMethod::Exact]).with_b_range(0.0, 4.0, 401),
        3 => SweepSpec::new(ModelId::SechTanh, vec![0.1, 0.5, 1.0, 2.0, 3.0], vec![SweepMethod::Numeric]),
        4 => return Ok(None),
        5 => SweepSpec::new(
            ModelId::SechTanh,
            vec![0.5, 1.0, 2.0],
            vec![SweepMethod::Numeric, SweepMethod::Ddp1, SweepMethod::DdpN(3)],
        ),
        other => return Err(Error::UnknownFigure(other)),
    };
    Ok(Some(spec))
}

fn zeros_csv(k_max: u32) -> Result<Vec<u8>> {
    let mut records: Vec<Vec<String>> = Vec::new();
    for (kind, ratio) in [("zero", FIG4_B_OVER_A), ("limit-0", 0.0)] {
        for z in st_zero_points(ratio, k_max)? {
            records.push(vec![
                kind.to_string(),
                z.branch.map(|b| b.as_str()).unwrap_or("").to_string(),
                z.k.to_string(),
                fmt_f64(z.tau.re),
                fmt_f64(z.tau.im),
            ]);
        }
    }
    // as b/a grows the X+ zeros close in on i pi k; the X- zeros leave to infinity
    for k in -(k_max as i64)..=k_max as i64 {
        records.push(vec![
            "limit-inf".into(),
            Branch::XPlus.as_str().into(),
            k.to_string(),
            fmt_f64(0.0),
            fmt_f64(std::f64::consts::PI * k as f64),
        ]);
    }
    Ok(encode_csv(&ZEROS_HEADER, records))
}

/// CSV bytes for a figure.
pub fn figure_csv(id: u32, options: &FigureOptions) -> Result<Vec<u8>> {
    match figure_spec(id)? {
        Some(mut spec) => {
            spec.jobs = options.jobs;
            Ok(sweep_csv(&run_sweep(&spec)?))
        }
        None => zeros_csv(1),
    }
}

struct Style {
    color: &'static str,
    width: f64,
    dash: Option<&'static str>,
}

const DASHED: Option<&str> = Some("7 4");
const DOTDASH: Option<&str> = Some("8 3 2 3");
const DOTTED: Option<&str> = Some("2 3");

fn line_style(id: u32, a: f64) -> Style {
    let s = |color, width, dash| Style { color, width, dash };
    match (id, a) {
        (1, a) if a == 0.0 => s("black", 1.5, None),
        (1, a) if a == 0.1 => s("blue", 1.5, DASHED),
        (3, a) if a == 0.1 => s("black", 3.0, None),
        (3, a) if a == 0.5 => s("black", 1.5, None),
        (_, a) if a == 1.0 => s("blue", 1.5, DASHED),
        (_, a) if a == 2.0 || a == 0.3 => s("red", 1.5, DOTDASH),
        _ => s("green", 1.5, DOTTED),
    }
}

fn series_of(rows: &[SweepRow], a: f64, method: SweepMethod, name: String, style: Style) -> Series {
    Series {
        name,
        color: style.color,
        mark: Mark::Line {
            width: style.width,
            dash: style.dash,
        },
        points: rows
            .iter()
            .filter(|r| r.a_t == a && r.method == method)
            .map(|r| r.p.map(|p| (r.b_t, p)))
            .collect(),
    }
}

fn distinct_a(rows: &[SweepRow]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for r in rows {
        if !out.contains(&r.a_t) {
            out.push(r.a_t);
        }
    }
    out
}

fn b_range(rows: &[SweepRow]) -> (f64, f64) {
    let lo = rows.iter().map(|r| r.b_t).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().map(|r| r.b_t).fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

fn p_panel(title: String, rows: &[SweepRow], series: Vec<Series>) -> Panel {
    let top = series
        .iter()
        .flat_map(|s| s.points.iter().flatten().map(|p| p.1))
        .fold(1.0, f64::max);
    Panel {
        title,
        x_label: "bT".into(),
        y_label: "P".into(),
        x_range: b_range(rows),
        y_range: (0.0, ((top * 10.0).ceil() / 10.0).max(1.05)),
        series,
    }
}

fn zeros_figure(csv: &[u8], origin: &Path) -> Result<Figure> {
    let records = decode_csv(csv, &ZEROS_HEADER, origin)?;
    let mut zeros = Vec::new();
    let mut at_zero = Vec::new();
    let mut at_inf = Vec::new();
    for (i, f) in records.iter().enumerate() {
        let num = |s: &str| {
            s.parse::<f64>().map_err(|_| Error::Csv {
                path: origin.to_path_buf(),
                message: format!("record {}: bad number `{s}`", i + 2),
            })
        };
        let p = Some((num(&f[3])?, num(&f[4])?));
        match f[0].as_str() {
            "zero" => zeros.push(p),
            "limit-0" => at_zero.push(p),
            "limit-inf" => at_inf.push(p),
            other => {
                return Err(Error::Csv {
                    path: origin.to_path_buf(),
                    message: format!("record {}: unknown kind `{other}`", i + 2),
                })
            }
        }
    }
    Ok(Figure {
        title: format!("Sech-Tanh transition points, b/a = {FIG4_B_OVER_A}"),
        columns: 1,
        panels: vec![Panel {
            title: "complex zeros of rho^2".into(),
            x_label: "Re tau_c".into(),
            y_label: "Im tau_c".into(),
            x_range: (-2.5, 2.5),
            y_range: (-5.0, 5.0),
            series: vec![
                Series {
                    name: format!("b/a = {FIG4_B_OVER_A}"),
                    color: "black",
                    mark: Mark::Dot,
                    points: zeros,
                },
                Series {
                    name: "b/a = 0".into(),
                    color: "black",
                    mark: Mark::Ring { dash: None },
                    points: at_zero,
                },
                Series {
                    name: "b/a -> inf".into(),
                    color: "black",
                    mark: Mark::Ring { dash: Some("3 2") },
                    points: at_inf,
                },
            ],
        }],
    })
}

/// Build the chart for figure `id` from its CSV bytes.
pub fn figure_from_csv(id: u32, csv: &[u8], origin: &Path) -> Result<Figure> {
    if id == 4 {
        return zeros_figure(csv, origin);
    }
    figure_spec(id)?;
    let rows = parse_sweep_csv(csv, origin)?;
    let a_values = distinct_a(&rows);
    match id {
        1 | 3 => {
            let (title, method) = if id == 1 {
                ("Rosen-Zener transition probability", SweepMethod::Exact)
            } else {
                ("Sech-Tanh transition probability", SweepMethod::Numeric)
            };
            let series = a_values
                .iter()
                .map(|&a| series_of(&rows, a, method, format!("aT = {a}"), line_style(id, a)))
                .collect();
            Ok(Figure {
                title: title.into(),
                columns: 1,
                panels: vec![p_panel(String::new(), &rows, series)],
            })
        }
        _ => {
            let mut panels = Vec::new();
            for &a in &a_values {
                for ddp in [SweepMethod::Ddp1, SweepMethod::DdpN(3)] {
                    let numeric = Style {
                        color: "blue",
                        width: 1.5,
                        dash: None,
                    };
                    let approx = Style {
                        color: "black",
                        width: 1.5,
                        dash: DASHED,
                    };
                    let series = vec![
                        series_of(&rows, a, SweepMethod::Numeric, "numeric".into(), numeric),
                        series_of(&rows, a, ddp, ddp.to_string(), approx),
                    ];
                    panels.push(p_panel(format!("aT = {a}, {ddp}"), &rows, series));
                }
            }
            Ok(Figure {
                title: "Sech-Tanh: DDP against numerics".into(),
                columns: 2,
                panels,
            })
        }
    }
}

pub fn figure_svg(id: u32, csv: &[u8], origin: &Path) -> Result<String> {
    Ok(render_svg(&figure_from_csv(id, csv, origin)?))
}

/// Compute figure `id` and write `fig<id>.csv` and `fig<id>.svg` into
/// `out_dir`, creating it if needed. Returns the written paths.
pub fn reproduce_figure(id: u32, out_dir: &Path, options: &FigureOptions) -> Result<Vec<PathBuf>> {
    if !FIGURE_IDS.contains(&id) {
        return Err(Error::UnknownFigure(id));
    }
    let csv_path = out_dir.join(format!("fig{id}.csv"));
    let svg_path = out_dir.join(format!("fig{id}.svg"));
    if !options.overwrite {
        for p in [&csv_path, &svg_path] {
            if p.exists() {
                return Err(Error::io(
                    p,
                    std::io::Error::new(std::io::ErrorKind::AlreadyExists, "refusing to overwrite (pass --overwrite)"),
                ));
            }
        }
    }
    let csv = figure_csv(id, options)?;
    let svg = figure_svg(id, &csv, &csv_path)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    write_atomic(&csv_path, &csv, options.overwrite)?;
    write_atomic(&svg_path, svg.as_bytes(), options.overwrite)?;
    Ok(vec![csv_path, svg_path])
}
