//! Dependency-free SVG line and scatter charts.
//!
//! Output is a pure function of the input; coordinates are printed with two
//! decimals so identical data gives identical bytes.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mark {
    Line { width: f64, dash: Option<&'static str> },
    Dot,
    Ring { dash: Option<&'static str> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub color: &'static str,
    pub mark: Mark,
    /// `None` breaks a line.
    pub points: Vec<Option<(f64, f64)>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub series: Vec<Series>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub title: String,
    pub columns: usize,
    pub panels: Vec<Panel>,
}

const PANEL_W: f64 = 480.0;
const PANEL_H: f64 = 320.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 45.0;
const HEADER: f64 = 34.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Tick positions at 1, 2 or 5 times a power of ten, about five per axis.
fn ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let span = hi - lo;
    if !(span > 0.0) {
        return (vec![lo], 0);
    }
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    ((first..=last).map(|k| k as f64 * step).collect(), decimals)
}

struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    xr: (f64, f64),
    yr: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.x0 + (x - self.xr.0) / (self.xr.1 - self.xr.0) * self.w
    }
    fn py(&self, y: f64) -> f64 {
        self.y0 + self.h - (y - self.yr.0) / (self.yr.1 - self.yr.0) * self.h
    }
}

fn dash_attr(dash: Option<&str>) -> String {
    dash.map(|d| format!(" stroke-dasharray=\"{d}\"")).unwrap_or_default()
}

fn render_panel(out: &mut String, panel: &Panel, index: usize, ox: f64, oy: f64) {
    let f = Frame {
        x0: ox + LEFT,
        y0: oy + TOP,
        w: PANEL_W - LEFT - RIGHT,
        h: PANEL_H - TOP - BOTTOM,
        xr: panel.x_range,
        yr: panel.y_range,
    };
    let clip = format!("clip{index}");
    let _ = writeln!(
        out,
        "<clipPath id=\"{clip}\"><rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\"/></clipPath>",
        f.x0, f.y0, f.w, f.h
    );
    let _ = writeln!(
        out,
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#444\"/>",
        f.x0, f.y0, f.w, f.h
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\">{}</text>",
        f.x0 + f.w / 2.0,
        oy + TOP - 10.0,
        escape(&panel.title)
    );

    let (xt, xd) = ticks(f.xr.0, f.xr.1);
    for x in xt {
        let px = f.px(x);
        let _ = writeln!(
            out,
            "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#444\"/><text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">{x:.xd$}</text>",
            f.y0 + f.h,
            f.y0 + f.h + 5.0,
            f.y0 + f.h + 18.0
        );
    }
    let (yt, yd) = ticks(f.yr.0, f.yr.1);
    for y in yt {
        let py = f.py(y);
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"#444\"/><text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"11\">{y:.yd$}</text>",
            f.x0 - 5.0,
            f.x0,
            f.x0 - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"12\">{}</text>",
        f.x0 + f.w / 2.0,
        oy + PANEL_H - 8.0,
        escape(&panel.x_label)
    );
    let (lx, ly) = (ox + 16.0, f.y0 + f.h / 2.0);
    let _ = writeln!(
        out,
        "<text x=\"{lx:.2}\" y=\"{ly:.2}\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 {lx:.2} {ly:.2})\">{}</text>",
        escape(&panel.y_label)
    );

    let _ = writeln!(out, "<g clip-path=\"url(#{clip})\">");
    for s in &panel.series {
        match s.mark {
            Mark::Line { width, dash } => {
                for run in s.points.split(Option::is_none) {
                    if run.len() < 2 {
                        continue;
                    }
                    let pts: Vec<String> = run
                        .iter()
                        .flatten()
                        .map(|&(x, y)| format!("{:.2},{:.2}", f.px(x), f.py(y)))
                        .collect();
                    let _ = writeln!(
                        out,
                        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{width:.1}\"{} points=\"{}\"/>",
                        s.color,
                        dash_attr(dash),
                        pts.join(" ")
                    );
                }
            }
            Mark::Dot => {
                for &(x, y) in s.points.iter().flatten() {
                    let _ = writeln!(
                        out,
                        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"{}\"/>",
                        f.px(x),
                        f.py(y),
                        s.color
                    );
                }
            }
            Mark::Ring { dash } => {
                for &(x, y) in s.points.iter().flatten() {
                    let _ = writeln!(
                        out,
                        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"7\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{}/>",
                        f.px(x),
                        f.py(y),
                        s.color,
                        dash_attr(dash)
                    );
                }
            }
        }
    }
    let _ = writeln!(out, "</g>");

    // legend
    for (i, s) in panel.series.iter().enumerate() {
        let y = f.y0 + 14.0 + 16.0 * i as f64;
        let x = f.x0 + f.w - 130.0;
        let swatch = match s.mark {
            Mark::Line { width, dash } => format!(
                "<line x1=\"{x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"{}\" stroke-width=\"{width:.1}\"{}/>",
                x + 24.0,
                s.color,
                dash_attr(dash)
            ),
            Mark::Dot => format!("<circle cx=\"{:.2}\" cy=\"{y:.2}\" r=\"3.5\" fill=\"{}\"/>", x + 12.0, s.color),
            Mark::Ring { dash } => format!(
                "<circle cx=\"{:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"none\" stroke=\"{}\"{}/>",
                x + 12.0,
                s.color,
                dash_attr(dash)
            ),
        };
        let _ = writeln!(
            out,
            "{swatch}<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>",
            x + 30.0,
            y + 4.0,
            escape(&s.name)
        );
    }
}

pub fn render_svg(fig: &Figure) -> String {
    let cols = fig.columns.max(1);
    let rows = fig.panels.len().div_ceil(cols).max(1);
    let width = PANEL_W * cols as f64;
    let height = HEADER + PANEL_H * rows as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>",
        width / 2.0,
        escape(&fig.title)
    );
    for (i, p) in fig.panels.iter().enumerate() {
        let ox = PANEL_W * (i % cols) as f64;
        let oy = HEADER + PANEL_H * (i / cols) as f64;
        render_panel(&mut out, p, i, ox, oy);
    }
    out.push_str("</svg>\n");
    out
}
