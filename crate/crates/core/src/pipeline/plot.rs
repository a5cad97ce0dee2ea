use std::fmt::Write as _;
use std::path::Path;

use super::ExperimentReport;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    /// β_dim of every analyzed class against the layer index.
    BettiVsLayer { dim: usize },
    ComplexityVsLayer,
    /// Train and test accuracy against the epoch.
    AccuracyVsEpoch,
}

impl PlotKind {
    pub fn file_stem(self) -> String {
        match self {
            PlotKind::BettiVsLayer { dim } => format!("betti{dim}-vs-layer"),
            PlotKind::ComplexityVsLayer => "complexity-vs-layer".into(),
            PlotKind::AccuracyVsEpoch => "accuracy-vs-epoch".into(),
        }
    }
}

impl std::str::FromStr for PlotKind {
    type Err = Error;
    /// `betti-vs-layer` (β₀), `betti<q>-vs-layer`, `complexity-vs-layer` or
    /// `accuracy-vs-epoch`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "betti-vs-layer" => Ok(PlotKind::BettiVsLayer { dim: 0 }),
            "complexity-vs-layer" => Ok(PlotKind::ComplexityVsLayer),
            "accuracy-vs-epoch" => Ok(PlotKind::AccuracyVsEpoch),
            _ => s
                .strip_prefix("betti")
                .and_then(|r| r.strip_suffix("-vs-layer"))
                .and_then(|q| q.parse().ok())
                .map(|dim| PlotKind::BettiVsLayer { dim })
                .ok_or_else(|| Error::InvalidInput(format!("unknown plot kind {s:?}"))),
        }
    }
}

struct Series {
    name: String,
    x: Vec<f64>,
    mean: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

const COLORS: [&str; 4] = ["#1b3a6b", "#8c2d19", "#2f6b2f", "#5b2a6e"];
const W: f64 = 640.0;
const H: f64 = 400.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 48.0;
const BOTTOM: f64 = 56.0;
const MAX_POINTS: usize = 600;

fn layer_series(report: &ExperimentReport, kind: PlotKind) -> Result<Vec<Series>> {
    let mut out = Vec::new();
    for agg in &report.aggregates {
        let n = agg.layers();
        let x: Vec<f64> = (1..=n).map(|j| j as f64).collect();
        let (mean, lo, hi) = match kind {
            PlotKind::BettiVsLayer { dim } => {
                if agg.betti_mean.first().is_some_and(|r| dim >= r.len()) {
                    return Err(Error::InvalidInput(format!("class {} does not track β_{dim}", agg.class)));
                }
                (
                    agg.betti_mean.iter().map(|r| r[dim]).collect(),
                    agg.betti_min.iter().map(|r| r[dim] as f64).collect(),
                    agg.betti_max.iter().map(|r| r[dim] as f64).collect(),
                )
            }
            _ => (
                agg.complexity_mean.clone(),
                agg.complexity_min.iter().map(|&c| c as f64).collect(),
                agg.complexity_max.iter().map(|&c| c as f64).collect(),
            ),
        };
        out.push(Series {
            name: format!("class {} (mean of {} seeds)", agg.class, agg.seeds),
            x,
            mean,
            lo,
            hi,
        });
    }
    Ok(out)
}

fn accuracy_series(report: &ExperimentReport) -> Vec<Series> {
    let epochs = report.seeds.iter().map(|s| s.history.len()).max().unwrap_or(0);
    if epochs == 0 {
        return Vec::new();
    }
    let stride = epochs.div_ceil(MAX_POINTS);
    let mut ts: Vec<usize> = (0..epochs).step_by(stride).collect();
    if ts.last() != Some(&(epochs - 1)) {
        ts.push(epochs - 1);
    }
    let pick = |name: &str, f: fn(&super::report::HistoryRow) -> f64| {
        let (mut mean, mut lo, mut hi) = (Vec::new(), Vec::new(), Vec::new());
        for &t in &ts {
            // seeds that stopped early hold their last value
            let vals: Vec<f64> = report
                .seeds
                .iter()
                .filter_map(|s| s.history.get(t).or(s.history.last()).map(f))
                .collect();
            mean.push(vals.iter().sum::<f64>() / vals.len() as f64);
            lo.push(vals.iter().copied().fold(f64::INFINITY, f64::min));
            hi.push(vals.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        }
        Series {
            name: name.into(),
            x: ts.iter().map(|&t| t as f64).collect(),
            mean,
            lo,
            hi,
        }
    };
    vec![pick("train accuracy", |r| r.train_accuracy), pick("test accuracy", |r| r.test_accuracy)]
}

fn nice_step(span: f64, target_ticks: f64) -> f64 {
    let raw = (span / target_ticks).max(1e-12);
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let m = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    m * mag
}

fn fmt_tick(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The plot as a standalone SVG document.
pub fn render_plot(report: &ExperimentReport, kind: PlotKind) -> Result<String> {
    let series = match kind {
        PlotKind::AccuracyVsEpoch => accuracy_series(report),
        _ => layer_series(report, kind)?,
    };
    if series.is_empty() || series.iter().any(|s| s.x.is_empty()) {
        return Err(Error::InvalidInput(format!("nothing to plot for {}", kind.file_stem())));
    }
    let (x_label, y_label, integer_x) = match kind {
        PlotKind::BettiVsLayer { dim } => ("layer", format!("β{}", subscript(dim)), true),
        PlotKind::ComplexityVsLayer => ("layer", "topological complexity".to_string(), true),
        PlotKind::AccuracyVsEpoch => ("epoch", "accuracy".to_string(), false),
    };
    let x_min = series.iter().flat_map(|s| s.x.iter().copied()).fold(f64::INFINITY, f64::min);
    let mut x_max = series.iter().flat_map(|s| s.x.iter().copied()).fold(f64::NEG_INFINITY, f64::max);
    if x_max <= x_min {
        x_max = x_min + 1.0;
    }
    let mut y_max = series.iter().flat_map(|s| s.hi.iter().copied()).fold(0.0, f64::max);
    if kind == PlotKind::AccuracyVsEpoch || y_max <= 0.0 {
        y_max = y_max.max(1.0);
    }
    let y_step = nice_step(y_max, 5.0);
    let y_top = (y_max / y_step).ceil() * y_step;
    let pw = W - LEFT - RIGHT;
    let ph = H - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * pw;
    let sy = |y: f64| TOP + ph - y / y_top * ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let title = format!(
        "dataset {}, {}, hidden widths {}",
        report.dataset,
        report.activation,
        report.hidden_widths.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("-")
    );
    let _ = writeln!(svg, r#"<text x="{LEFT}" y="20" font-size="14">{}</text>"#, xml_escape(&title));

    let _ = writeln!(svg, r##"<g class="axes" stroke="#444" stroke-width="1">"##);
    let _ = writeln!(svg, r#"<line x1="{LEFT}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, TOP + ph, LEFT + pw, TOP + ph);
    let _ = writeln!(svg, r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{:.2}"/>"#, TOP + ph);
    let _ = writeln!(svg, "</g>");
    let mut y = 0.0;
    while y <= y_top + 1e-9 {
        let py = sy(y);
        let _ = writeln!(svg, r##"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="#444"/>"##, LEFT - 4.0);
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 7.0, py + 4.0, fmt_tick(y));
        y += y_step;
    }
    let x_step = if integer_x {
        nice_step(x_max - x_min, 10.0).max(1.0).round()
    } else {
        nice_step(x_max - x_min, 6.0)
    };
    let mut x = (x_min / x_step).ceil() * x_step;
    while x <= x_max + 1e-9 {
        let px = sx(x);
        let _ = writeln!(svg, r##"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="#444"/>"##, TOP + ph, TOP + ph + 4.0);
        let _ = writeln!(svg, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + ph + 18.0, fmt_tick(x));
        x += x_step;
    }
    let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_label}</text>"#, LEFT + pw / 2.0, H - 14.0);
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        xml_escape(&y_label)
    );

    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut band = String::new();
        for (x, hi) in s.x.iter().zip(&s.hi) {
            let _ = write!(band, "{:.2},{:.2} ", sx(*x), sy(*hi));
        }
        for (x, lo) in s.x.iter().zip(&s.lo).rev() {
            let _ = write!(band, "{:.2},{:.2} ", sx(*x), sy(*lo));
        }
        let _ = writeln!(svg, r#"<polygon class="band" fill="{color}" fill-opacity="0.2" stroke="none" points="{}"/>"#, band.trim_end());
        let line: Vec<String> = s.x.iter().zip(&s.mean).map(|(x, m)| format!("{:.2},{:.2}", sx(*x), sy(*m))).collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="mean" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            line.join(" ")
        );
        let ly = TOP + 6.0 + 16.0 * i as f64;
        let lx = LEFT + pw - 200.0;
        let _ = writeln!(svg, r#"<rect x="{lx:.2}" y="{:.2}" width="14" height="8" fill="{color}"/>"#, ly - 7.0);
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#, lx + 20.0, xml_escape(&s.name));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn subscript(q: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    q.to_string().chars().map(|c| DIGITS[c.to_digit(10).expect("digit") as usize]).collect()
}

/// Writes [`render_plot`] to `path`.
pub fn emit_plot(report: &ExperimentReport, kind: PlotKind, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, render_plot(report, kind)?)?;
    Ok(())
}
