use std::fmt::{self, Write as _};

use super::ExperimentReport;
use crate::geometry::Class;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ProgressionRow {
    /// `seed <n>` or `mean`.
    pub label: String,
    /// `[layer][dimension]`.
    pub values: Vec<Vec<f64>>,
}

impl ProgressionRow {
    /// Layers joined by arrows, e.g. `(2, 0) → (1, 0)`; a single dimension
    /// prints bare numbers.
    pub fn arrows(&self) -> String {
        let cell = |v: &[f64]| {
            let parts: Vec<String> = v.iter().map(|&x| fmt_num(x)).collect();
            if parts.len() == 1 {
                parts[0].clone()
            } else {
                format!("({})", parts.join(", "))
            }
        };
        self.values.iter().map(|v| cell(v)).collect::<Vec<_>>().join(" → ")
    }
}

/// Per-seed Betti progressions of one class across the layers, and their mean.
#[derive(Clone, Debug, PartialEq)]
pub struct Progression {
    pub class: Class,
    /// The tracked dimension, or every dimension.
    pub dim: Option<usize>,
    pub rows: Vec<ProgressionRow>,
}

impl Progression {
    pub fn mean(&self) -> &ProgressionRow {
        self.rows.last().expect("mean row")
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
        for r in &self.rows {
            writeln!(f, "{:<width$}  {}", r.label, r.arrows())?;
        }
        Ok(())
    }
}

fn fmt_num(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{x:.0}")
    } else {
        let s = format!("{x:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Layer-by-layer Betti numbers of `class`: one row per successful seed and
/// a final mean row. `dim` selects a single Betti number.
pub fn betti_progression(report: &ExperimentReport, class: Class, dim: Option<usize>) -> Result<Progression> {
    if !report.classes.contains(&class) {
        return Err(Error::InvalidInput(format!("class {class} was not analyzed")));
    }
    let traces: Vec<_> = report.seeds.iter().filter_map(|s| s.trace(class).map(|t| (s.seed, t))).collect();
    let Some((_, first)) = traces.first() else {
        return Err(Error::InvalidInput(format!("no seed has a topology trace for class {class}")));
    };
    let dims = first.input.betti.len();
    let selected: Vec<usize> = match dim {
        Some(q) if q >= dims => {
            return Err(Error::InvalidInput(format!(
                "dimension {q} out of range: class {class} tracks β_0..β_{}",
                dims - 1
            )))
        }
        Some(q) => vec![q],
        None => (0..dims).collect(),
    };
    let layers = first.layers.len();
    let mut rows: Vec<ProgressionRow> = traces
        .iter()
        .map(|(seed, t)| ProgressionRow {
            label: format!("seed {seed}"),
            values: t
                .layers
                .iter()
                .map(|l| selected.iter().map(|&q| l.betti.get(q) as f64).collect())
                .collect(),
        })
        .collect();
    let n = rows.len() as f64;
    let mut mean = vec![vec![0.0; selected.len()]; layers];
    for r in &rows {
        for (m, v) in mean.iter_mut().zip(&r.values) {
            m.iter_mut().zip(v).for_each(|(a, b)| *a += b);
        }
    }
    mean.iter_mut().flatten().for_each(|x| *x /= n);
    rows.push(ProgressionRow {
        label: "mean".into(),
        values: mean,
    });
    Ok(Progression { class, dim, rows })
}

/// Plain-text summary: per-seed training results, then the Betti and
/// complexity progressions of every analyzed class.
pub fn render_text(report: &ExperimentReport, classes: &[Class]) -> Result<String> {
    let mut out = String::new();
    let w = &report.hidden_widths;
    let _ = writeln!(
        out,
        "dataset {}  activation {}  hidden widths {:?}  status {:?}",
        report.dataset, report.activation, w, report.status
    );
    let _ = writeln!(out, "\n{:>6} {:>7} {:>9} {:>9} {:>9} {:>10}", "seed", "epochs", "train", "test", "gap", "separation");
    for s in &report.seeds {
        let _ = writeln!(
            out,
            "{:>6} {:>7} {:>9.4} {:>9.4} {:>9.4} {:>10.4}",
            s.seed, s.epochs_run, s.train_accuracy, s.test_accuracy, s.generalization_gap, s.separation
        );
    }
    for f in &report.failures {
        let _ = writeln!(out, "{:>6} failed: {}", f.seed, f.error);
    }
    for &class in classes {
        let prog = betti_progression(report, class, None)?;
        let _ = writeln!(out, "\nclass {class}");
        for s in &report.seeds {
            if let Some(t) = s.trace(class) {
                let _ = writeln!(out, "  seed {}: input {} at k={}, eps={}", s.seed, t.input.betti, t.input.k, t.input.eps);
            }
        }
        let _ = writeln!(out, "  Betti numbers by layer:");
        for line in prog.to_string().lines() {
            let _ = writeln!(out, "    {line}");
        }
        if let Some(agg) = report.aggregate(class) {
            let row = |v: Vec<String>| v.join(" → ");
            let _ = writeln!(out, "  topological complexity by layer:");
            let _ = writeln!(out, "    mean  {}", row(agg.complexity_mean.iter().map(|&x| fmt_num(x)).collect()));
            let _ = writeln!(out, "    min   {}", row(agg.complexity_min.iter().map(|x| x.to_string()).collect()));
            let _ = writeln!(out, "    max   {}", row(agg.complexity_max.iter().map(|x| x.to_string()).collect()));
        }
    }
    Ok(out)
}
