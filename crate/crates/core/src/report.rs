//! Convergence traces of campaigns and normalized comparisons of bench
//! results, as CSV with SVG renderings.
//!
//! Normalized score of a solver on a dataset, given the best (min) and
//! worst (max) PAR-2 of all solvers on it:
//!
//! ```text
//! 1 - (curr - min) / (2 (max - min))     if max > min
//! 1                                      otherwise
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evaluator::EvaluationSummary;
use crate::search::IterationRecord;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: no readable records")]
    AllCorrupt { path: String },
    #[error("no inputs")]
    NoInputs,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub fn normalized_score(curr: f64, min: f64, max: f64) -> f64 {
    if max > min {
        1.0 - (curr - min) / (2.0 * (max - min))
    } else {
        1.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub iteration: usize,
    pub candidate_par2: Option<f64>,
    pub best_par2: f64,
    pub accepted: bool,
    /// Mutated slots joined with `;`.
    pub slots: String,
}

impl From<&IterationRecord> for ConvergenceRow {
    fn from(r: &IterationRecord) -> Self {
        ConvergenceRow {
            iteration: r.i,
            candidate_par2: r.candidate_par2(),
            best_par2: r.best_par2,
            accepted: r.accepted,
            slots: r
                .plan
                .slots
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join(";"),
        }
    }
}

/// Parses a campaign log, skipping lines that do not parse.
pub fn read_campaign_log(path: &Path) -> Result<Vec<IterationRecord>, ReportError> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    let mut bad = 0;
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<IterationRecord>(line) {
            Ok(r) => out.push(r),
            Err(e) => {
                bad += 1;
                log::warn!("{}:{}: skipping corrupt record: {e}", path.display(), n + 1);
            }
        }
    }
    if out.is_empty() && bad > 0 {
        return Err(ReportError::AllCorrupt {
            path: path.display().to_string(),
        });
    }
    Ok(out)
}

pub fn write_convergence_csv(path: &Path, rows: &[ConvergenceRow]) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_convergence_csv(path: &Path) -> Result<Vec<ConvergenceRow>, ReportError> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

/// A bench summary tagged with what was run on what.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub solver: String,
    pub dataset: String,
    #[serde(flatten)]
    pub summary: EvaluationSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub dataset: String,
    pub solver: String,
    pub par2: f64,
    pub solved: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<f64>,
}

/// One row per (dataset, solver). Normalized scores are filled in only
/// when more than one solver appears.
pub fn comparison_rows(results: &[BenchSummary]) -> Vec<ReportRow> {
    let solvers: std::collections::BTreeSet<&str> =
        results.iter().map(|r| r.solver.as_str()).collect();
    let mut by_dataset: BTreeMap<&str, Vec<&BenchSummary>> = BTreeMap::new();
    for r in results {
        by_dataset.entry(&r.dataset).or_default().push(r);
    }
    let mut rows = Vec::new();
    for (dataset, group) in by_dataset {
        let min = group.iter().map(|r| r.summary.par2).fold(f64::INFINITY, f64::min);
        let max = group.iter().map(|r| r.summary.par2).fold(f64::NEG_INFINITY, f64::max);
        for r in group {
            rows.push(ReportRow {
                dataset: dataset.to_string(),
                solver: r.solver.clone(),
                par2: r.summary.par2,
                solved: r.summary.solved,
                normalized: (solvers.len() > 1).then(|| normalized_score(r.summary.par2, min, max)),
            });
        }
    }
    rows
}

pub fn write_comparison_csv(path: &Path, rows: &[ReportRow]) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_path(path)?;
    let with_norm = rows.iter().any(|r| r.normalized.is_some());
    if with_norm {
        w.write_record(["dataset", "solver", "par2", "solved", "normalized"])?;
    } else {
        w.write_record(["dataset", "solver", "par2", "solved"])?;
    }
    for r in rows {
        let mut rec = vec![
            r.dataset.clone(),
            r.solver.clone(),
            r.par2.to_string(),
            r.solved.to_string(),
        ];
        if with_norm {
            rec.push(r.normalized.map(|n| n.to_string()).unwrap_or_default());
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_comparison_csv(path: &Path) -> Result<Vec<ReportRow>, ReportError> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

const W: f64 = 640.0;
const H: f64 = 360.0;
const PAD: f64 = 48.0;

fn svg_header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        W / 2.0,
        escape(title)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Best and candidate PAR-2 per iteration; accepted candidates are filled.
pub fn convergence_svg(title: &str, rows: &[ConvergenceRow]) -> String {
    let mut svg = svg_header(title);
    let n = rows.len().max(2) as f64 - 1.0;
    let values = rows
        .iter()
        .flat_map(|r| r.candidate_par2.into_iter().chain([r.best_par2]));
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    let (lo, hi) = if lo.is_finite() && hi > lo {
        (lo, hi)
    } else if lo.is_finite() {
        (lo - 1.0, lo + 1.0)
    } else {
        (0.0, 1.0)
    };
    let x = |i: usize| PAD + (W - 2.0 * PAD) * i as f64 / n;
    let y = |v: f64| H - PAD - (H - 2.0 * PAD) * (v - lo) / (hi - lo);

    let _ = writeln!(
        svg,
        "<line x1=\"{PAD}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>\n<line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{0}\" stroke=\"black\"/>",
        H - PAD,
        W - PAD
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">iteration</text>\n<text x=\"14\" y=\"{}\" transform=\"rotate(-90 14 {})\" text-anchor=\"middle\">PAR-2 (s)</text>",
        W / 2.0,
        H - 12.0,
        H / 2.0,
        H / 2.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{hi:.3}</text>\n<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{lo:.3}</text>",
        PAD - 4.0,
        PAD + 4.0,
        PAD - 4.0,
        H - PAD
    );
    for r in rows {
        if let Some(c) = r.candidate_par2 {
            let fill = if r.accepted { "#1f77b4" } else { "none" };
            let _ = writeln!(
                svg,
                "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3\" stroke=\"#1f77b4\" fill=\"{fill}\"/>",
                x(r.iteration),
                y(c)
            );
        }
    }
    let points: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.1},{:.1}", x(r.iteration), y(r.best_par2)))
        .collect();
    let _ = writeln!(
        svg,
        "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"{}\"/>",
        points.join(" ")
    );
    svg.push_str("</svg>\n");
    svg
}

/// Horizontal bars of the normalized score (or PAR-2 for a single solver).
pub fn comparison_svg(title: &str, rows: &[ReportRow]) -> String {
    let mut svg = svg_header(title);
    let bar_h = ((H - 2.0 * PAD) / rows.len().max(1) as f64).min(24.0);
    let max_par2 = rows.iter().map(|r| r.par2).fold(0.0, f64::max).max(1e-9);
    for (k, r) in rows.iter().enumerate() {
        let frac = r.normalized.unwrap_or(r.par2 / max_par2);
        let top = PAD + k as f64 * bar_h;
        let width = (W - 3.0 * PAD - 120.0) * frac;
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{} / {}</text>\n<rect x=\"{}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"#2ca02c\"/>\n<text x=\"{:.1}\" y=\"{:.1}\">{:.3}</text>",
            PAD + 120.0,
            top + bar_h * 0.7,
            escape(&r.dataset),
            escape(&r.solver),
            PAD + 124.0,
            top + 2.0,
            width,
            bar_h - 4.0,
            PAD + 128.0 + width,
            top + bar_h * 0.7,
            frac
        );
    }
    svg.push_str("</svg>\n");
    svg
}
