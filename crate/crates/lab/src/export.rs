//! CSV export of aggregated results, plus a plotting script.
//!
//! | file                    | columns                                                        |
//! |-------------------------|----------------------------------------------------------------|
//! | `curves.csv`            | `episode`, then `<alg>_mean`, `<alg>_std` per algorithm          |
//! | `curves_smoothed.csv`   | same, trailing moving average                                  |
//! | `running_average.csv`   | same, for the running mean of learning returns `W(k)`          |
//! | `expected_reward.csv`   | `episode`, then `<alg>_mean` per algorithm                     |
//! | `selection.csv`         | `algorithm`, `window_start`, `window_end`, `egreedy`, `greedy`, one column per source |
//!
//! Algorithms appear in run order, episodes are 1-based, and floats use the
//! shortest representation that parses back to the same value.

use std::path::{Path, PathBuf};

use crate::error::{read_text, write_text, LabError, LabResult};
use crate::experiment::{Aggregate, Curve, ResultSet};

pub const PLOT_SCRIPT: &str = include_str!("plot.py");

/// Windows used when aggregating for export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExportOptions {
    pub smoothing_window: usize,
    pub selection_window: usize,
}

impl Default for ExportOptions {
    fn default() -> Self {
        Self {
            smoothing_window: 50,
            selection_window: 100,
        }
    }
}

fn csv_error(path: &Path, e: csv::Error) -> LabError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => LabError::io(path, io),
        other => LabError::Validation(format!("{}: {other:?}", path.display())),
    }
}

fn write_rows(path: &Path, header: &[String], rows: impl Iterator<Item = Vec<String>>) -> LabResult<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_error(path, e))?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Validation(format!("{}: {e}", path.display())))?;
    write_text(path, &String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn curve_file(path: &Path, aggs: &[Aggregate], with_std: bool, pick: impl Fn(&Aggregate) -> Curve) -> LabResult<()> {
    let curves: Vec<Curve> = aggs.iter().map(&pick).collect();
    let mut header = vec!["episode".to_string()];
    for a in aggs {
        header.push(format!("{}_mean", a.algorithm));
        if with_std {
            header.push(format!("{}_std", a.algorithm));
        }
    }
    let len = curves.first().map_or(0, |c| c.mean.len());
    let rows = (0..len).map(|k| {
        let mut row = vec![(k + 1).to_string()];
        for c in &curves {
            row.push(c.mean[k].to_string());
            if with_std {
                row.push(c.std[k].to_string());
            }
        }
        row
    });
    write_rows(path, &header, rows)
}

/// Writes every CSV and `plot.py` into `dir`, returning the written paths.
pub fn export_csv(results: &ResultSet, dir: &Path, options: ExportOptions) -> LabResult<Vec<PathBuf>> {
    results.validate()?;
    let aggs = results.aggregates(options.selection_window);
    let mut written = Vec::new();
    let mut out = |name: &str| {
        let p = dir.join(name);
        written.push(p.clone());
        p
    };
    curve_file(&out("curves.csv"), &aggs, true, |a| a.eval.clone())?;
    curve_file(&out("curves_smoothed.csv"), &aggs, true, |a| a.eval.smoothed(options.smoothing_window))?;
    curve_file(&out("running_average.csv"), &aggs, true, |a| a.running_average.clone())?;
    curve_file(&out("expected_reward.csv"), &aggs, false, |a| a.expected_reward.clone())?;

    let mut header: Vec<String> = ["algorithm", "window_start", "window_end", "egreedy", "greedy"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(results.library.iter().cloned());
    let rows = aggs.iter().flat_map(|a| {
        a.selection.iter().map(move |w| {
            let mut row = vec![
                a.algorithm.to_string(),
                w.start.to_string(),
                w.end.to_string(),
                w.egreedy.to_string(),
                w.greedy.to_string(),
            ];
            row.extend(w.sources.iter().map(|v| v.to_string()));
            row
        })
    });
    write_rows(&out("selection.csv"), &header, rows)?;
    write_text(&out("plot.py"), PLOT_SCRIPT)?;
    Ok(written)
}

/// A parsed `curves.csv` (or any file in the same layout).
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    pub algorithms: Vec<String>,
    pub episodes: Vec<usize>,
    pub curves: Vec<Curve>,
}

pub fn read_curves(path: &Path) -> LabResult<CurveTable> {
    let text = read_text(path)?;
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| csv_error(path, e))?.clone();
    let bad = |line: usize, m: String| LabError::parse(path, line, 1, m);
    if header.get(0) != Some("episode") || header.len() % 2 != 1 {
        return Err(bad(1, "expected `episode` followed by mean/std column pairs".into()));
    }
    let mut algorithms = Vec::new();
    for pair in header.iter().skip(1).collect::<Vec<_>>().chunks(2) {
        let alg = pair[0]
            .strip_suffix("_mean")
            .filter(|a| pair[1].strip_suffix("_std") == Some(a))
            .ok_or_else(|| bad(1, format!("unexpected columns `{}`, `{}`", pair[0], pair[1])))?;
        algorithms.push(alg.to_string());
    }
    let mut table = CurveTable {
        curves: vec![Curve::default(); algorithms.len()],
        algorithms,
        episodes: Vec::new(),
    };
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let num = |j: usize| -> LabResult<f64> {
            rec.get(j)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(line, format!("bad value in column {}", j + 1)))
        };
        table.episodes.push(
            rec.get(0)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(line, "bad episode number".into()))?,
        );
        for (a, c) in table.curves.iter_mut().enumerate() {
            c.mean.push(num(1 + 2 * a)?);
            c.std.push(num(2 + 2 * a)?);
        }
    }
    Ok(table)
}

pub fn save_results(results: &ResultSet, path: &Path) -> LabResult<()> {
    let text = serde_json::to_string(results).map_err(|e| LabError::Validation(format!("{}: {e}", path.display())))?;
    write_text(path, &text)
}

pub fn load_results(path: &Path) -> LabResult<ResultSet> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| LabError::parse(path, e.line(), e.column(), e.to_string()))
}
