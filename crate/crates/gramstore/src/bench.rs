//! The backend x algorithm benchmark grid and its report format.
//!
//! One cross-validation run per cell, executed strictly sequentially so the
//! wall-clock timings are uncontended. Reports are a delimited table with a
//! fixed header and six-decimal floats; for a fixed corpus and seed the
//! non-timing columns are byte-for-byte reproducible.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::corpus::LabeledDocument;
use crate::evaluation::{run_crossval, Algorithm};
use crate::sentiment::TrainOptions;
use crate::store::Backend;
use crate::Error;

/// Shared parameters for every cell of a benchmark grid.
#[derive(Clone, Debug)]
pub struct GridOptions {
    pub n: usize,
    pub folds: usize,
    pub seed: u64,
    /// Decision threshold for [`Algorithm::Threshold`].
    pub threshold: f64,
    /// Smoothing constant for training.
    pub alpha: f64,
    /// Bucket count for [`Backend::Bucket`]; `None` means `26^n`.
    pub buckets: Option<usize>,
    pub allow_large_n: bool,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            n: 5,
            folds: 10,
            seed: 42,
            threshold: 0.0,
            alpha: 1.0,
            buckets: None,
            allow_large_n: false,
        }
    }
}

/// One `(backend, algorithm)` cell of a benchmark report.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkRow {
    pub backend: Backend,
    pub algorithm: Algorithm,
    pub n: usize,
    pub train_seconds: f64,
    pub eval_seconds: f64,
    pub total_seconds: f64,
    pub accuracy: f64,
    pub kappa: f64,
    pub corpus_size: usize,
    pub seed: u64,
}

/// A cell that failed, identified so the rest of the grid still reports.
#[derive(Clone, Debug)]
pub struct CellFailure {
    pub backend: Backend,
    pub algorithm: Algorithm,
    pub message: String,
}

/// The full grid result: one row per successful cell, in deterministic
/// `(algorithm, backend)` order, plus any failures.
#[derive(Clone, Debug, Default)]
pub struct BenchmarkReport {
    pub rows: Vec<BenchmarkRow>,
    pub failures: Vec<CellFailure>,
}

/// Runs one cross validation per `(algorithm, backend)` cell, sequentially,
/// in the order the slices give them. A failing cell is recorded and the
/// remaining cells still run.
pub fn run_benchmark_grid(
    corpus: &[LabeledDocument],
    backends: &[Backend],
    algorithms: &[Algorithm],
    options: &GridOptions,
) -> BenchmarkReport {
    let mut report = BenchmarkReport::default();
    for &algorithm in algorithms {
        for &backend in backends {
            let train_options = TrainOptions {
                n: options.n,
                backend,
                buckets: options.buckets,
                alpha: options.alpha,
                allow_large_n: options.allow_large_n,
            };
            match run_crossval(
                corpus,
                options.folds,
                options.seed,
                &train_options,
                algorithm,
                options.threshold,
            ) {
                Ok(result) => report.rows.push(BenchmarkRow {
                    backend,
                    algorithm,
                    n: options.n,
                    train_seconds: result.train_seconds,
                    eval_seconds: result.eval_seconds,
                    total_seconds: result.total_seconds(),
                    accuracy: result.accuracy,
                    kappa: result.kappa,
                    corpus_size: corpus.len(),
                    seed: options.seed,
                }),
                Err(error) => report.failures.push(CellFailure {
                    backend,
                    algorithm,
                    message: error.to_string(),
                }),
            }
        }
    }
    report
}

/// Column headers of the report table, in emission order.
pub const REPORT_HEADER: &str =
    "backend,algorithm,n,train_seconds,eval_seconds,total_seconds,accuracy,kappa,corpus_size,seed";

/// Renders the report as a delimited table: the fixed header line, then one
/// row per cell with floats at six decimal places. Byte-deterministic for a
/// fixed report.
pub fn format_report(report: &BenchmarkReport) -> String {
    let mut out = String::new();
    out.push_str(REPORT_HEADER);
    out.push('\n');
    for row in &report.rows {
        writeln!(
            out,
            "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{},{}",
            row.backend,
            row.algorithm,
            row.n,
            row.train_seconds,
            row.eval_seconds,
            row.total_seconds,
            row.accuracy,
            row.kappa,
            row.corpus_size,
            row.seed
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Writes [`format_report`] output to a file.
pub fn emit_report(report: &BenchmarkReport, path: &Path) -> Result<(), Error> {
    fs::write(path, format_report(report)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a report table back, validating the header and every field.
pub fn parse_report(path: &Path) -> Result<Vec<BenchmarkRow>, Error> {
    let content = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut lines = content.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == REPORT_HEADER => {}
        Some((_, header)) => {
            return Err(Error::MalformedReport {
                line: 1,
                message: format!("unexpected header {header:?}"),
            })
        }
        None => return Ok(Vec::new()),
    }
    let mut rows = Vec::new();
    for (index, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(Error::MalformedReport {
                line: index + 1,
                message: format!("expected 10 fields, found {}", fields.len()),
            });
        }
        let field = |i: usize, what: &str, error: String| Error::MalformedReport {
            line: index + 1,
            message: format!("{what} {error:?} in column {}", i + 1),
        };
        rows.push(BenchmarkRow {
            backend: fields[0]
                .parse()
                .map_err(|e: String| field(0, "backend", e))?,
            algorithm: fields[1]
                .parse()
                .map_err(|e: String| field(1, "algorithm", e))?,
            n: fields[2]
                .parse()
                .map_err(|e| field(2, "n", format!("{e}")))?,
            train_seconds: fields[3]
                .parse()
                .map_err(|e| field(3, "train_seconds", format!("{e}")))?,
            eval_seconds: fields[4]
                .parse()
                .map_err(|e| field(4, "eval_seconds", format!("{e}")))?,
            total_seconds: fields[5]
                .parse()
                .map_err(|e| field(5, "total_seconds", format!("{e}")))?,
            accuracy: fields[6]
                .parse()
                .map_err(|e| field(6, "accuracy", format!("{e}")))?,
            kappa: fields[7]
                .parse()
                .map_err(|e| field(7, "kappa", format!("{e}")))?,
            corpus_size: fields[8]
                .parse()
                .map_err(|e| field(8, "corpus_size", format!("{e}")))?,
            seed: fields[9]
                .parse()
                .map_err(|e| field(9, "seed", format!("{e}")))?,
        });
    }
    Ok(rows)
}

/// Lays rows out as grids with algorithms as rows and backends as columns:
/// one grid per metric (total seconds, accuracy, kappa).
pub fn render_grids(rows: &[BenchmarkRow]) -> String {
    let mut backends = Vec::new();
    let mut algorithms = Vec::new();
    for row in rows {
        if !backends.contains(&row.backend) {
            backends.push(row.backend);
        }
        if !algorithms.contains(&row.algorithm) {
            algorithms.push(row.algorithm);
        }
    }
    let cell = |algorithm: Algorithm, backend: Backend| {
        rows.iter()
            .find(|r| r.algorithm == algorithm && r.backend == backend)
    };
    let mut out = String::new();
    for (title, metric) in [
        ("total_seconds", 0usize),
        ("accuracy", 1),
        ("kappa", 2),
    ] {
        writeln!(out, "{title}").expect("writing to a String cannot fail");
        write!(out, "{:<14}", "").unwrap();
        for backend in &backends {
            write!(out, "{:>14}", backend.to_string()).unwrap();
        }
        out.push('\n');
        for &algorithm in &algorithms {
            write!(out, "{:<14}", algorithm.to_string()).unwrap();
            for &backend in &backends {
                match cell(algorithm, backend) {
                    Some(row) => {
                        let value = match metric {
                            0 => row.total_seconds,
                            1 => row.accuracy,
                            _ => row.kappa,
                        };
                        write!(out, "{value:>14.6}").unwrap();
                    }
                    None => write!(out, "{:>14}", "-").unwrap(),
                }
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}
