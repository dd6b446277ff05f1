//! Library half of the `ptqsim` binary: configuration, output formats and
//! the three subcommands, kept free of process-level concerns so they can be
//! driven from tests.

pub mod config;
pub mod output;

use std::fs;
use std::path::{Path, PathBuf};

use ptq_core::block_encoding::{dilation_check, DilationReport};
use ptq_core::experiment::{sweep, ConfusionMatrix, ExperimentPoint};
use ptq_core::transpiler::{equivalent, parse_circuit, transpile_ion, transpile_transmon, write_circuit, CircuitStats};
use thiserror::Error;

use config::{ConfigError, RunConfig};
use output::{metadata, write_csv, Heatmap};

/// Largest defect `dilation-check` accepts.
pub const DILATION_TOL: f64 = 1e-9;

/// Entrywise tolerance of the equivalence check run before writing a
/// transpiled circuit.
pub const EQUIVALENCE_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Input(String),
    #[error("transpiled circuit is not equivalent to its input (max deviation {0:e})")]
    Equivalence(f64),
    #[error("dilation check failed")]
    Defect(DilationReport),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Config(_) | CliError::Input(_) => 2,
            CliError::Equivalence(_) => 3,
            CliError::Defect(_) => 4,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Appends `suffix` to the full file name (`out.csv` → `out.csv.meta`).
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// What a `run` produced, in memory.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub points: Vec<ExperimentPoint>,
    pub csv: String,
    pub meta: String,
    pub heatmap: Heatmap,
}

/// Loads the confusion file if one is configured and runs the sweep,
/// without touching the output paths.
pub fn execute(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let mut backend = cfg.backend.clone();
    if let Some(path) = &cfg.confusion_file {
        let matrix = ConfusionMatrix::parse(&read(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        backend.confusion = matrix;
        backend.ion_confusion.clear();
    }
    let points = sweep(&cfg.grid, &backend).map_err(|e| CliError::Input(e.to_string()))?;
    let csv = write_csv(&points, backend.kind, backend.seed);
    let heatmap = Heatmap::from_points(&points, &cfg.grid, backend.kind, cfg.observable);
    Ok(RunOutput { points, csv, meta: metadata(cfg), heatmap })
}

/// Runs the sweep and writes the CSV, its `.meta` sidecar and, if
/// configured, the PGM heatmap with its `.mask.csv` sidecar.
pub fn run(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let out = execute(cfg)?;
    write(&cfg.output_csv, &out.csv)?;
    write(&sidecar(&cfg.output_csv, ".meta"), &out.meta)?;
    if let Some(pgm) = &cfg.output_pgm {
        write(pgm, &out.heatmap.to_pgm())?;
        write(&sidecar(pgm, ".mask.csv"), &out.heatmap.mask_csv(&cfg.grid))?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Ion,
    Transmon,
}

/// Transpiles circuit text for `target`, checking that the unitary is
/// preserved entrywise. Returns the output text and its statistics.
pub fn transpile_text(input: &str, target: Target) -> Result<(String, CircuitStats), CliError> {
    let circuit = parse_circuit(input).map_err(|e| CliError::Input(e.to_string()))?;
    let out = match target {
        Target::Ion => transpile_ion(&circuit),
        Target::Transmon => transpile_transmon(&circuit),
    }
    .map_err(|e| CliError::Input(e.to_string()))?;
    if !equivalent(&circuit, &out, EQUIVALENCE_TOL, false) {
        return Err(CliError::Equivalence(circuit.unitary().max_abs_diff(&out.unitary())));
    }
    Ok((write_circuit(&out), out.stats()))
}

pub fn transpile_file(input: &Path, output: &Path, target: Target) -> Result<CircuitStats, CliError> {
    let (text, stats) = transpile_text(&read(input)?, target)?;
    write(output, &text)?;
    Ok(stats)
}

pub fn stats_line(stats: &CircuitStats) -> String {
    format!("physical={} virtual={}", stats.physical_count, stats.virtual_count)
}

/// Human-readable report, one line per fact.
pub fn dilation_report(report: &DilationReport) -> String {
    let mut lines = vec![
        format!("trials={} succeeded={}", report.trials, report.succeeded),
        format!("max_unitarity_defect={:e}", report.max_unitarity_defect),
        format!("max_block_defect={:e}", report.max_block_defect),
    ];
    for (trial, err) in &report.failures {
        lines.push(format!("trial {trial}: {err}"));
    }
    lines.join("\n")
}

/// Runs the random-contraction suite; `Err(Defect)` unless every trial
/// dilated with both defects below [`DILATION_TOL`].
pub fn run_dilation_check(n: usize, m: usize, trials: usize, seed: u64) -> Result<DilationReport, CliError> {
    let report = dilation_check(n, m, trials, seed).map_err(|e| CliError::Input(e.to_string()))?;
    if report.passed(DILATION_TOL) {
        Ok(report)
    } else {
        Err(CliError::Defect(report))
    }
}
