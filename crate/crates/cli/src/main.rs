use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ptqsim::config::parse_config_with;
use ptqsim::{dilation_report, run, run_dilation_check, stats_line, transpile_file, CliError, Target};

#[derive(Parser)]
#[command(name = "ptqsim", version, about = "PT-symmetric qubit on a qutrit: sweeps, transpilation, dilation checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the (r, t) grid and write CSV (and optionally PGM) output.
    Run {
        /// `key = value` configuration file; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        backend: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        shots: Option<String>,
        #[arg(long)]
        observable: Option<String>,
        #[arg(long)]
        output_csv: Option<PathBuf>,
        #[arg(long)]
        output_pgm: Option<PathBuf>,
        #[arg(long)]
        confusion_file: Option<PathBuf>,
    },
    /// Rewrite a circuit file into a hardware-native gate set.
    Transpile {
        #[arg(long, value_enum)]
        target: TargetArg,
        input: PathBuf,
        output: PathBuf,
    },
    /// Dilate random contractions and report the worst defects.
    DilationCheck {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Ion,
    Transmon,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Defect(report) = &e {
                println!("{}", dilation_report(report));
            }
            eprintln!("ptqsim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run { config, backend, seed, shots, observable, output_csv, output_pgm, confusion_file } => {
            let text = match &config {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|source| CliError::Io { path: path.clone(), source })?,
                None => String::new(),
            };
            let path_str = |p: PathBuf| p.to_string_lossy().into_owned();
            let overrides: Vec<(&str, String)> = [
                ("backend", backend),
                ("seed", seed.map(|s| s.to_string())),
                ("shots", shots),
                ("observable", observable),
                ("output_csv", output_csv.map(path_str)),
                ("output_pgm", output_pgm.map(path_str)),
                ("confusion_file", confusion_file.map(path_str)),
            ]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
            .collect();
            let cfg = parse_config_with(&text, &overrides)?;
            let out = run(&cfg)?;
            let missing = out.points.iter().filter(|p| p.p0_postselected.is_none()).count();
            println!("wrote {} points to {}", out.points.len(), cfg.output_csv.display());
            if let Some(pgm) = &cfg.output_pgm {
                println!("wrote {}x{} heatmap to {}", out.heatmap.width, out.heatmap.height, pgm.display());
            }
            if missing > 0 {
                println!("{missing} point(s) had no post-selected shots");
            }
            Ok(())
        }
        Command::Transpile { target, input, output } => {
            let target = match target {
                TargetArg::Ion => Target::Ion,
                TargetArg::Transmon => Target::Transmon,
            };
            let stats = transpile_file(&input, &output, target)?;
            println!("{}", stats_line(&stats));
            Ok(())
        }
        Command::DilationCheck { n, m, trials, seed } => {
            println!("n={n} m={m} trials={trials} seed={seed}");
            let report = run_dilation_check(n, m, trials, seed)?;
            println!("{}", dilation_report(&report));
            Ok(())
        }
    }
}
