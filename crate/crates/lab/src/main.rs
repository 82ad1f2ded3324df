use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polreuse::config::{Algorithm, ExperimentConfig};
use polreuse::export::{export_csv, load_results, save_results, ExportOptions};
use polreuse::library::train_source_library;
use polreuse::suites::{oracle_suite, regret_suite, ORACLE_ALPHA, REGRET_MEANS};
use polreuse::{run_experiment, LabResult};

#[derive(Parser)]
#[command(name = "polreuse", version, about = "Bandit-driven policy reuse experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train the config's source policies and write them to its library directory.
    TrainLibrary {
        config: PathBuf,
        /// Training seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run an experiment and write results.json plus CSVs per target.
    Run {
        config: PathBuf,
        /// First seed; the run keeps the configured number of seeds.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated list of ours, prql, qlearning.
        #[arg(long, value_delimiter = ',')]
        algorithm: Option<Vec<Algorithm>>,
    },
    /// Re-export CSVs from a saved results.json.
    Export {
        results: PathBuf,
        dir: PathBuf,
        #[arg(long, default_value_t = 50)]
        smoothing_window: usize,
        #[arg(long, default_value_t = 100)]
        selection_window: usize,
    },
    /// UCB1 regret against its logarithmic bound on synthetic Bernoulli arms.
    RegretSuite {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
    },
    /// Q-learning against value iteration on a small deterministic room.
    OracleSuite {
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = 20_000)]
        episodes: usize,
        /// Q-learning step size.
        #[arg(long, default_value_t = ORACLE_ALPHA)]
        alpha: f64,
    },
}

fn load(config: &Path) -> LabResult<ExperimentConfig> {
    ExperimentConfig::load(config)
}

fn run(cli: Cli) -> LabResult<bool> {
    match cli.command {
        Command::TrainLibrary { config, seed } => {
            let mut config = load(&config)?;
            if let Some(s) = seed {
                config.training.seed = s;
            }
            for t in train_source_library(&config)? {
                println!(
                    "{}: {} episodes, greedy evaluation {:.4}",
                    t.task, t.episodes, t.final_eval
                );
            }
            println!("wrote {}", config.library_dir.display());
        }
        Command::Run {
            config,
            seed,
            out,
            algorithm,
        } => {
            let mut config = load(&config)?;
            if let Some(s) = seed {
                config.reseed(s);
            }
            if let Some(out) = out {
                config.out = out;
            }
            if let Some(mut algs) = algorithm {
                algs.dedup();
                config.algorithms = algs;
            }
            config.validate()?;
            let options = ExportOptions {
                smoothing_window: config.smoothing_window,
                selection_window: config.selection_window,
            };
            for target in &config.targets {
                let results = run_experiment(&config, target)?;
                let dir = config.out.join(target);
                save_results(&results, &dir.join("results.json"))?;
                export_csv(&results, &dir, options)?;
                for agg in results.aggregates(options.selection_window) {
                    let last = agg.eval.mean.last().copied().unwrap_or(0.0);
                    println!("{target} {:>9}: final mean evaluation {last:.4}", agg.algorithm.name());
                }
                println!("wrote {}", dir.display());
            }
        }
        Command::Export {
            results,
            dir,
            smoothing_window,
            selection_window,
        } => {
            let results = load_results(&results)?;
            let options = ExportOptions {
                smoothing_window: smoothing_window.max(1),
                selection_window: selection_window.max(1),
            };
            for p in export_csv(&results, &dir, options)? {
                println!("wrote {}", p.display());
            }
        }
        Command::RegretSuite { seeds } => {
            let report = regret_suite(&REGRET_MEANS, &[10_000, 100_000], seeds.max(1));
            println!("{report}");
            return Ok(report.passed());
        }
        Command::OracleSuite { seeds, episodes, alpha } => {
            let report = oracle_suite(episodes.max(1), seeds.max(1), alpha)?;
            println!("{report}");
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
