//! `chaosnet` command-line runner.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 data error,
//! 3 non-convergence (including a grid with no converged point).

mod args;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::{HyperArgs, InputArgs, OutputArgs, ProtocolArgs};

#[derive(Debug, Parser)]
#[command(
    name = "chaosnet",
    version,
    about = "Chaotic-neuron classifier experiments"
)]
struct Cli {
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, env = "CHAOSNET_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a two-class synthetic dataset.
    Synth {
        #[arg(long, default_value_t = 100)]
        n_per_class: usize,
        #[arg(long = "features", default_value_t = 9)]
        n_features: usize,
        #[arg(long, default_value_t = 0.4)]
        separation: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Normalize a dataset and write its firing-time features.
    Extract {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        hyper: HyperArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Fit class mean vectors on a whole dataset and save the model.
    Train {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        hyper: HyperArgs,
        #[arg(long, short)]
        model: PathBuf,
    },
    /// Label rows with a saved model.
    Predict {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, short)]
        model: PathBuf,
        /// Treat every column as a feature (no label column).
        #[arg(long)]
        unlabelled: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Split, train and test; one record per repeat.
    Evaluate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        hyper: HyperArgs,
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// 1-based feature columns to keep, e.g. 1,5,7,8,9.
        #[arg(long, value_parser = args::parse_feature_list)]
        features: Option<::std::vec::Vec<usize>>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Grid search over b, q and epsilon.
    Tune {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        hyper: HyperArgs,
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// start:stop:step or a comma list.
        #[arg(long, default_value = "0.05:0.95:0.05", value_parser = args::parse_values)]
        b_values: ::std::vec::Vec<f64>,
        #[arg(long, default_value = "0.05:0.95:0.05", value_parser = args::parse_values)]
        q_values: ::std::vec::Vec<f64>,
        #[arg(long, default_value = "0.01:0.1:0.01", value_parser = args::parse_values)]
        epsilon_values: ::std::vec::Vec<f64>,
        /// Keep grid points where b equals q.
        #[arg(long)]
        keep_b_equal_q: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Accuracy against training rows per class.
    Curve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        hyper: HyperArgs,
        /// a:b range or comma list of per-class counts.
        #[arg(long, default_value = "1:20", value_parser = args::parse_counts)]
        m_values: ::std::vec::Vec<usize>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        repeats: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "full-dataset", value_parser = args::parse_from_str::<chaosnet::eval::NormalizationMode>)]
        normalization: chaosnet::eval::NormalizationMode,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rank feature subsets by accuracy.
    Subsets {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        hyper: HyperArgs,
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// 1-based feature list; repeat the flag for several subsets.
        #[arg(long = "subset", required = true, value_parser = args::parse_feature_list)]
        subsets: Vec<::std::vec::Vec<usize>>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the activity trajectory A(0..steps), one value per line.
    Trajectory {
        #[arg(long, default_value = "skew-tent", value_parser = args::parse_from_str::<chaosnet::MapKind>)]
        map: chaosnet::MapKind,
        #[arg(long, default_value_t = chaosnet::ttss::DEFAULT_B, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = chaosnet::ttss::DEFAULT_Q, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("chaosnet: {}", first.trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("chaosnet: cannot configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chaosnet: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
