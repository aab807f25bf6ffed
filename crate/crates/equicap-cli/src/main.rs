//! `equicap` — capacity experiments for group-equivariant codes.

use clap::{Parser, Subcommand};
use equicap_cli::{configure_threads, run, ExperimentConfig, ProbeKind};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "equicap",
    version,
    about = "Invariant-perceptron capacity: exact counting, separability experiments, \
             and equivariant-layer sweeps",
    after_help = "Exit codes: 0 success, 1 runtime failure (undecided solve or failed \
                  suite), 2 configuration error. EQUICAP_THREADS caps worker threads; \
                  results are identical for any worker count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the exact separable-dichotomy fraction f(P, N).
    Cover {
        /// Number of points P (>= 1).
        #[arg(long)]
        p: usize,
        /// Dimension N.
        #[arg(long)]
        n: usize,
        /// Print the reduced rational instead of a decimal.
        #[arg(long)]
        exact: bool,
        /// Print the dichotomy count C(P, N) instead of the fraction.
        #[arg(long, conflicts_with = "exact")]
        count: bool,
    },
    /// Monte-Carlo fraction of separable dichotomies for a representation.
    Fraction {
        /// Built-in spec (regular:m, rotation:m, dsum:m1,m2,
        /// regular-augmented:m,k, rotation-augmented:m,k, regular-sum:m,c)
        /// or a path to a representation JSON file.
        #[arg(long)]
        rep: String,
        /// Group JSON for a file-based --rep without an embedded group.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Number of orbits P (>= 2).
        #[arg(long)]
        p: usize,
        /// Random dichotomies to test.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// RNG seed; auto-generated (and reported) when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Solve on the full orbits instead of the centroids.
        #[arg(long)]
        raw_orbits: bool,
        /// Decision procedure per dichotomy.
        #[arg(long, value_enum, default_value = "lp")]
        probe: ProbeKind,
    },
    /// Channel sweep of empirical capacity for an equivariant layer.
    GcnnSweep {
        /// conv | conv-maxpool | conv-avgpool | dsum:m1,m2
        #[arg(long, default_value = "conv")]
        arch: String,
        /// Number of orbits P.
        #[arg(long, default_value_t = 40)]
        p: usize,
        /// Comma-separated output-channel counts.
        #[arg(long, value_delimiter = ',', required = true)]
        channels: Vec<usize>,
        /// Random dichotomies per sweep point and replicate.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// RNG seed; auto-generated (and reported) when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Weight/input replicates pooled per sweep point.
        #[arg(long, default_value_t = 1)]
        input_seeds: usize,
        /// CSV output path; metadata JSON lands next to it.
        #[arg(long)]
        out: PathBuf,
        /// Permit dsum periods that share a factor (e.g. 10,8).
        #[arg(long)]
        allow_non_coprime: bool,
        /// Decision procedure per dichotomy.
        #[arg(long, value_enum, default_value = "lp")]
        probe: ProbeKind,
    },
    /// Run self-check suites and report machine-readable results.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// RNG seed for the randomized suites.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit the orbit-geometry panels (rotation, augmented rotation,
    /// cyclic shift) as JSON.
    Figure1Data {
        /// RNG seed for the anchor points.
        #[arg(long)]
        seed: Option<u64>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn seed_or_random(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random::<u64>)
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let config = match cli.command {
        Command::Cover { p, n, exact, count } => ExperimentConfig::Cover { p, n, exact, count },
        Command::Fraction {
            rep,
            group,
            p,
            trials,
            seed,
            raw_orbits,
            probe,
        } => ExperimentConfig::Fraction {
            rep,
            group,
            p,
            trials,
            seed: seed_or_random(seed),
            raw_orbits,
            probe,
        },
        Command::GcnnSweep {
            arch,
            p,
            channels,
            trials,
            seed,
            input_seeds,
            out,
            allow_non_coprime,
            probe,
        } => ExperimentConfig::GcnnSweep {
            arch,
            p,
            channels,
            trials,
            seed: seed_or_random(seed),
            input_seeds,
            out,
            allow_non_coprime,
            probe,
        },
        Command::Verify { suite, seed } => ExperimentConfig::Verify {
            suite,
            seed: seed_or_random(seed),
        },
        Command::Figure1Data { seed, out } => ExperimentConfig::Figure1Data {
            seed: seed.unwrap_or(1),
            out,
        },
    };
    match run(config) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.exit_code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
