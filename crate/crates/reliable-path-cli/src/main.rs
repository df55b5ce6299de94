use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use reliable_path_cli::commands::{
    cmd_bench, cmd_export_dot, cmd_generate_from_cnf, cmd_generate_from_templates,
    cmd_generate_random, cmd_round, cmd_solve, cmd_validate, BenchParams, Outcome,
};
use reliable_path_cli::generate::RandomNetParams;

/// Most-reliable-path solvers for networks whose edge failures are
/// correlated through a hidden discrete state.
#[derive(Parser)]
#[command(name = "relpath", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a network document against every model invariant.
    Validate {
        /// Network JSON document.
        network: PathBuf,
    },
    /// Find a most reliable path with the chosen solver.
    Solve {
        network: PathBuf,
        /// One of: brute, lower-bound, dp, approx-basic, approx-pruned.
        #[arg(long)]
        method: String,
        /// Error parameter in (0, 1); required by the approx methods.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Log-domain grid unit; required by the dp method.
        #[arg(long)]
        unit: Option<f64>,
    },
    /// Emit a network document (random family or hardness reductions).
    #[command(subcommand)]
    Generate(GenerateKind),
    /// Validate a flow, decompose it into paths, and sample from them.
    Round {
        network: PathBuf,
        /// Flow text file (`network <file>` header, then `edge value` rows).
        flow: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of paths to sample from the decomposition.
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
    /// Time solvers over a seeded instance family and tabulate ratios.
    Bench {
        /// Comma-separated vertex counts, e.g. 6,8,10.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Comma-separated methods (same names as `solve --method`).
        #[arg(long, value_delimiter = ',', required = true)]
        methods: Vec<String>,
        #[arg(long, default_value_t = 1)]
        repetitions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        states: usize,
        #[arg(long, default_value_t = 3)]
        layer_width: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0.05)]
        rel_min: f64,
        #[arg(long, default_value_t = 1.0)]
        rel_max: f64,
        /// Epsilon passed to approx methods.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Grid unit passed to the dp method.
        #[arg(long)]
        unit: Option<f64>,
    },
    /// Render a network as a DOT graph description.
    ExportDot {
        network: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Seeded layered DAG with uniform random reliabilities.
    Random {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 3)]
        layer_width: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        states: usize,
        #[arg(long, default_value_t = 0.05)]
        rel_min: f64,
        #[arg(long, default_value_t = 1.0)]
        rel_max: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the document here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Build the hardness-reduction network of a 3-CNF formula.
    FromCnf {
        /// DIMACS-style clause list.
        cnf: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Where to write the bit-position/edge mapping side-file
        /// (defaults to `<output>.artifact.json` when --output is given).
        #[arg(long)]
        artifact: Option<PathBuf>,
    },
    /// Build the network of a string-template set.
    FromTemplates {
        /// Text file with one template over {0,1,*} per line.
        templates: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        artifact: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Outcome = match cli.command {
        Command::Validate { network } => cmd_validate(&network),
        Command::Solve {
            network,
            method,
            epsilon,
            unit,
        } => cmd_solve(&network, &method, epsilon, unit),
        Command::Generate(kind) => match kind {
            GenerateKind::Random {
                vertices,
                layer_width,
                density,
                states,
                rel_min,
                rel_max,
                seed,
                output,
            } => cmd_generate_random(
                &RandomNetParams {
                    vertices,
                    layer_width,
                    density,
                    states,
                    rel_min,
                    rel_max,
                    seed,
                },
                output.as_deref(),
            ),
            GenerateKind::FromCnf {
                cnf,
                output,
                artifact,
            } => cmd_generate_from_cnf(&cnf, output.as_deref(), artifact.as_deref()),
            GenerateKind::FromTemplates {
                templates,
                output,
                artifact,
            } => cmd_generate_from_templates(&templates, output.as_deref(), artifact.as_deref()),
        },
        Command::Round {
            network,
            flow,
            seed,
            samples,
        } => cmd_round(&network, &flow, seed, samples),
        Command::Bench {
            sizes,
            methods,
            repetitions,
            seed,
            states,
            layer_width,
            density,
            rel_min,
            rel_max,
            epsilon,
            unit,
        } => cmd_bench(&BenchParams {
            sizes,
            methods,
            repetitions,
            seed,
            states,
            layer_width,
            density,
            rel_min,
            rel_max,
            epsilon,
            unit,
        }),
        Command::ExportDot { network } => cmd_export_dot(&network),
    };

    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
