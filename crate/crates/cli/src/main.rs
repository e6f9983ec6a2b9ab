use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod verify;

/// Gromov–Hausdorff distances from finite metric spaces to regular simplexes.
///
/// Distances are reported doubled (`two_dgh`); pass `--halve` to add `dgh`.
#[derive(Debug, Parser)]
#[command(name = "ghsimplex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the metric axioms and print n, diameter and smallest distance.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Minimum and maximum spanning tree spectra with their trees.
    Spectrum {
        #[arg(long)]
        input: PathBuf,
    },
    /// Distance to the simplex with m vertices and edge length lambda.
    Ghdist {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        /// Also report dgh = two_dgh / 2.
        #[arg(long)]
        halve: bool,
        /// Include the optimal partition or correspondence.
        #[arg(long)]
        witness: bool,
    },
    /// Exact profile t ↦ 2·d_GH(tΔ_m, X) on (0, T].
    Profile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        /// Domain end; defaults to 2·(diam X + σ_1).
        #[arg(long = "T", allow_negative_numbers = true)]
        domain_end: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare exhaustive search, partitions and closed forms on a t-grid.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Evenly spaced points of (0, 2·diam X].
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Largest simplex size to check; defaults to n + 1.
        #[arg(long)]
        max_m: Option<usize>,
        /// Extra uniformly random t values.
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Pairs of non-isometric four-point spaces with equal profiles.
    Family {
        #[arg(long, default_value_t = 10.0)]
        a: f64,
        #[arg(long, default_value_t = 11.0)]
        b: f64,
        #[arg(long, default_value_t = 12.0)]
        c: f64,
        #[arg(long, default_value_t = 13.0)]
        d: f64,
        #[arg(long, default_value_t = 15.0)]
        e: f64,
        /// Values of |x3x4|, each strictly between d and e.
        #[arg(long, value_delimiter = ',', default_values_t = vec![14.0])]
        f: Vec<f64>,
        /// Draw a..e at random (from --seed) with five evenly spaced f values.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "T", allow_negative_numbers = true)]
        domain_end: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GHSIMPLEX_LOG", "warn")).init();
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Validate { input } => commands::validate(&mut out, &input),
        Command::Spectrum { input } => commands::spectrum(&mut out, &input),
        Command::Ghdist {
            input,
            m,
            lambda,
            halve,
            witness,
        } => commands::ghdist(&mut out, &input, m, lambda, halve, witness),
        Command::Profile {
            input,
            m,
            domain_end,
            format,
        } => commands::profile(&mut out, &input, m, domain_end, format),
        Command::Verify {
            input,
            grid,
            max_m,
            samples,
            seed,
        } => verify::run(&mut out, &input, grid, max_m, samples, seed),
        Command::Family {
            a,
            b,
            c,
            d,
            e,
            f,
            random,
            seed,
            domain_end,
            format,
        } => {
            let params = if random {
                commands::random_family(seed)
            } else {
                commands::FamilyParams { a, b, c, d, e, f }
            };
            commands::family(&mut out, &params, domain_end, format)
        }
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
