use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rodfiter::cli::{cmd_bench, cmd_reconstruct, cmd_simulate, RunMode, RunSpec};

#[derive(Parser)]
#[command(
    name = "rodfiter",
    about = "Attitude reconstruction from gyro increments via truncated Chebyshev-Picard iteration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Coning half-angle in degrees
    #[arg(long, default_value_t = 10.0)]
    alpha_deg: f64,
    /// Coning frequency in multiples of pi rad/s
    #[arg(long, default_value_t = 0.74)]
    omega_pi: f64,
    /// Gyro sampling rate in Hz
    #[arg(long, default_value_t = 100.0)]
    rate_hz: f64,
    /// Simulated duration in seconds
    #[arg(long, default_value_t = 2.0)]
    duration_s: f64,
    /// Samples per update interval (N)
    #[arg(long, default_value_t = 8)]
    n_samples: usize,
    /// Chebyshev fit degree (n, at most N-1)
    #[arg(long, default_value_t = 7)]
    fit_degree: usize,
    /// Truncation degree n_T (at least n+1)
    #[arg(long, default_value_t = 8)]
    truncate: usize,
    /// Picard iteration count
    #[arg(long, default_value_t = 7)]
    iters: usize,
    /// Output samples per gyro sample period
    #[arg(long, default_value_t = 10)]
    upsample: usize,
    /// Constant gyro bias, rad/s, as x,y,z
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [0.0, 0.0, 0.0])]
    bias: Vec<f64>,
}

impl SpecArgs {
    fn to_spec(&self) -> RunSpec {
        RunSpec {
            alpha_deg: self.alpha_deg,
            omega_pi: self.omega_pi,
            rate_hz: self.rate_hz,
            duration_s: self.duration_s,
            n_samples: self.n_samples,
            fit_degree: self.fit_degree,
            truncate_degree: self.truncate,
            iterations: self.iters,
            upsample: self.upsample,
            bias: nalgebra::Vector3::new(self.bias[0], self.bias[1], self.bias[2]),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a CSV of simulated coning gyro increments
    Simulate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Reconstruct attitude from an increment CSV and compare to truth
    Reconstruct {
        #[command(flatten)]
        spec: SpecArgs,
        /// Input increment CSV (from `simulate`)
        #[arg(long = "in")]
        input: PathBuf,
        /// exact | truncated | baseline
        #[arg(long, default_value = "truncated")]
        mode: RunMode,
        /// Output error CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the exact, truncated, and baseline algorithms
    Bench {
        #[command(flatten)]
        spec: SpecArgs,
        /// Repetitions to average over
        #[arg(long, default_value_t = 50)]
        runs: usize,
        /// Output timing CSV path
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate { spec, out } => cmd_simulate(&spec.to_spec(), out).map(|()| String::new()),
        Command::Reconstruct { spec, input, mode, out } => {
            cmd_reconstruct(&spec.to_spec(), input, *mode, out)
        }
        Command::Bench { spec, runs, out } => cmd_bench(&spec.to_spec(), *runs, out),
    };
    match result {
        Ok(summary) => {
            if !summary.is_empty() {
                print!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
