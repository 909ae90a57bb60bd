use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wavefront_cli::commands::{cmd_fit, cmd_route, cmd_sweep, SweepArgs};

/// Wavefront routing sweeps and deviation-angle fits.
#[derive(Parser)]
#[command(name = "wavefront", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the (d_r, M) sweep and write CSV tables plus a manifest.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads, 0 for automatic.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Route one wavefront given as JSON `{"doas": [[x, y, z], ...]}`.
    Route {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        /// Output JSON file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit Gamma and Rayleigh models to the phi_deg column of a CSV file.
    Fit {
        #[arg(long)]
        data: PathBuf,
        /// Output JSON file.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep {
            config,
            out,
            seed,
            threads,
        } => cmd_sweep(&SweepArgs {
            config,
            out,
            seed,
            threads,
        })
        .map(|_| ()),
        Command::Route { config, spec, out } => cmd_route(&config, &spec, &out).map(|_| ()),
        Command::Fit { data, out } => cmd_fit(&data, &out).map(|_| ()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
