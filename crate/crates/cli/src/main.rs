use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polyphase::AdjustOptions;
use polyphase_cli::{cmd_adjust, cmd_pattern, cmd_verify, CliError, GridSpec};

/// Phase-only adjustment of an array's response level at one direction.
///
/// Exit codes: 0 success, 1 input error, 2 no phase-only solution,
/// 3 verification failed.
#[derive(Parser)]
#[command(name = "polyphase", version)]
struct Cli {
    /// Number of psi candidates searched when the scenario gives no psiC_rad.
    #[arg(long, global = true, env = "POLYPHASE_PSI_GRID", default_value_t = 64)]
    psi_grid: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Adjust the weights of a scenario and write a result file.
    Adjust {
        /// Scenario JSON file.
        scenario: PathBuf,
        /// Result JSON file to write.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Sample the beampattern of a scenario (w_pre) or result (w_new) as CSV.
    Pattern {
        /// Scenario or result JSON file.
        file: PathBuf,
        /// First grid angle in degrees.
        #[arg(long, default_value_t = -90.0, allow_hyphen_values = true)]
        from: f64,
        /// Last grid angle in degrees (inclusive).
        #[arg(long, default_value_t = 90.0, allow_hyphen_values = true)]
        to: f64,
        /// Grid step in degrees; must be positive.
        #[arg(long, default_value_t = 0.05, allow_hyphen_values = true)]
        step: f64,
        /// CSV file to write.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Re-check magnitudes, residual and level of a result; a scenario is
    /// adjusted first.
    Verify {
        /// Scenario or result JSON file.
        file: PathBuf,
    },
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.psi_grid == 0 {
        return fail(CliError::Input("psi grid size must be at least 1".into()));
    }
    let opts = AdjustOptions {
        psi_candidates: cli.psi_grid,
        ..AdjustOptions::default()
    };
    match cli.command {
        Command::Adjust { scenario, output } => match cmd_adjust(&scenario, &output, &opts) {
            Ok(r) => {
                let level = r
                    .achieved_level_db
                    .map_or_else(|| "exact null".to_string(), |db| format!("{db:.9} dB"));
                println!(
                    "achieved {level}, psi {:.6} rad, residual {:.3e}, distortion {:.4} dB",
                    r.psi_used, r.residual, r.distortion_db
                );
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Pattern {
            file,
            from,
            to,
            step,
            output,
        } => {
            let grid = GridSpec {
                from_deg: from,
                to_deg: to,
                step_deg: step,
            };
            match cmd_pattern(&file, grid, &output) {
                Ok(rows) => {
                    println!("wrote {rows} rows to {}", output.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Verify { file } => match cmd_verify(&file, &opts) {
            Ok(checks) => {
                for c in &checks {
                    println!("{c}");
                }
                if checks.iter().all(|c| c.passed) {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(3)
                }
            }
            Err(e) => fail(e),
        },
    }
}
