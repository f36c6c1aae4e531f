//! Library side of the `polyphase` command-line tool: file formats and the
//! command implementations, kept separate from argument parsing so they can
//! be tested directly.

pub mod commands;
pub mod error;
pub mod files;

pub use commands::{
    cmd_adjust, cmd_pattern, cmd_verify, pattern_csv, run_adjustment, verify_result, Check,
    GridSpec,
};
pub use error::CliError;
pub use files::{Excitation, InputFile, ResultFile, ScenarioFile};
