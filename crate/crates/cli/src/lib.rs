//! Command-line front end for `wentropy-core`: matrix file I/O, the sweep
//! engine behind the qutrit figure grids, and the `wentropy` commands.

pub mod app;
pub mod error;
pub mod format;
pub mod matrix_file;
pub mod sweep;

pub use app::{execute, main_with_args, qutrit_report, Cli, QutritReport};
pub use error::CliError;
