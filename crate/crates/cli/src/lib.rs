//! Matrix file parsing and formatting, and the `wmp` command dispatcher.

pub mod parse;
mod run;

pub use parse::{parse_entry, parse_matrix_file, EntryError, FileError, FileErrorKind};
pub use run::{run_command, EXIT_FAILED_CHECK, EXIT_INPUT, EXIT_OK, EXIT_SINGULAR};

use wmp_core::RfMatrix;

/// Writes `a` in the matrix file format with canonical entries.
pub fn format_matrix(a: &RfMatrix) -> String {
    let mut out = format!("matrix {} {}\n", a.rows(), a.cols());
    for r in 0..a.rows() {
        let row: Vec<String> = (0..a.cols()).map(|c| a.get(r, c).to_string()).collect();
        out.push_str(&row.join("; "));
        out.push('\n');
    }
    out
}
