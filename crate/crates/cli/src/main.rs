use std::io::{stderr, stdout};
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = wmp_cli::run_command(std::env::args_os(), &mut stdout(), &mut stderr());
    ExitCode::from(code as u8)
}
