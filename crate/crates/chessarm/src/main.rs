use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(chessarm::cli::run(std::env::args()) as u8)
}
