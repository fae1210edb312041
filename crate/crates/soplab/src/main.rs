use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(soplab::cli::run())
}
