use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(koszul::cli::run(std::env::args_os()))
}
