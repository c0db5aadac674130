use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(sobspec_cli::run(std::env::args_os()))
}
