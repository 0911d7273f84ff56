use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cylq::cli::run())
}
