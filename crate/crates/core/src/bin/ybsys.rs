use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ybsys::cli::run(std::env::args_os()) as u8)
}
