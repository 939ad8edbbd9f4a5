use std::process::ExitCode;

fn main() -> ExitCode {
    polyconv::cli::main_with_args(std::env::args_os())
}
