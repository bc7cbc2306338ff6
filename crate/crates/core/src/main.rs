use std::process::ExitCode;

fn main() -> ExitCode {
    toric_pick::cli::main()
}
