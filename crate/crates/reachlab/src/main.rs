use std::process::ExitCode;

fn main() -> ExitCode {
    reachlab::cli::main()
}
