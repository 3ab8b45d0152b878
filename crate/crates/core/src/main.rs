use std::process::ExitCode;

fn main() -> ExitCode {
    floquet_lab::cli::main()
}
