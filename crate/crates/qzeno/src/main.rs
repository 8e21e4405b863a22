use std::process::ExitCode;

fn main() -> ExitCode {
    qzeno::cli::main_entry()
}
