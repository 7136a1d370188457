use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let report = logiprob_cli::run(std::env::args_os(), &mut std::io::stdin());
    let text = report.payload.as_bytes();
    let written = if report.is_ok() {
        std::io::stdout().write_all(text)
    } else {
        std::io::stderr().write_all(text)
    };
    if written.is_err() || !report.is_ok() {
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
