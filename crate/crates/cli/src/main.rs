use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = sod_cli::run_command(std::env::args_os());
    let text = result.rendered();
    let written = if result.exit_code() == 2 && result.payload.get("error").is_some() {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(result.exit_code())
}
