use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use passages::cli;

fn main() -> ExitCode {
    let color = match std::env::var("PASSAGE_COLOR").as_deref() {
        Ok("never") => false,
        Ok("auto") | Err(_) => std::io::stderr().is_terminal(),
        Ok(other) => {
            eprintln!("error: PASSAGE_COLOR must be `never` or `auto`, got `{other}`");
            return ExitCode::from(2);
        }
    };
    let outcome = cli::run(std::env::args_os(), &mut std::io::stdin().lock(), color);
    // a closed pipe on stdout is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
