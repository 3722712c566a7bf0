use std::process::ExitCode;

use clap::Parser;

use blf::cli::{run, Args, EXIT_INPUT_ERROR};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome = run(&args);
    print!("{}", outcome.json);
    if outcome.exit_code == EXIT_INPUT_ERROR {
        eprintln!(
            "blf {}: input or resource error, see the report's `error` field",
            args.command.name()
        );
    }
    ExitCode::from(outcome.exit_code as u8)
}
