use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use crystrig_cli::{error_record, run, CommandRequest, EXIT_USAGE};

fn main() -> ExitCode {
    let req = match CommandRequest::try_parse() {
        Ok(r) => r,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            eprintln!("{}", error_record(EXIT_USAGE, "usage", msg.trim()));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let out = run(&req);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status)
}
