mod args;
mod commands;
mod error;
mod output;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use error::{CliError, ErrorBody, ErrorReport};

fn report(e: &CliError) -> i32 {
    let code = e.exit_code();
    let r = ErrorReport {
        tool: output::TOOL,
        version: output::VERSION,
        error: ErrorBody { kind: e.kind(), message: e.to_string(), exit_code: code },
    };
    eprintln!("{}", serde_json::to_string(&r).expect("error report serializes"));
    code
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let msg = e.render().to_string();
            return report(&CliError::Usage(msg.trim().to_string()));
        }
    };
    if cli.global.workers > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.workers).build_global() {
            return report(&CliError::Usage(format!("cannot start {} workers: {e}", cli.global.workers)));
        }
    }
    match commands::dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => report(&e),
    }
}

fn main() {
    std::process::exit(run());
}
