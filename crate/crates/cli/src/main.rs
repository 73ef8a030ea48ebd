use std::process::ExitCode;

use clap::Parser;
use cosegal_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.json());
            } else {
                print!("{}", report.text());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let kind = if e.code() == 2 { "input" } else { "mathematical" };
                println!("{}", serde_json::json!({ "error": e.to_string(), "kind": kind, "passed": false }));
            } else {
                eprintln!("{e}");
            }
            e.exit_code()
        }
    }
}
