use std::process::ExitCode;

use clap::Parser;
use ringdec_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::to_string(&e.to_json()).expect("error JSON serializes")
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
