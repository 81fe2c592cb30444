use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use ftpaths_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli);
    let elapsed = start.elapsed();
    let code = match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    eprintln!("elapsed_ms={:.3}", elapsed.as_secs_f64() * 1e3);
    ExitCode::from(code as u8)
}
