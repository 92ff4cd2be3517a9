use std::process::ExitCode;

use clap::Parser;

use isocount::args::{Cli, Command};
use isocount::commands;
use isocount::failure::exit;
use isocount::report::Status;
use isocount::Failure;

fn run(cli: &Cli, argv: &[String]) -> Result<i32, Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let report = match &cli.command {
        Command::Count(a) => commands::count::run(a, argv)?,
        Command::Table(a) => commands::table::run(a, argv)?,
        Command::Verify(a) => commands::verify::run(a, argv)?,
        Command::Enumerate(a) => {
            let n = commands::enumerate::run(a)?;
            if a.out.is_some() {
                eprintln!("wrote {n} records");
            }
            return Ok(exit::OK);
        }
    };
    Ok(match report.status {
        Status::Ok => exit::OK,
        Status::Mismatch => exit::MISMATCH,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let code = match run(&cli, &argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("isocount: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
