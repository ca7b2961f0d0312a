use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use kmm_cli::{render, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli, &mut io::stdin().lock());
    let mut stdout = io::stdout().lock();
    match result {
        Ok(v) => {
            let _ = writeln!(stdout, "{}", render(&cli, &v));
            ExitCode::SUCCESS
        }
        Err(e @ CliError::Disagreement(_)) => {
            let _ = writeln!(stdout, "{}", render(&cli, &e.to_json()));
            ExitCode::from(e.exit_code())
        }
        Err(e) => {
            eprintln!("{}", render(&cli, &e.to_json()));
            ExitCode::from(e.exit_code())
        }
    }
}
