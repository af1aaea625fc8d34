use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use scattered::cli::Cli;
use scattered::commands::{resolve_budget, run};
use scattered::report::emit;
use scattered::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("scattered: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    let env = std::env::var("SCATTER_BUDGET").ok();
    let budget = resolve_budget(cli.run.budget, env.as_deref())?;
    let start = Instant::now();
    let mut report = run(&cli.command, &cli.run, budget)?;
    if cli.run.timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    let text = emit(&report, cli.run.format);
    match &cli.run.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    let failed = report.failed_checks();
    if failed.is_empty() {
        Ok(0)
    } else {
        for name in failed {
            eprintln!("scattered: check failed: {name}");
        }
        Ok(1)
    }
}
