use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use polyexp_cli::commands::{run, Cli};
use polyexp_cli::{apply_environment, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = apply_environment()
        .and_then(|()| {
            if let Some(n) = cli.jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .map_err(|e| CliError::Input(format!("--jobs: {e}")))?;
            }
            Ok(())
        })
        .and_then(|()| run(&cli.command));
    match result {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(report.render(cli.format).as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
