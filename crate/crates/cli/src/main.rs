use clap::Parser;
use gsqueeze_cli::args::Cli;
use gsqueeze_cli::commands;
use gsqueeze_cli::error::CliError;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            let e = CliError::Threads(e.to_string());
            eprintln!("error: {e}");
            return e.to_exit();
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.to_exit()
        }
    }
}
