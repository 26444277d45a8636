pub mod figures;
pub mod moments;
pub mod momentum;
pub mod selftest;
pub mod state;
pub mod verify;

use crate::args::{Cli, Command, Format, OutputArgs};
use crate::error::{CliError, CliResult};
use crate::table::Table;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub fn write_table<W: Write>(table: &Table, out: W, format: Format) -> io::Result<()> {
    match format {
        Format::Csv => table.write_csv(out),
        Format::Json => table.write_json(out),
    }
}

pub fn write_table_file(table: &Table, path: &Path, format: Format) -> CliResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_table(table, &mut w, format)?;
    w.flush()?;
    Ok(())
}

pub fn emit(table: &Table, out: &OutputArgs) -> CliResult<()> {
    if out.output.as_os_str() == "-" {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        write_table(table, &mut lock, out.format)?;
        lock.flush()?;
        Ok(())
    } else {
        write_table_file(table, &out.output, out.format)
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::State(a) => emit(&state::state_table(a)?, &a.out),
        Command::Verify(a) => {
            let t = verify::verify_table(a)?;
            emit(&t, &a.out)?;
            if t.meta_value("all_passed") != Some("true") {
                eprintln!("note: some verification checks did not pass; see the `passed` column");
            }
            Ok(())
        }
        Command::Moments(a) => emit(&moments::moments_table(a)?, &a.out),
        Command::Momentum(a) => emit(&momentum::momentum_table(a)?, &a.out),
        Command::Figures(a) => {
            for path in figures::write_figures(a)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Selftest(a) => {
            let t = selftest::selftest_table()?;
            emit(&t, &a.out)?;
            if t.meta_value("all_passed") != Some("true") {
                return Err(CliError::ChecksFailed("selftest failed".into()));
            }
            Ok(())
        }
    }
}
