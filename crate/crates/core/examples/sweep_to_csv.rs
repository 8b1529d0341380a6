//! Drives the command-line layer from code: builds the data behind a
//! figure preset and writes it as CSV to standard output.

use clap::Parser;
use secrecy_geom::cli::{table, Cli};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cli = Cli::try_parse_from(["secrecy-geom", "--figure", "7b", "--points", "6"])?;
    let t = table(cli.command.as_ref(), &cli.options)?;
    t.write_csv(std::io::stdout().lock())?;
    Ok(())
}
