//! A machine-readable sweep: optimal threshold and success probability over
//! a q grid, written as CSV to stdout (the same rows as
//! `secretary sweep --variable q`).
//!
//! cargo run --example parameter_sweep > sweep.csv

use clap::Parser;
use secretary_mallows::cli::{sweep_rows, Cli, Command};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cli = Cli::try_parse_from([
        "secretary", "sweep", "--variable", "q", "--n", "500", "--start", "0.5", "--stop", "0.999",
        "--steps", "12",
    ])?;
    let Command::Sweep(args) = cli.command else {
        unreachable!("parsed a sweep");
    };
    let rows = sweep_rows(&args).map_err(|e| format!("{e:?}"))?;

    let mut out = csv::Writer::from_writer(std::io::stdout());
    for row in &rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}
