//! Command-line driver for `dirac-jmatrix`: argument parsing, parameter
//! files, evaluation grids and deterministic CSV / JSON output.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod grid;
pub mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

pub use cli::{Cli, Command, RunConfig};
pub use error::CliError;
pub use output::{Format, Table};

/// Parses, runs and writes. Data goes to `--output` (with a metadata
/// sidecar next to it) or to `stdout`.
pub fn execute(cli: &Cli, argv: &[String], stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = RunConfig::from_cli(cli)?;
    let table = commands::run(&config)?;
    match &cli.io.output {
        Some(path) => {
            std::fs::write(path, table.render(config.format))?;
            std::fs::write(sidecar_path(path), metadata(&config, &table, argv))?;
        }
        None => table.write_to(config.format, stdout)?,
    }
    Ok(())
}

/// `out.csv` → `out.csv.meta.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn metadata(config: &RunConfig, table: &Table, argv: &[String]) -> String {
    use output::json_string;
    let created = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let args: Vec<String> = argv.iter().map(|a| json_string(a)).collect();
    let p = config.params;
    format!(
        "{{\"tool\":\"dirac-jmatrix\",\"version\":{},\"table\":{},\"rows\":{},\"argv\":[{}],\
         \"params\":{{\"z\":{:?},\"kappa\":{},\"compton\":{:?},\"omega\":{:?}}},\
         \"threads\":{},\"created_unix\":{}}}\n",
        json_string(env!("CARGO_PKG_VERSION")),
        json_string(table.name),
        table.rows.len(),
        args.join(","),
        p.z,
        p.kappa,
        p.compton,
        p.omega,
        rayon::current_num_threads(),
        created
    )
}
