//! `stark`: coefficient tables, fitted models, field sweeps, WKB and
//! dispersion checks, and the datasets behind the three figures.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use stark_core::resum::DEFAULT_L;

use commands::{CliError, GridSpec};
use output::{Format, Table};

#[derive(Debug, Parser)]
#[command(name = "stark", version, about = "Stark resonances of hydrogen in arbitrary dimension")]
struct Cli {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Perturbation coefficients E_0..E_2N.
    Coeffs {
        #[arg(long, required_unless_present = "symbolic")]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Polynomials in the dimension instead of values.
        #[arg(long)]
        symbolic: bool,
    },
    /// Fitted continuation parameters h1..h4.
    Fit {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_L)]
        l: f64,
    },
    /// Shift and decay rate over a field grid.
    Sweep {
        #[arg(long)]
        alpha: f64,
        /// Grid as START:STOP:COUNT.
        #[arg(long)]
        fields: GridSpec,
        /// Logarithmic spacing.
        #[arg(long)]
        log: bool,
        #[arg(long, default_value_t = DEFAULT_L)]
        l: f64,
    },
    /// Turning points, WKB transmittance and calibrated Landau rate.
    Wkb {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        fields: GridSpec,
        #[arg(long)]
        log: bool,
        #[arg(long, default_value_t = DEFAULT_L)]
        l: f64,
    },
    /// Dispersion-relation check of E_4..E_8.
    Dispersion {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_L)]
        l: f64,
    },
    /// Full dataset for figure 1, 2 or 3.
    Reproduce {
        #[arg(long)]
        figure: u8,
        #[arg(long, default_value_t = DEFAULT_L)]
        l: f64,
    },
}

fn grid_echo(g: &GridSpec, log: bool) -> Value {
    json!({ "start": g.start, "stop": g.stop, "count": g.count, "spacing": if log { "log" } else { "linear" } })
}

fn execute(command: &Command) -> Result<(Value, Table), CliError> {
    Ok(match command {
        Command::Coeffs { alpha, order, symbolic } => (
            json!({ "command": "coeffs", "alpha": alpha, "order": order, "symbolic": symbolic }),
            commands::coeffs(*alpha, *order, *symbolic)?,
        ),
        Command::Fit { alpha, l } => (json!({ "command": "fit", "alpha": alpha, "l": l }), commands::fit(*alpha, *l)?),
        Command::Sweep { alpha, fields, log, l } => (
            json!({ "command": "sweep", "alpha": alpha, "l": l, "fields": grid_echo(fields, *log) }),
            commands::sweep_table(*alpha, *l, &fields.points(*log)?)?,
        ),
        Command::Wkb { alpha, fields, log, l } => (
            json!({ "command": "wkb", "alpha": alpha, "l": l, "fields": grid_echo(fields, *log) }),
            commands::wkb(*alpha, *l, &fields.points(*log)?)?,
        ),
        Command::Dispersion { alpha, l } => {
            (json!({ "command": "dispersion", "alpha": alpha, "l": l }), commands::dispersion(*alpha, *l)?)
        }
        Command::Reproduce { figure, l } => {
            (json!({ "command": "reproduce", "figure": figure, "l": l }), commands::reproduce(*figure, *l)?)
        }
    })
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (mut config, table) = execute(&cli.command)?;
    config["format"] = json!(match cli.format {
        Format::Csv => "csv",
        Format::Json => "json",
    });
    output::normalize(&mut config);
    let mut meta = Map::new();
    meta.insert("tool".into(), json!("stark"));
    meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    meta.insert("config".into(), config);
    meta.extend(table.meta.clone());
    let table = Table { meta, ..table };
    let bytes = table.render(cli.format)?;
    match &cli.output {
        Some(path) => output::write_atomic(path, &bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stark: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
