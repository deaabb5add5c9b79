use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use psmetro_cli::config::CommonArgs;
use psmetro_cli::error::CliError;
use psmetro_cli::output::{emit, render};
use psmetro_cli::point::{parse_quantities, run_point, Quantity};
use psmetro_cli::sweep::{Axis, SweepSpec};
use psmetro_cli::validate::{self, Fixture, Level};

/// Phase sensitivity, quantum Fisher information and photon numbers for the
/// photon-subtracted OPA and beam-splitter interferometer.
#[derive(Debug, Parser)]
#[command(name = "psmetro", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Homodyne phase sensitivity
    Sensitivity(PointArgs),
    /// Ideal quantum Fisher information and its Cramér-Rao bound
    Qfi(PointArgs),
    /// Quantum Fisher information under photon loss
    QfiLossy(PointArgs),
    /// Mean photon number inside the interferometer with SQL and HL
    Nphoton(PointArgs),
    /// Evaluate quantities over a one- or two-axis grid
    Sweep(SweepArgs),
    /// Compare the analytic modules with the Fock-space oracle
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct PointArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated quantities (default depends on the subcommand)
    #[arg(long)]
    quantities: Option<String>,
    /// Also evaluate the first quantity by brute-force Fock-space evolution
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// name:start:stop:count, given once or twice
    #[arg(long)]
    axis: Vec<String>,
    /// Comma-separated quantities [default: delta_phi,F,qcrb]
    #[arg(long)]
    quantities: Option<String>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long, value_enum, default_value = "quick")]
    level: Level,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, hide = true)]
    fixture: Option<Fixture>,
}

fn point(args: PointArgs, default: &[Quantity]) -> Result<ExitCode, CliError> {
    let mut common = args.common;
    if let Some(q) = args.quantities {
        common.quantities = Some(vec![q]);
    }
    let settings = common.resolve()?;
    let quantities = match &settings.quantities {
        Some(list) => parse_quantities(list)?,
        None => default.to_vec(),
    };
    let oracle = args.oracle.then_some(settings.cutoff);
    let row = run_point(&settings.params, &quantities, oracle)?;
    for note in &row.notes {
        eprintln!("warning: {note}");
    }
    emit(&render(&[row], settings.format)?, settings.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: SweepArgs) -> Result<ExitCode, CliError> {
    let mut common = args.common;
    if !args.axis.is_empty() {
        common.axis = Some(args.axis);
    }
    if let Some(q) = args.quantities {
        common.quantities = Some(vec![q]);
    }
    let settings = common.resolve()?;
    let axes = settings.axis.iter().map(|a| Axis::parse(a)).collect::<Result<Vec<_>, _>>()?;
    let quantities = match &settings.quantities {
        Some(list) => parse_quantities(list)?,
        None => vec![Quantity::DeltaPhi, Quantity::F, Quantity::Qcrb],
    };
    let spec = SweepSpec::new(axes, settings.params, &settings.explicit, quantities)?;
    let rows = spec.run()?;
    for (i, row) in rows.iter().enumerate() {
        for note in &row.notes {
            eprintln!("warning: row {i}: {note}");
        }
    }
    emit(&render(&rows, settings.format)?, settings.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn validate(args: ValidateArgs) -> Result<ExitCode, CliError> {
    let report = validate::run(args.level, args.fixture);
    let mut bytes = serde_json::to_vec_pretty(&report).map_err(|e| CliError::Io(e.to_string()))?;
    bytes.push(b'\n');
    emit(&bytes, args.output.as_deref())?;
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAILED {}: {}", c.name, c.detail);
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Sensitivity(a) => point(a, &[Quantity::DeltaPhi]),
        Command::Qfi(a) => point(a, &[Quantity::F, Quantity::Qcrb]),
        Command::QfiLossy(a) => point(a, &[Quantity::FLossy, Quantity::QcrbLossy]),
        Command::Nphoton(a) => point(a, &[Quantity::NTotal, Quantity::Sql, Quantity::Hl]),
        Command::Sweep(a) => sweep(a),
        Command::Validate(a) => validate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
