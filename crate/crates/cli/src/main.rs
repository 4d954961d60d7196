use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lee_cli::{emit, parse_config, run, validate_oracle, CliError, Format, Row};
use lee_core::Regime;

#[derive(Parser)]
#[command(name = "lee", about = "Lee model V-sector renormalization and ghost-regime scans")]
struct Cli {
    /// Run configuration (TOML)
    #[arg(long)]
    config: PathBuf,

    /// Output file, overriding `output.path`
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format, overriding `output.format`
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// Also run the arrowhead convergence study and print its error table
    #[arg(long)]
    validate_oracle: bool,
}

fn summary(rows: &[Row], path: &std::path::Path) -> String {
    if let [row] = rows {
        if row.sweep_value.is_none() {
            if let Some(r) = &row.report {
                return format!(
                    "point: regime={} m_V={:.12} x={:.12} Z_V={:.12} Z_V(regularized)={:.12} -> {}",
                    r.regime,
                    r.m_v,
                    r.x,
                    r.z_standard,
                    r.z_regularized,
                    path.display()
                );
            }
        }
    }
    let count = |regime| rows.iter().filter(|r| r.report.map(|r| r.regime) == Some(regime)).count();
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    format!(
        "sweep: {} rows (Normal {}, Critical {}, Ghost {}, errors {}) -> {}",
        rows.len(),
        count(Regime::Normal),
        count(Regime::Critical),
        count(Regime::Ghost),
        failed,
        path.display()
    )
}

fn main_inner(cli: Cli) -> Result<(), CliError> {
    let text =
        std::fs::read_to_string(&cli.config).map_err(|source| CliError::Io { path: cli.config.clone(), source })?;
    let mut config = parse_config(&text)?;
    if let Some(f) = cli.format.as_deref().and_then(Format::parse) {
        config.output.format = f;
    }
    if let Some(out) = cli.out {
        config.output.path = out;
    }

    let rows = run(&config)?;
    emit(&rows, config.output.format, &config.output.path)?;
    println!("{}", summary(&rows, &config.output.path));

    if cli.validate_oracle {
        let study = validate_oracle(&config)?;
        println!("{:>8} {:>24} {:>24} {:>12} {:>12}", "n", "lambda", "apex_weight", "|dm_V|", "|dZ_V|");
        for r in study {
            println!("{:>8} {:>24.16} {:>24.16} {:>12.3e} {:>12.3e}", r.n, r.lambda, r.z, r.lambda_err, r.z_err);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lee: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
