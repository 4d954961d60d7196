use lee_core::oracle::{convergence_study, ConvergenceRow};
use lee_core::{bare_from_renormalized, full_report, BareCoupling, CouplingInput, RenormReport};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliError;

/// One output row. Sweep rows that fail keep their value and carry the error.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub sweep_value: Option<f64>,
    pub report: Option<RenormReport<f64>>,
    pub error: Option<String>,
}

/// Single evaluation of the configured input. Ghost inputs yield a report.
pub fn run_point(config: &RunConfig) -> Result<RenormReport<f64>, CliError> {
    Ok(full_report(&config.model, &config.input, &config.settings)?)
}

/// One row per sweep value, ordered by value. Points are independent and
/// evaluated in parallel; failures land in the `error` column.
pub fn run_sweep(config: &RunConfig) -> Vec<Row> {
    let Some(sweep) = config.sweep else {
        return Vec::new();
    };
    sweep
        .values()
        .into_par_iter()
        .map(|value| match full_report(&config.model, &config.input_at(value), &config.settings) {
            Ok(report) => Row { sweep_value: Some(value), report: Some(report), error: None },
            Err(e) => Row { sweep_value: Some(value), report: None, error: Some(e.to_string()) },
        })
        .collect()
}

/// Sweep table if a sweep is configured, otherwise the single point.
pub fn run(config: &RunConfig) -> Result<Vec<Row>, CliError> {
    if config.sweep.is_some() {
        return Ok(run_sweep(config));
    }
    let report = run_point(config)?;
    Ok(vec![Row { sweep_value: None, report: Some(report), error: None }])
}

/// Mode counts `n, n/4, n/16, n/64` (ascending, at least 1).
pub fn oracle_ladder(n: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = (0..4).map(|j| n >> (2 * j)).filter(|&m| m >= 1).collect();
    ns.dedup();
    ns.reverse();
    ns
}

/// Arrowhead convergence study at the configured point. A renormalized
/// input is first mapped to its bare couplings.
pub fn validate_oracle(config: &RunConfig) -> Result<Vec<ConvergenceRow<f64>>, CliError> {
    let bare: BareCoupling<f64> = match config.input {
        CouplingInput::Bare(b) => b,
        CouplingInput::Renormalized(r) => bare_from_renormalized(&config.model, &r, &config.settings)?,
    };
    Ok(convergence_study(
        &config.model,
        &bare,
        &oracle_ladder(config.oracle.n),
        config.oracle.k_max,
        config.oracle.scheme,
        &config.settings,
    )?)
}
