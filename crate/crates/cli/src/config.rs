//! Run configuration: a TOML document with `model`, `input`, and optional
//! `sweep`, `quad`, `oracle` and `output` tables.
//!
//! ```toml
//! [model]
//! m_N = 1.0
//! mu = 1.0
//! form_factor = { kind = "sharp", lambda = 10.0 }
//!
//! [input]
//! mode = "bare"        # or "renormalized" with m_V and g
//! m_V0 = 1.8
//! g0 = 5.0
//!
//! [sweep]              # optional
//! parameter = "g0"     # "g0" in bare mode, "g" in renormalized mode
//! start = 0.0
//! stop = 10.0
//! steps = 21
//!
//! [output]
//! path = "run.csv"
//! format = "csv"       # or "json"
//! ```

use std::path::PathBuf;

use lee_core::oracle::GridScheme;
use lee_core::{BareCoupling, CouplingInput, FormFactor, ModelParams, QuadSpec, RenCoupling, RenormSettings};
use serde::Deserialize;

use crate::error::ConfigError;

pub const DEFAULT_ORACLE_MODES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    /// Renormalized coupling `g`.
    G,
    /// Bare coupling `g0`.
    G0,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    /// Evenly spaced values, both ends included.
    pub fn values(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(
                |i| {
                    if i == last {
                        self.stop
                    } else {
                        self.start + (self.stop - self.start) * (i as f64 / last as f64)
                    }
                },
            )
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSpec {
    pub n: usize,
    pub k_max: Option<f64>,
    pub scheme: GridScheme,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelParams<f64>,
    /// With a sweep, the swept coupling is overwritten per row.
    pub input: CouplingInput<f64>,
    pub sweep: Option<SweepSpec>,
    pub settings: RenormSettings<f64>,
    pub oracle: OracleSpec,
    pub output: OutputSpec,
}

impl RunConfig {
    /// Input with the swept coupling set to `value`.
    pub fn input_at(&self, value: f64) -> CouplingInput<f64> {
        match self.input {
            CouplingInput::Bare(b) => CouplingInput::Bare(BareCoupling::new(b.m_v0, value)),
            CouplingInput::Renormalized(r) => CouplingInput::Renormalized(RenCoupling::new(r.m_v, value)),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    model: RawModel,
    input: Option<RawInput>,
    sweep: Option<RawSweep>,
    #[serde(default)]
    quad: RawQuad,
    #[serde(default)]
    oracle: RawOracle,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(rename = "m_N")]
    m_n: Option<f64>,
    mu: Option<f64>,
    #[serde(default)]
    form_factor: RawFormFactor,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFormFactor {
    kind: Option<String>,
    lambda: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    mode: Option<String>,
    #[serde(rename = "m_V0")]
    m_v0: Option<f64>,
    g0: Option<f64>,
    #[serde(rename = "m_V")]
    m_v: Option<f64>,
    g: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: Option<String>,
    start: Option<f64>,
    stop: Option<f64>,
    steps: Option<i64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuad {
    panels: Option<i64>,
    nodes_per_panel: Option<i64>,
    k_max: Option<f64>,
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
    max_panels: Option<i64>,
    root_tol: Option<f64>,
    regime_tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOracle {
    n: Option<i64>,
    k_max: Option<f64>,
    scheme: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: Option<String>,
    format: Option<String>,
}

fn finite(path: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError::new(path, format!("must be finite, got {v}")))
    }
}

fn positive(path: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::new(path, format!("must be finite and > 0, got {v}")))
    }
}

fn nonnegative(path: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::new(path, format!("must be finite and >= 0, got {v}")))
    }
}

fn count(path: &str, v: i64, min: i64) -> Result<usize, ConfigError> {
    if v >= min {
        Ok(v as usize)
    } else {
        Err(ConfigError::new(path, format!("must be >= {min}, got {v}")))
    }
}

fn required(path: &str, v: Option<f64>) -> Result<f64, ConfigError> {
    v.ok_or_else(|| ConfigError::new(path, "missing"))
}

/// Parses and validates a configuration document, applying defaults:
/// `m_N = 1`, `mu = 1`, sharp cutoff `lambda = 10`, default quadrature,
/// 1024 Gauss–Legendre oracle modes, CSV output to `lee_output.csv`.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::new("<document>", e.message().to_string()))?;

    let m_n = finite("model.m_N", raw.model.m_n.unwrap_or(1.0))?;
    let mu = positive("model.mu", raw.model.mu.unwrap_or(1.0))?;
    let lambda = positive("model.form_factor.lambda", raw.model.form_factor.lambda.unwrap_or(10.0))?;
    let kind = raw.model.form_factor.kind.as_deref().unwrap_or("sharp");
    let form_factor = match kind.to_ascii_lowercase().as_str() {
        "sharp" => FormFactor::Sharp { cutoff: lambda },
        "exponential" | "exp" => FormFactor::Exponential { cutoff: lambda },
        "dipole" => FormFactor::Dipole { cutoff: lambda },
        other => {
            return Err(ConfigError::new(
                "model.form_factor.kind",
                format!("unknown form factor `{other}` (expected sharp, exponential or dipole)"),
            ))
        }
    };
    let model = ModelParams::new(m_n, mu, form_factor).map_err(|e| match e {
        lee_core::Error::InvalidParameter { field: "lambda", reason } => {
            ConfigError::new("model.form_factor.lambda", reason)
        }
        other => ConfigError::new("model", other.to_string()),
    })?;

    let sweep = match raw.sweep {
        None => None,
        Some(s) => {
            let parameter = match s.parameter.as_deref() {
                Some("g") => SweepParameter::G,
                Some("g0") => SweepParameter::G0,
                Some(other) => {
                    return Err(ConfigError::new("sweep.parameter", format!("expected \"g\" or \"g0\", got `{other}`")))
                }
                None => return Err(ConfigError::new("sweep.parameter", "missing")),
            };
            let steps = count("sweep.steps", s.steps.ok_or_else(|| ConfigError::new("sweep.steps", "missing"))?, 2)?;
            let start = nonnegative("sweep.start", required("sweep.start", s.start)?)?;
            let stop = nonnegative("sweep.stop", required("sweep.stop", s.stop)?)?;
            if !(start < stop) {
                return Err(ConfigError::new("sweep.stop", format!("must exceed sweep.start ({start}), got {stop}")));
            }
            Some(SweepSpec { parameter, start, stop, steps })
        }
    };

    let input_raw = raw.input.ok_or_else(|| ConfigError::new("input", "missing table"))?;
    let swept = |p: SweepParameter| sweep.map(|s| s.parameter) == Some(p);
    let input = match input_raw.mode.as_deref() {
        Some("bare") => {
            if let Some(s) = &sweep {
                if s.parameter != SweepParameter::G0 {
                    return Err(ConfigError::new("sweep.parameter", "bare mode sweeps \"g0\""));
                }
            }
            let m_v0 = finite("input.m_V0", required("input.m_V0", input_raw.m_v0)?)?;
            let g0 = match input_raw.g0 {
                Some(g0) => nonnegative("input.g0", g0)?,
                None if swept(SweepParameter::G0) => 0.0,
                None => return Err(ConfigError::new("input.g0", "missing")),
            };
            CouplingInput::Bare(BareCoupling::new(m_v0, g0))
        }
        Some("renormalized") => {
            if let Some(s) = &sweep {
                if s.parameter != SweepParameter::G {
                    return Err(ConfigError::new("sweep.parameter", "renormalized mode sweeps \"g\""));
                }
            }
            let m_v = finite("input.m_V", required("input.m_V", input_raw.m_v)?)?;
            if !(m_v - m_n < mu) {
                return Err(ConfigError::new(
                    "input.m_V",
                    format!("must lie below the N+theta threshold m_N + mu = {}", m_n + mu),
                ));
            }
            let g = match input_raw.g {
                Some(g) => nonnegative("input.g", g)?,
                None if swept(SweepParameter::G) => 0.0,
                None => return Err(ConfigError::new("input.g", "missing")),
            };
            CouplingInput::Renormalized(RenCoupling::new(m_v, g))
        }
        Some(other) => {
            return Err(ConfigError::new("input.mode", format!("expected \"bare\" or \"renormalized\", got `{other}`")))
        }
        None => return Err(ConfigError::new("input.mode", "missing")),
    };

    let mut settings = RenormSettings::<f64>::default();
    let q = raw.quad;
    let defaults = QuadSpec::<f64>::default();
    settings.quad = QuadSpec {
        panels: q.panels.map(|v| count("quad.panels", v, 1)).transpose()?.unwrap_or(defaults.panels),
        nodes_per_panel: q
            .nodes_per_panel
            .map(|v| count("quad.nodes_per_panel", v, 2))
            .transpose()?
            .unwrap_or(defaults.nodes_per_panel),
        k_max: q.k_max.map(|v| positive("quad.k_max", v)).transpose()?,
        abs_tol: q.abs_tol.map(|v| positive("quad.abs_tol", v)).transpose()?.unwrap_or(defaults.abs_tol),
        rel_tol: q.rel_tol.map(|v| positive("quad.rel_tol", v)).transpose()?.unwrap_or(defaults.rel_tol),
        max_panels: q.max_panels.map(|v| count("quad.max_panels", v, 1)).transpose()?.unwrap_or(defaults.max_panels),
    };
    if settings.quad.max_panels < settings.quad.panels {
        return Err(ConfigError::new("quad.max_panels", "must be >= quad.panels"));
    }
    if let Some(t) = q.root_tol {
        settings.root_tol = positive("quad.root_tol", t)?;
    }
    if let Some(t) = q.regime_tol {
        settings.regime_tol = positive("quad.regime_tol", t)?;
    }

    let oracle = OracleSpec {
        n: raw.oracle.n.map(|v| count("oracle.n", v, 1)).transpose()?.unwrap_or(DEFAULT_ORACLE_MODES),
        k_max: raw.oracle.k_max.map(|v| positive("oracle.k_max", v)).transpose()?,
        scheme: match raw.oracle.scheme.as_deref() {
            None | Some("gauss_legendre") | Some("GaussLegendreK") => GridScheme::GaussLegendreK,
            Some("uniform") | Some("UniformK") => GridScheme::UniformK,
            Some(other) => {
                return Err(ConfigError::new(
                    "oracle.scheme",
                    format!("expected \"gauss_legendre\" or \"uniform\", got `{other}`"),
                ))
            }
        },
    };

    let format = match raw.output.format.as_deref() {
        None => Format::Csv,
        Some(f) => Format::parse(f)
            .ok_or_else(|| ConfigError::new("output.format", format!("expected \"csv\" or \"json\", got `{f}`")))?,
    };
    let path = raw
        .output
        .path
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(format!("lee_output.{}", format.extension())));

    Ok(RunConfig { model, input, sweep, settings, oracle, output: OutputSpec { path, format } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_gets_defaults() {
        let c = parse_config("[input]\nmode = \"bare\"\nm_V0 = 1.8\ng0 = 1.0\n").unwrap();
        assert_eq!(c.model, ModelParams::reference());
        assert_eq!(c.settings, RenormSettings::default());
        assert!(c.sweep.is_none());
        assert_eq!(c.output.format, Format::Csv);
        assert_eq!(c.output.path, PathBuf::from("lee_output.csv"));
        assert_eq!(c.oracle.scheme, GridScheme::GaussLegendreK);
        assert_eq!(c.input, CouplingInput::Bare(BareCoupling::new(1.8, 1.0)));
    }

    #[test]
    fn negative_mu_names_field() {
        let e = parse_config("[model]\nmu = -1.0\n[input]\nmode = \"bare\"\nm_V0 = 1.8\ng0 = 1.0\n").unwrap_err();
        assert_eq!(e.path, "model.mu");
    }

    #[test]
    fn single_step_sweep_rejected() {
        let e = parse_config(
            "[input]\nmode = \"bare\"\nm_V0 = 1.8\n[sweep]\nparameter = \"g0\"\nstart = 0.0\nstop = 1.0\nsteps = 1\n",
        )
        .unwrap_err();
        assert_eq!(e.path, "sweep.steps");
    }

    #[test]
    fn empty_effect_sweep_rejected() {
        let e = parse_config(
            "[input]\nmode = \"bare\"\nm_V0 = 1.8\n[sweep]\nparameter = \"g0\"\nstart = 0.0\nstop = 0.0\nsteps = 5\n",
        )
        .unwrap_err();
        assert_eq!(e.path, "sweep.stop");
    }

    #[test]
    fn mode_field_checks() {
        let e = parse_config("[input]\nmode = \"renormalized\"\nm_V = 1.5\n").unwrap_err();
        assert_eq!(e.path, "input.g");
        let e = parse_config("[input]\nmode = \"renormalized\"\nm_V = 2.5\ng = 1.0\n").unwrap_err();
        assert_eq!(e.path, "input.m_V");
        let e = parse_config("[input]\nmode = \"both\"\n").unwrap_err();
        assert_eq!(e.path, "input.mode");
        let e = parse_config("[model]\nmu = 1.0\n").unwrap_err();
        assert_eq!(e.path, "input");
        let e = parse_config(
            "[input]\nmode = \"bare\"\nm_V0 = 1.8\n[sweep]\nparameter = \"g\"\nstart = 0.0\nstop = 1.0\nsteps = 3\n",
        )
        .unwrap_err();
        assert_eq!(e.path, "sweep.parameter");
    }

    #[test]
    fn full_document() {
        let c = parse_config(
            r#"
            [model]
            m_N = 2.0
            mu = 0.5
            form_factor = { kind = "dipole", lambda = 4.0 }
            [input]
            mode = "renormalized"
            m_V = 2.1
            [sweep]
            parameter = "g"
            start = 0.0
            stop = 3.0
            steps = 4
            [quad]
            panels = 4
            nodes_per_panel = 12
            k_max = 100.0
            rel_tol = 1e-9
            [oracle]
            n = 256
            scheme = "uniform"
            [output]
            path = "out.json"
            format = "json"
            "#,
        )
        .unwrap();
        assert_eq!(c.model.form_factor(), FormFactor::Dipole { cutoff: 4.0 });
        assert_eq!(c.sweep.unwrap().values(), vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(c.settings.quad.nodes_per_panel, 12);
        assert_eq!(c.settings.quad.k_max, Some(100.0));
        assert_eq!(c.oracle.n, 256);
        assert_eq!(c.oracle.scheme, GridScheme::UniformK);
        assert_eq!(c.output.format, Format::Json);
    }

    #[test]
    fn syntax_and_unknown_keys() {
        assert_eq!(parse_config("[input\n").unwrap_err().path, "<document>");
        let e = parse_config("[input]\nmode = \"bare\"\nm_V0 = 1.0\ng0 = 1.0\ncolour = 3\n").unwrap_err();
        assert!(e.reason.contains("colour"), "{e}");
    }

    #[test]
    fn sweep_values_hit_endpoints() {
        let s = SweepSpec { parameter: SweepParameter::G, start: 0.1, stop: 0.7, steps: 7 };
        let v = s.values();
        assert_eq!(v[0], 0.1);
        assert_eq!(v[6], 0.7);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
