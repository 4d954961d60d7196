use thiserror::Error;

use crate::renorm::RenormReport;
use crate::scalar::Real;

#[derive(Debug, Clone, Error)]
pub enum Error<T: Real = f64> {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// `m - m_N >= mu`: the energy denominator `m - m_N - omega` can vanish.
    #[error("stability window violated: m - m_N = {gap} is not below mu = {mu}")]
    StabilityViolation { gap: f64, mu: f64 },

    #[error("{context} did not converge: {detail}")]
    NoConvergence { context: &'static str, detail: String },

    #[error("degenerate model: the form factor gives a vanishing I2 integral")]
    DegenerateModel,

    #[error("no bound state below the N+theta threshold {threshold}")]
    NoBoundState { threshold: f64 },

    /// No real bare coupling reproduces the requested renormalized one.
    #[error("ghost regime: x = {} >= 1, Z_V = 1 - x = {} has no real bare coupling", .0.x, .0.z_standard)]
    GhostRegime(Box<RenormReport<T>>),

    #[error("secular function evaluated on the pole at {pole}")]
    PoleHit { lambda: f64, pole: f64 },

    #[error("dense cross-check limited to dimension {max}, got {n}")]
    MatrixTooLarge { n: usize, max: usize },
}

pub type Result<T, S = f64> = std::result::Result<T, Error<S>>;
