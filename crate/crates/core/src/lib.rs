//! Exact treatment of the one-V-particle sector of the Lee model.
//!
//! The V particle couples only to N+θ pairs, so its physical state is a
//! bare V dressed with a θ cloud whose amplitude is known in closed form.
//! This crate computes:
//!
//! * the physical mass `m_V` from the bare mass and coupling,
//! * the wavefunction renormalization `Z_V`, from bare parameters
//!   (`1/Z_V = 1 + g0²/(2π)³ I₂`) and from renormalized ones (`Z_V = 1 - x`),
//! * the coupling maps `g² = Z_V g0²` in both directions,
//! * the ghost regime `x > 1` where the standard `Z_V` turns negative, along
//!   with the regularized value `Z_V = 0` obtained by reading `1/(1 - x)` as
//!   the divergent series `1 + x + x² + ⋯`,
//! * an independent finite-mode (arrowhead matrix) diagonalisation of the
//!   same sector, used to validate all of the above.
//!
//! Everything is generic over the scalar type ([`Real`], i.e. `f32` or
//! `f64`); the `*F64` aliases below fix double precision.
//!
//! ```
//! use lee_core::{full_report, BareCoupling, CouplingInput, ModelParamsF64, RenormSettings};
//!
//! let params = ModelParamsF64::reference();
//! let input = CouplingInput::Bare(BareCoupling::new(1.8, 1.0));
//! let report = full_report(&params, &input, &RenormSettings::default()).unwrap();
//! assert!(report.m_v < 1.8 && report.z_standard < 1.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gauss;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod renorm;
mod roots;
pub mod scalar;

pub use error::{Error, Result};
pub use model::{omega, phi_amplitude, vertex_weight, BareCoupling, FormFactor, ModelParams, Regime, RenCoupling};
pub use quad::{integral_i1, integral_i2, norm_integral, radial_integrate, QuadSpec};
pub use renorm::{
    bare_from_renormalized, classify_regime, critical_coupling, divergence_index, full_report, geometric_partial_sum,
    mass_shift, regularized_z, renormalize_coupling, solve_physical_mass, x_value, z_from_bare, z_from_renormalized,
    CouplingInput, PartialSum, RenormReport, RenormSettings,
};
pub use scalar::{two_pi_cubed, Real};

pub type ModelParamsF64 = ModelParams<f64>;
pub type FormFactorF64 = FormFactor<f64>;
pub type BareCouplingF64 = BareCoupling<f64>;
pub type RenCouplingF64 = RenCoupling<f64>;
pub type QuadSpecF64 = QuadSpec<f64>;
pub type RenormSettingsF64 = RenormSettings<f64>;
pub type RenormReportF64 = RenormReport<f64>;
pub type CouplingInputF64 = CouplingInput<f64>;
pub type ArrowheadMatrixF64 = oracle::ArrowheadMatrix<f64>;
pub type RadialGridF64 = oracle::RadialGrid<f64>;

pub type ModelParamsF32 = ModelParams<f32>;
pub type RenormSettingsF32 = RenormSettings<f32>;
pub type RenormReportF32 = RenormReport<f32>;
