//! Mass and wavefunction renormalization of the V particle, the maps
//! between bare `(m_V0, g0)` and renormalized `(m_V, g)` parameters, and
//! the ghost regime `x > 1` with its regularized reading `Z_V = 0`.

use crate::error::{Error, Result};
use crate::model::{BareCoupling, ModelParams, Regime, RenCoupling};
use crate::quad::{integral_i1, integral_i2, QuadSpec};
use crate::roots::solve_increasing;
use crate::scalar::{as_f64, lit, two_pi_cubed, Real};

/// Distance below `m_N + μ` (in units of `μ`) of the upper bracket end
/// used when searching for the physical mass.
pub const THRESHOLD_OFFSET: f64 = 1e-9;

/// Numerical controls shared by the renormalization routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenormSettings<T> {
    pub quad: QuadSpec<T>,
    /// Absolute tolerance on the physical mass.
    pub root_tol: T,
    /// Half-width of the `Critical` band around `x = 1`.
    pub regime_tol: T,
}

impl<T: Real> Default for RenormSettings<T> {
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            quad: QuadSpec::default(),
            root_tol: lit::<T>(1e-13).max(eps * lit(8.0)),
            regime_tol: lit::<T>(1e-12).max(eps * lit(8.0)),
        }
    }
}

/// Which side of the renormalization a calculation starts from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CouplingInput<T> {
    Bare(BareCoupling<T>),
    Renormalized(RenCoupling<T>),
}

/// Everything known about one V-particle state. Bare fields are absent when
/// no real bare theory exists (renormalized input with `x >= 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenormReport<T> {
    pub m_v: T,
    pub m_v0: Option<T>,
    /// `m_V - m_V0`.
    pub delta_m: Option<T>,
    pub g0_sq: Option<T>,
    pub g_sq: T,
    pub x: T,
    /// `1 - x`; negative in the ghost regime.
    pub z_standard: T,
    /// `max(1 - x, 0)`.
    pub z_regularized: T,
    pub regime: Regime,
}

/// `δm_V = g0²/(2π)³ · I₁(m_V)`, never positive.
pub fn mass_shift<T: Real>(params: &ModelParams<T>, g0: T, m_v: T, spec: &QuadSpec<T>) -> Result<T, T> {
    params.check_stability(m_v)?;
    if g0 == T::zero() {
        return Ok(T::zero());
    }
    Ok(g0 * g0 / two_pi_cubed::<T>() * integral_i1(m_v, params, spec)?)
}

/// Physical mass: the root below `m_N + μ` of
/// `F(m) = m - m_V0 - g0²/(2π)³ · I₁(m)`.
///
/// `F' = 1 + g0²/(2π)³ · I₂ > 0`, so the root is unique when it exists.
/// `Ok(None)` means `F` is still negative just below threshold: the bare V
/// dissolves into the N+θ continuum.
pub fn solve_physical_mass<T: Real>(
    params: &ModelParams<T>,
    bare: &BareCoupling<T>,
    spec: &QuadSpec<T>,
    root_tol: T,
) -> Result<Option<T>, T> {
    if !bare.m_v0.is_finite() || !bare.g0.is_finite() {
        return Err(Error::InvalidParameter { field: "bare", reason: format!("non-finite bare coupling {bare:?}") });
    }
    // the offset must stay resolvable next to the threshold in single precision
    let offset = (params.mu() * lit(THRESHOLD_OFFSET)).max(params.threshold().abs() * T::epsilon() * lit(4.0));
    let upper = params.threshold() - offset;
    let coeff = bare.g0 * bare.g0 / two_pi_cubed::<T>();
    if coeff == T::zero() {
        return Ok((bare.m_v0 < upper).then_some(bare.m_v0));
    }
    let residual = |m: T| -> Result<T, T> { Ok(m - bare.m_v0 - coeff * integral_i1(m, params, spec)?) };

    let f_upper = residual(upper)?;
    if f_upper <= T::zero() {
        return Ok(None);
    }

    let mut step = params.mu();
    let mut lower = bare.m_v0.min(upper) - step;
    let mut f_lower = residual(lower)?;
    let mut expansions = 0;
    while f_lower >= T::zero() {
        if f_lower == T::zero() {
            return Ok(Some(lower));
        }
        expansions += 1;
        if expansions > 200 {
            return Err(Error::NoConvergence {
                context: "physical mass bracket",
                detail: format!("no sign change down to m = {lower}"),
            });
        }
        step = step + step;
        lower = lower - step;
        f_lower = residual(lower)?;
    }
    solve_increasing(residual, lower, f_lower, upper, f_upper, root_tol).map(Some)
}

/// `Z_V = 1 / (1 + g0²/(2π)³ · I₂(m_V))`, in `(0, 1]`.
pub fn z_from_bare<T: Real>(params: &ModelParams<T>, g0: T, m_v: T, spec: &QuadSpec<T>) -> Result<T, T> {
    params.check_stability(m_v)?;
    if g0 == T::zero() {
        return Ok(T::one());
    }
    let i2 = integral_i2(m_v, params, spec)?;
    Ok(T::one() / (T::one() + g0 * g0 / two_pi_cubed::<T>() * i2))
}

/// `g = √Z_V · g0`.
pub fn renormalize_coupling<T: Real>(g0: T, z: T) -> Result<T, T> {
    if !(z > T::zero()) || !z.is_finite() {
        return Err(Error::InvalidParameter {
            field: "z",
            reason: format!("Z_V must be positive to define a real coupling, got {z}"),
        });
    }
    Ok(z.sqrt() * g0.abs())
}

/// Dimensionless coupling strength `x = g²/(2π)³ · I₂(m_V)`.
pub fn x_value<T: Real>(params: &ModelParams<T>, g: T, m_v: T, spec: &QuadSpec<T>) -> Result<T, T> {
    params.check_stability(m_v)?;
    if g == T::zero() {
        return Ok(T::zero());
    }
    Ok(g * g / two_pi_cubed::<T>() * integral_i2(m_v, params, spec)?)
}

/// Standard reading `Z_V = 1 - x`; negative for `x > 1`.
pub fn z_from_renormalized<T: Real>(x: T) -> T {
    T::one() - x
}

/// Reading `1/Z_V = 1 + x + x² + ⋯`: equal to `1 - x` below `x = 1` and `0`
/// once the series diverges.
pub fn regularized_z<T: Real>(x: T) -> T {
    (T::one() - x).max(T::zero())
}

/// Partial sum of the geometric series. `saturated` is set when the value
/// left the finite range; `value` is then `+∞` (or `-∞`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSum<T> {
    pub value: T,
    pub saturated: bool,
}

/// `Σ_{j=0}^{n} x^j`.
pub fn geometric_partial_sum<T: Real>(x: T, n: u64) -> PartialSum<T> {
    let one = T::one();
    let value = if (x - one).abs() > lit(1e-8) {
        let power = match i32::try_from(n + 1) {
            Ok(e) => x.powi(e),
            Err(_) => x.powf(lit((n + 1) as f64)),
        };
        (power - one) / (x - one)
    } else {
        let mut acc = T::zero();
        let mut term = one;
        for _ in 0..=n {
            acc = acc + term;
            term = term * x;
            if !acc.is_finite() {
                break;
            }
        }
        acc
    };
    if value.is_finite() {
        PartialSum { value, saturated: false }
    } else {
        let inf = if value.is_nan() || value > T::zero() { T::infinity() } else { T::neg_infinity() };
        PartialSum { value: inf, saturated: true }
    }
}

/// For `x > 1`, an index from which every partial sum exceeds `bound`: `⌈log(bound·(x - 1) + 1) / log x⌉`. `None` for `x <= 1`.
pub fn divergence_index<T: Real>(x: T, bound: T) -> Option<u64> {
    if !(x > T::one()) || !(bound > T::zero()) {
        return None;
    }
    let n = ((bound * (x - T::one()) + T::one()).ln() / x.ln()).ceil();
    n.to_u64()
}

pub fn classify_regime<T: Real>(x: T, regime_tol: T) -> Regime {
    if (x - T::one()).abs() <= regime_tol {
        Regime::Critical
    } else if x > T::one() {
        Regime::Ghost
    } else {
        Regime::Normal
    }
}

/// Renormalized coupling at which `x = 1`: `√((2π)³ / I₂(m_V))`.
pub fn critical_coupling<T: Real>(params: &ModelParams<T>, m_v: T, spec: &QuadSpec<T>) -> Result<T, T> {
    let i2 = integral_i2(m_v, params, spec)?;
    if !(i2 > T::zero()) {
        return Err(Error::DegenerateModel);
    }
    Ok((two_pi_cubed::<T>() / i2).sqrt())
}

/// Bare parameters reproducing `(m_V, g)`: `Z_V = 1 - x`, `g0² = g²/Z_V`,
/// `m_V0 = m_V - g0²/(2π)³ · I₁(m_V)`.
///
/// Outside the `Normal` regime there is no real bare coupling; the error
/// carries the report with `z_standard <= 0` and `z_regularized = 0`.
pub fn bare_from_renormalized<T: Real>(
    params: &ModelParams<T>,
    ren: &RenCoupling<T>,
    settings: &RenormSettings<T>,
) -> Result<BareCoupling<T>, T> {
    params.check_stability(ren.m_v)?;
    let spec = &settings.quad;
    let g_sq = ren.g * ren.g;
    let i2 = if g_sq == T::zero() { T::zero() } else { integral_i2(ren.m_v, params, spec)? };
    let x = g_sq / two_pi_cubed::<T>() * i2;
    let regime = classify_regime(x, settings.regime_tol);
    if regime != Regime::Normal {
        return Err(Error::GhostRegime(Box::new(RenormReport {
            m_v: ren.m_v,
            m_v0: None,
            delta_m: None,
            g0_sq: None,
            g_sq,
            x,
            z_standard: z_from_renormalized(x),
            z_regularized: regularized_z(x),
            regime,
        })));
    }
    let z = z_from_renormalized(x);
    let g0_sq = g_sq / z;
    let shift =
        if g0_sq == T::zero() { T::zero() } else { g0_sq / two_pi_cubed::<T>() * integral_i1(ren.m_v, params, spec)? };
    Ok(BareCoupling::new(ren.m_v - shift, g0_sq.sqrt()))
}

/// Joint report from either side of the renormalization.
///
/// From a bare input, `g² = Z_V g0²` so `z_standard` reproduces `Z_V`. From a
/// renormalized input in the ghost regime the bare fields are left empty.
pub fn full_report<T: Real>(
    params: &ModelParams<T>,
    input: &CouplingInput<T>,
    settings: &RenormSettings<T>,
) -> Result<RenormReport<T>, T> {
    let spec = &settings.quad;
    match input {
        CouplingInput::Bare(bare) => {
            let m_v = solve_physical_mass(params, bare, spec, settings.root_tol)?
                .ok_or(Error::NoBoundState { threshold: as_f64(params.threshold()) })?;
            let z = z_from_bare(params, bare.g0, m_v, spec)?;
            let g0_sq = bare.g0 * bare.g0;
            let g_sq = z * g0_sq;
            let x = x_value(params, g_sq.sqrt(), m_v, spec)?;
            Ok(RenormReport {
                m_v,
                m_v0: Some(bare.m_v0),
                delta_m: Some(m_v - bare.m_v0),
                g0_sq: Some(g0_sq),
                g_sq,
                x,
                z_standard: z_from_renormalized(x),
                z_regularized: regularized_z(x),
                regime: classify_regime(x, settings.regime_tol),
            })
        }
        CouplingInput::Renormalized(ren) => match bare_from_renormalized(params, ren, settings) {
            Ok(bare) => {
                let g_sq = ren.g * ren.g;
                let x = x_value(params, ren.g, ren.m_v, spec)?;
                Ok(RenormReport {
                    m_v: ren.m_v,
                    m_v0: Some(bare.m_v0),
                    delta_m: Some(ren.m_v - bare.m_v0),
                    g0_sq: Some(bare.g0 * bare.g0),
                    g_sq,
                    x,
                    z_standard: z_from_renormalized(x),
                    z_regularized: regularized_z(x),
                    regime: classify_regime(x, settings.regime_tol),
                })
            }
            Err(Error::GhostRegime(report)) => Ok(*report),
            Err(e) => Err(e),
        },
    }
}
