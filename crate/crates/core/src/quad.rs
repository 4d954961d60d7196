//! Radial reduction `∫d³k G(ω_k) = 4π ∫ k² G(ω_k) dk` and the three
//! renormalization integrals.
//!
//! The k-range is split at `0, s, 2s, 4s, …` where `s` is the distance from
//! the real axis of the nearest complex singularity of the integrand, then
//! every segment is covered by a composite Gauss–Legendre rule whose panel
//! count doubles until two successive estimates agree.

use crate::error::{Error, Result};
use crate::gauss::GaussLegendre;
use crate::model::ModelParams;
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec<T> {
    /// Initial panels per segment.
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Truncation for non-compact form factors; `None` means `40 Λ`.
    /// Ignored for sharp cutoffs, which stop at `√(Λ² - μ²)`.
    pub k_max: Option<T>,
    pub abs_tol: T,
    pub rel_tol: T,
    /// Total panel budget across all segments.
    pub max_panels: usize,
}

pub const DEFAULT_MAX_PANELS: usize = 1 << 14;
pub const DEFAULT_K_MAX_FACTOR: f64 = 40.0;

impl<T: Real> Default for QuadSpec<T> {
    fn default() -> Self {
        // 1e-10 in double precision, a few ulps above epsilon in single
        let tol = lit::<T>(1e-10).max(T::epsilon() * lit(64.0));
        Self { panels: 2, nodes_per_panel: 16, k_max: None, abs_tol: tol, rel_tol: tol, max_panels: DEFAULT_MAX_PANELS }
    }
}

impl<T: Real> QuadSpec<T> {
    pub fn validate(&self) -> Result<(), T> {
        let bad = |field, reason: String| Err(Error::InvalidParameter { field, reason });
        if self.panels < 1 {
            return bad("quad.panels", "must be >= 1".into());
        }
        if self.nodes_per_panel < 2 {
            return bad("quad.nodes_per_panel", "must be >= 2".into());
        }
        if let Some(k) = self.k_max {
            if !(k > T::zero()) || !k.is_finite() {
                return bad("quad.k_max", format!("must be finite and > 0, got {k}"));
            }
        }
        if !(self.abs_tol > T::zero()) {
            return bad("quad.abs_tol", "must be > 0".into());
        }
        if !(self.rel_tol > T::zero()) {
            return bad("quad.rel_tol", "must be > 0".into());
        }
        if self.max_panels < self.panels {
            return bad("quad.max_panels", "must be >= panels".into());
        }
        Ok(())
    }

    /// Upper end of the k-integration for `params`.
    pub fn upper_limit(&self, params: &ModelParams<T>) -> T {
        let ff = params.form_factor();
        match ff.support_edge(params.mu()) {
            Some(edge) => edge,
            None => self.k_max.unwrap_or_else(|| ff.cutoff() * lit(DEFAULT_K_MAX_FACTOR)),
        }
    }
}

/// `4π ∫ k² F(ω_k) dk` over the support of the model's form factor.
/// `F` is a function of `ω`; it must already contain any `f(ω)` factors.
pub fn radial_integrate<T, F>(integrand: F, params: &ModelParams<T>, spec: &QuadSpec<T>) -> Result<T, T>
where
    T: Real,
    F: Fn(T) -> T,
{
    integrate_graded(integrand, params, spec, params.mu())
}

fn integrate_graded<T, F>(integrand: F, params: &ModelParams<T>, spec: &QuadSpec<T>, scale: T) -> Result<T, T>
where
    T: Real,
    F: Fn(T) -> T,
{
    spec.validate()?;
    let upper = spec.upper_limit(params);
    if upper == T::zero() {
        return Ok(T::zero());
    }
    let four_pi = lit::<T>(4.0) * T::PI();
    let radial = |k: T| k * k * integrand(params.omega(k));
    let edges = segment_edges(upper, scale);
    let segments = edges.len() - 1;
    let rule = GaussLegendre::new(spec.nodes_per_panel);

    let estimate = |per_segment: usize| -> T {
        let mut total = T::zero();
        for w in edges.windows(2) {
            let width = (w[1] - w[0]) / lit(per_segment as f64);
            let mut seg = T::zero();
            for p in 0..per_segment {
                let a = w[0] + width * lit(p as f64);
                let b = if p + 1 == per_segment { w[1] } else { a + width };
                seg = seg + rule.integrate(a, b, radial);
            }
            total = total + seg;
        }
        total
    };

    let mut per_segment = spec.panels;
    let mut previous = estimate(per_segment);
    loop {
        if segments * per_segment * 2 > spec.max_panels {
            return Err(Error::NoConvergence {
                context: "radial quadrature",
                detail: format!("panel budget {} exhausted, last estimate {}", spec.max_panels, four_pi * previous),
            });
        }
        per_segment *= 2;
        let current = estimate(per_segment);
        if !current.is_finite() {
            return Err(Error::NoConvergence {
                context: "radial quadrature",
                detail: format!("non-finite estimate {current}"),
            });
        }
        let diff = four_pi * (current - previous).abs();
        let value = four_pi * current;
        if diff <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            return Ok(value);
        }
        previous = current;
    }
}

/// `0, s, 2s, 4s, …, upper`.
fn segment_edges<T: Real>(upper: T, scale: T) -> Vec<T> {
    let mut edges = vec![T::zero()];
    let mut next = scale;
    while next < upper {
        edges.push(next);
        next = next + next;
    }
    edges.push(upper);
    edges
}

/// Imaginary distance of the pole `ω_k = m - m_N` from the real k axis.
fn pole_scale<T: Real>(params: &ModelParams<T>, m: T) -> T {
    let mu = params.mu();
    let e = m - params.m_n();
    if e.abs() < mu {
        let s = ((mu - e) * (mu + e)).sqrt();
        s.max(mu * T::epsilon())
    } else {
        mu
    }
}

/// Energy integral of the mass shift,
/// `I₁(m) = ∫d³k f²(ω)/(2ω) · 1/(m - m_N - ω)`, without the `g0²/(2π)³`.
pub fn integral_i1<T: Real>(m: T, params: &ModelParams<T>, spec: &QuadSpec<T>) -> Result<T, T> {
    params.check_stability(m)?;
    let e = m - params.m_n();
    let f = |w: T| {
        let ff = params.f(w);
        ff * ff / (w + w) / (e - w)
    };
    integrate_graded(f, params, spec, pole_scale(params, m))
}

/// `I₂(m) = ∫d³k f²(ω)/(2ω) · 1/(m - m_N - ω)² = -dI₁/dm`.
pub fn integral_i2<T: Real>(m: T, params: &ModelParams<T>, spec: &QuadSpec<T>) -> Result<T, T> {
    params.check_stability(m)?;
    let e = m - params.m_n();
    let f = |w: T| {
        let ff = params.f(w);
        let d = e - w;
        ff * ff / (w + w) / (d * d)
    };
    integrate_graded(f, params, spec, pole_scale(params, m))
}

/// `∫d³k |Φ(k)|²` for the state with physical mass `m_v`, built from the
/// amplitude itself rather than from `I₂`.
pub fn norm_integral<T: Real>(params: &ModelParams<T>, g0: T, m_v: T, spec: &QuadSpec<T>) -> Result<T, T> {
    params.check_stability(m_v)?;
    let ff = params.form_factor();
    let mu = params.mu();
    let e = m_v - params.m_n();
    let phi_sq = |w: T| {
        let phi = crate::model::vertex_weight(g0, &ff, w, mu) / (e - w);
        phi * phi
    };
    integrate_graded(phi_sq, params, spec, pole_scale(params, m_v))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::model::FormFactor;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn reference() -> ModelParams<f64> {
        ModelParams::reference()
    }

    #[test]
    fn zero_integrand() {
        let v = radial_integrate(|_| 0.0, &reference(), &QuadSpec::default()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn ball_volume() {
        // Λ = √5, μ = 1 puts the sharp support edge at k = 2
        let p = ModelParams::new(1.0, 1.0, FormFactor::Sharp { cutoff: 5f64.sqrt() }).unwrap();
        let v = radial_integrate(|_| 1.0, &p, &QuadSpec::default()).unwrap();
        assert_relative_eq!(v, 32.0 * PI / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn free_measure_golden() {
        // mpmath: 4π ∫_0^√99 k²/(2ω) dk
        let v = radial_integrate(|w| 1.0 / (2.0 * w), &reference(), &QuadSpec::default()).unwrap();
        assert_relative_eq!(v, 303.181_035_378_881_598_687_6, max_relative = 1e-12);
    }

    #[test]
    fn free_measure_against_riemann_sum() {
        // 10⁷-node midpoint sum, independent of the Gauss path
        let top = 99f64.sqrt();
        let n = 10_000_000usize;
        let h = top / n as f64;
        let sum: f64 = (0..n)
            .map(|i| {
                let k = (i as f64 + 0.5) * h;
                k * k / (2.0 * k.hypot(1.0))
            })
            .sum::<f64>()
            * 4.0
            * PI
            * h;
        let v = radial_integrate(|w| 1.0 / (2.0 * w), &reference(), &QuadSpec::default()).unwrap();
        assert_relative_eq!(v, sum, max_relative = 1e-8);
    }

    #[test]
    fn i1_i2_golden() {
        let s = QuadSpec::default();
        let p = reference();
        assert_relative_eq!(integral_i1(1.5, &p, &s).unwrap(), -61.008_201_545_749_597_680_2, max_relative = 1e-12);
        assert_relative_eq!(integral_i2(1.5, &p, &s).unwrap(), 19.501_040_232_836_567_380_6, max_relative = 1e-12);
    }

    #[test]
    fn soft_form_factor_golden() {
        let s = QuadSpec::default();
        let e = ModelParams::new(1.0, 1.0, FormFactor::Exponential { cutoff: 10.0 }).unwrap();
        assert_relative_eq!(integral_i1(1.5, &e, &s).unwrap(), -27.634_101_341_338_925_19, max_relative = 1e-11);
        assert_relative_eq!(integral_i2(1.5, &e, &s).unwrap(), 10.739_409_995_398_872_68, max_relative = 1e-11);
        let d = ModelParams::new(1.0, 1.0, FormFactor::Dipole { cutoff: 10.0 }).unwrap();
        assert_relative_eq!(integral_i1(1.5, &d, &s).unwrap(), -46.946_398_050_766_514_16, max_relative = 1e-11);
        assert_relative_eq!(integral_i2(1.5, &d, &s).unwrap(), 15.959_107_129_926_887_81, max_relative = 1e-11);
    }

    #[test]
    fn i1_i2_against_riemann_sum() {
        let top = 99f64.sqrt();
        let n = 10_000_000usize;
        let h = top / n as f64;
        let (mut s1, mut s2) = (0.0, 0.0);
        for i in 0..n {
            let k = (i as f64 + 0.5) * h;
            let w = k.hypot(1.0);
            let base = k * k / (2.0 * w) / (0.5 - w);
            s1 += base;
            s2 += base / (0.5 - w);
        }
        let (s1, s2) = (s1 * 4.0 * PI * h, s2 * 4.0 * PI * h);
        let spec = QuadSpec::default();
        assert_relative_eq!(integral_i1(1.5, &reference(), &spec).unwrap(), s1, max_relative = 1e-8);
        assert_relative_eq!(integral_i2(1.5, &reference(), &spec).unwrap(), s2, max_relative = 1e-8);
    }

    #[test]
    fn stability_window_enforced() {
        let s = QuadSpec::default();
        assert!(matches!(integral_i1(2.0, &reference(), &s), Err(Error::StabilityViolation { .. })));
        assert!(matches!(integral_i2(2.5, &reference(), &s), Err(Error::StabilityViolation { .. })));
        assert!(norm_integral(&reference(), 1.0, 3.0, &s).is_err());
    }

    #[test]
    fn near_threshold_still_converges() {
        let s = QuadSpec::default();
        let p = reference();
        let m = 2.0 - 1e-9;
        let i1 = integral_i1(m, &p, &s).unwrap();
        assert!(i1 < 0.0 && i1.is_finite());
        // I₂ diverges like (threshold - m)^(-1/2)
        let a = integral_i2(2.0 - 1e-6, &p, &s).unwrap();
        let b = integral_i2(2.0 - 1e-8, &p, &s).unwrap();
        assert_relative_eq!(b / a, 10.0, max_relative = 1e-2);
    }

    #[test]
    fn norm_integral_matches_scaled_i2() {
        let s = QuadSpec::default();
        let p = reference();
        assert_eq!(norm_integral(&p, 0.0, 1.5, &s).unwrap(), 0.0);
        let n = norm_integral(&p, 1.0, 1.5, &s).unwrap();
        let i2 = integral_i2(1.5, &p, &s).unwrap();
        assert_relative_eq!(n / i2, 1.0 / (2.0 * PI).powi(3), max_relative = 1e-10);
        // golden: I₂/(2π)³ from mpmath
        assert_relative_eq!(n, 0.078_617_308_819_067_142_09, max_relative = 1e-12);
    }

    #[test]
    fn sharp_ignores_k_max() {
        let p = reference();
        let a = integral_i2(1.2, &p, &QuadSpec::default()).unwrap();
        let b = integral_i2(1.2, &p, &QuadSpec { k_max: Some(1e3), ..QuadSpec::default() }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn panel_budget_reported() {
        let spec = QuadSpec { max_panels: 4, rel_tol: 1e-300, abs_tol: 1e-300, ..QuadSpec::default() };
        let r = integral_i1(1.5, &reference(), &spec);
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn quad_spec_validation() {
        let bad = QuadSpec::<f64> { nodes_per_panel: 1, ..QuadSpec::default() };
        assert!(bad.validate().is_err());
        let bad = QuadSpec::<f64> { k_max: Some(-1.0), ..QuadSpec::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn single_precision_integrals() {
        let p = ModelParams::<f32>::reference();
        let v = integral_i2(1.5f32, &p, &QuadSpec::default()).unwrap();
        assert!((v - 19.501_04).abs() / 19.5 < 1e-4);
    }
}
