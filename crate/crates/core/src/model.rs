//! Model definition: masses, regulator, kinematics and the continuum
//! amplitude of the N+θ cloud around the physical V particle.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{as_f64, lit, Real};

/// θ-particle energy `ω_k = √(k² + μ²)`.
pub fn omega<T: Real>(k: T, mu: T) -> Result<T, T> {
    if !(k >= T::zero()) || !k.is_finite() {
        return Err(Error::InvalidParameter {
            field: "k",
            reason: format!("momentum must be finite and >= 0, got {k}"),
        });
    }
    if !(mu > T::zero()) || !mu.is_finite() {
        return Err(Error::InvalidParameter { field: "mu", reason: format!("mass must be finite and > 0, got {mu}") });
    }
    Ok(k.hypot(mu))
}

/// Regulator `f(ω)` in the V ↔ N θ vertex, normalised so that `0 <= f <= 1`
/// for `ω >= μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FormFactor<T> {
    /// `f = 1` for `ω <= Λ`, `0` above.
    Sharp { cutoff: T },
    /// `f = exp(-ω/Λ)`.
    Exponential { cutoff: T },
    /// `f = Λ² / (Λ² + k²)`.
    Dipole { cutoff: T },
}

impl<T: Real> FormFactor<T> {
    pub fn cutoff(&self) -> T {
        match *self {
            FormFactor::Sharp { cutoff } | FormFactor::Exponential { cutoff } | FormFactor::Dipole { cutoff } => cutoff,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FormFactor::Sharp { .. } => "sharp",
            FormFactor::Exponential { .. } => "exponential",
            FormFactor::Dipole { .. } => "dipole",
        }
    }

    /// Same family with a different cutoff.
    pub fn with_cutoff(&self, cutoff: T) -> Self {
        match self {
            FormFactor::Sharp { .. } => FormFactor::Sharp { cutoff },
            FormFactor::Exponential { .. } => FormFactor::Exponential { cutoff },
            FormFactor::Dipole { .. } => FormFactor::Dipole { cutoff },
        }
    }

    /// `f(ω)` for a θ of mass `mu`. Only meaningful for `omega >= mu`.
    pub fn eval(&self, omega: T, mu: T) -> T {
        match *self {
            FormFactor::Sharp { cutoff } => {
                if omega <= cutoff {
                    T::one()
                } else {
                    T::zero()
                }
            }
            FormFactor::Exponential { cutoff } => (-omega / cutoff).exp(),
            FormFactor::Dipole { cutoff } => {
                let l2 = cutoff * cutoff;
                // ω² - μ² = k², clamped against rounding just above threshold
                let k2 = (omega * omega - mu * mu).max(T::zero());
                l2 / (l2 + k2)
            }
        }
    }

    /// Momentum beyond which `f` vanishes identically, if there is one.
    pub fn support_edge(&self, mu: T) -> Option<T> {
        match *self {
            FormFactor::Sharp { cutoff } => Some(((cutoff - mu) * (cutoff + mu)).max(T::zero()).sqrt()),
            _ => None,
        }
    }
}

/// Masses and regulator of one Lee-model instance. All energies share one
/// unit; `mu = 1` is the conventional scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    m_n: T,
    mu: T,
    form_factor: FormFactor<T>,
}

impl<T: Real> ModelParams<T> {
    pub fn new(m_n: T, mu: T, form_factor: FormFactor<T>) -> Result<Self, T> {
        if !m_n.is_finite() {
            return Err(Error::InvalidParameter { field: "m_N", reason: format!("must be finite, got {m_n}") });
        }
        if !mu.is_finite() || !(mu > T::zero()) {
            return Err(Error::InvalidParameter { field: "mu", reason: format!("must be finite and > 0, got {mu}") });
        }
        let cutoff = form_factor.cutoff();
        if !cutoff.is_finite() || !(cutoff > T::zero()) {
            return Err(Error::InvalidParameter {
                field: "lambda",
                reason: format!("cutoff must be finite and > 0, got {cutoff}"),
            });
        }
        if let FormFactor::Sharp { cutoff } = form_factor {
            if cutoff < mu {
                return Err(Error::InvalidParameter {
                    field: "lambda",
                    reason: format!("sharp cutoff {cutoff} below mu = {mu} removes every mode"),
                });
            }
        }
        Ok(Self { m_n, mu, form_factor })
    }

    /// `μ = 1`, `m_N = 1`, sharp cutoff at `Λ = 10`.
    pub fn reference() -> Self {
        Self::new(T::one(), T::one(), FormFactor::Sharp { cutoff: lit(10.0) }).expect("reference model is valid")
    }

    pub fn m_n(&self) -> T {
        self.m_n
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn form_factor(&self) -> FormFactor<T> {
        self.form_factor
    }

    /// Bottom of the N+θ continuum, `m_N + μ`.
    pub fn threshold(&self) -> T {
        self.m_n + self.mu
    }

    #[inline]
    pub fn omega(&self, k: T) -> T {
        k.hypot(self.mu)
    }

    #[inline]
    pub fn f(&self, omega: T) -> T {
        self.form_factor.eval(omega, self.mu)
    }

    /// Errors unless `m - m_N < μ`.
    pub fn check_stability(&self, m: T) -> Result<(), T> {
        let gap = m - self.m_n;
        if !m.is_finite() || !(gap < self.mu) {
            return Err(Error::StabilityViolation { gap: as_f64(gap), mu: as_f64(self.mu) });
        }
        Ok(())
    }
}

/// Bare parameters `(m_V0, g0)` of the Hamiltonian. Only `g0²` is observable,
/// so the constructor stores `|g0|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BareCoupling<T> {
    pub m_v0: T,
    pub g0: T,
}

impl<T: Real> BareCoupling<T> {
    pub fn new(m_v0: T, g0: T) -> Self {
        Self { m_v0, g0: g0.abs() }
    }
}

/// Physical mass and renormalized coupling `(m_V, g)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenCoupling<T> {
    pub m_v: T,
    pub g: T,
}

impl<T: Real> RenCoupling<T> {
    pub fn new(m_v: T, g: T) -> Self {
        Self { m_v, g: g.abs() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Normal,
    Critical,
    Ghost,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Normal => "Normal",
            Regime::Critical => "Critical",
            Regime::Ghost => "Ghost",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Vertex factor `g0 (2π)^{-3/2} f(ω) / √(2ω)`.
pub fn vertex_weight<T: Real>(g0: T, ff: &FormFactor<T>, omega: T, mu: T) -> T {
    let f = ff.eval(omega, mu);
    if g0 == T::zero() || f == T::zero() {
        return T::zero();
    }
    let norm = T::TAU().powf(lit(-1.5));
    g0 * norm * f / (omega + omega).sqrt()
}

/// Amplitude `Φ(k)` of the N+θ component relative to the bare V component:
/// the vertex factor divided by `m_V - m_N - ω_k`.
pub fn phi_amplitude<T: Real>(params: &ModelParams<T>, g0: T, m_v: T, k: T) -> Result<T, T> {
    params.check_stability(m_v)?;
    let w = omega(k, params.mu())?;
    let v = vertex_weight(g0, &params.form_factor(), w, params.mu());
    Ok(v / (m_v - params.m_n() - w))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sharp(l: f64) -> FormFactor<f64> {
        FormFactor::Sharp { cutoff: l }
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega(0.0, 1.0).unwrap(), 1.0);
        assert_eq!(omega(3.0, 4.0).unwrap(), 5.0);
        assert_relative_eq!(omega(1.0, 1.0).unwrap(), std::f64::consts::SQRT_2, epsilon = 1e-15);
        assert!(omega(-1.0, 1.0).is_err());
        assert!(omega(1.0, 0.0).is_err());
        assert!(omega(1.0_f32, 1.0).is_ok());
    }

    #[test]
    fn form_factor_values() {
        assert_eq!(sharp(10.0).eval(5.0, 1.0), 1.0);
        assert_eq!(sharp(10.0).eval(10.0, 1.0), 1.0);
        assert_eq!(sharp(10.0).eval(11.0, 1.0), 0.0);
        let e = FormFactor::Exponential { cutoff: 2.0 };
        assert_relative_eq!(e.eval(2.0, 1.0), (-1.0f64).exp(), epsilon = 1e-15);
        let d = FormFactor::Dipole { cutoff: 3.0 };
        // k = 4 → Λ²/(Λ²+k²) = 9/25
        assert_relative_eq!(d.eval(omega(4.0, 1.0).unwrap(), 1.0), 0.36, epsilon = 1e-14);
        assert_eq!(d.eval(1.0, 1.0), 1.0);
    }

    #[test]
    fn form_factor_bounded_on_physical_domain() {
        for ff in [sharp(3.0), FormFactor::Exponential { cutoff: 0.5 }, FormFactor::Dipole { cutoff: 0.5 }] {
            assert!(ff.eval(1.0, 1.0) > 0.0);
            for i in 0..200 {
                let w = 1.0 + 0.1 * i as f64;
                let f = ff.eval(w, 1.0);
                assert!((0.0..=1.0).contains(&f), "{ff:?} at {w}: {f}");
            }
        }
    }

    #[test]
    fn vertex_weight_values() {
        assert_eq!(vertex_weight(0.0, &sharp(10.0), 2.0, 1.0), 0.0);
        // independent high-precision evaluation of 1/((2π)^{3/2}·2)
        assert_relative_eq!(
            vertex_weight(1.0, &sharp(10.0), 2.0, 1.0),
            0.031_746_817_967_120_484_9,
            max_relative = 1e-14
        );
        assert_eq!(vertex_weight(1.0, &sharp(10.0), 11.0, 1.0), 0.0);
    }

    #[test]
    fn phi_golden_and_edges() {
        let p = ModelParams::reference();
        // mpmath, 40 digits
        assert_relative_eq!(
            phi_amplitude(&p, 1.0, 1.5, 1.0).unwrap(),
            -0.041_296_195_286_357_495_4,
            max_relative = 1e-13
        );
        assert_eq!(phi_amplitude(&p, 0.0, 1.5, 1.0).unwrap(), 0.0);
        assert_eq!(phi_amplitude(&p, 1.0, 1.5, 10.0).unwrap(), 0.0);
        assert!(phi_amplitude(&p, 1.0, 1.5, 0.0).unwrap() < 0.0);
        assert!(matches!(phi_amplitude(&p, 1.0, 2.0, 1.0), Err(Error::StabilityViolation { .. })));
    }

    #[test]
    fn phi_decays_and_sharp_jump() {
        let p = ModelParams::new(1.0, 1.0, FormFactor::Exponential { cutoff: 2.0 }).unwrap();
        let far = phi_amplitude(&p, 1.0f64, 1.5, 200.0).unwrap();
        assert!(far.abs() < 1e-40);
        let s = ModelParams::reference();
        let edge = (99.0f64).sqrt();
        assert!(phi_amplitude(&s, 1.0, 1.5, edge * (1.0 - 1e-12)).unwrap() < 0.0);
        assert_eq!(phi_amplitude(&s, 1.0, 1.5, edge * (1.0 + 1e-12)).unwrap(), 0.0);
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(1.0, -1.0, sharp(10.0)).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0, sharp(10.0)).is_err());
        assert!(ModelParams::new(1.0, 1.0, sharp(0.5)).is_err());
        assert!(ModelParams::new(1.0, 1.0, FormFactor::Dipole { cutoff: 0.0 }).is_err());
        assert!(ModelParams::new(1.0, 1.0, FormFactor::Dipole { cutoff: 0.5 }).is_ok());
        assert_eq!(BareCoupling::new(1.0, -2.0).g0, 2.0);
    }

    #[test]
    fn sharp_support_edge() {
        assert_eq!(sharp(5.0).support_edge(3.0), Some(4.0));
        assert_eq!(FormFactor::Dipole { cutoff: 5.0 }.support_edge(3.0), None);
    }
}
