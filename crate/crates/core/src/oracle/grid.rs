use crate::error::{Error, Result};
use crate::gauss::GaussLegendre;
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridScheme {
    /// Midpoint nodes `(i - ½)Δk`.
    UniformK,
    /// Gauss–Legendre nodes on `[0, k_max]`.
    GaussLegendreK,
}

/// One discretised θ momentum shell. `weight` already contains the `4πk²`
/// measure, so `Σ weight ≈ ∫d³k` over the covered ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode<T> {
    pub k: T,
    pub weight: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid<T> {
    modes: Vec<Mode<T>>,
    scheme: GridScheme,
}

impl<T: Real> RadialGrid<T> {
    pub fn modes(&self) -> &[Mode<T>] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }
}

pub fn build_grid<T: Real>(k_max: T, n: usize, scheme: GridScheme) -> Result<RadialGrid<T>, T> {
    if n == 0 {
        return Err(Error::InvalidParameter { field: "n", reason: "grid needs at least one mode".into() });
    }
    if !(k_max > T::zero()) || !k_max.is_finite() {
        return Err(Error::InvalidParameter { field: "k_max", reason: format!("must be finite and > 0, got {k_max}") });
    }
    let four_pi = lit::<T>(4.0) * T::PI();
    let modes = match scheme {
        GridScheme::UniformK => {
            let dk = k_max / lit(n as f64);
            (0..n)
                .map(|i| {
                    let k = (lit::<T>(i as f64) + lit(0.5)) * dk;
                    Mode { k, weight: four_pi * k * k * dk }
                })
                .collect()
        }
        GridScheme::GaussLegendreK => GaussLegendre::new(n)
            .mapped(T::zero(), k_max)
            .map(|(k, w)| Mode { k, weight: four_pi * k * k * w })
            .collect(),
    };
    Ok(RadialGrid { modes, scheme })
}
