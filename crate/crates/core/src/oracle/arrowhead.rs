//! The V ↔ Nθ sector truncated to finitely many θ momenta is a symmetric
//! arrowhead matrix
//!
//! ```text
//! [ a   c₁  c₂  …  cₙ ]
//! [ c₁  d₁            ]
//! [ c₂      d₂        ]
//! [ …           ⋱     ]
//! [ cₙ              dₙ]
//! ```
//!
//! whose eigenvalues are the roots of the secular function
//! `s(λ) = a - λ + Σ cᵢ² / (λ - dᵢ)`.

use crate::error::{Error, Result};
use crate::model::{vertex_weight, BareCoupling, ModelParams};
use crate::scalar::{as_f64, lit, Real};

use super::grid::RadialGrid;

#[derive(Debug, Clone, PartialEq)]
pub struct ArrowheadMatrix<T> {
    apex: T,
    diag: Vec<T>,
    coupling: Vec<T>,
}

/// Eigenvalue together with the squared bare-V component of its normalised
/// eigenvector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair<T> {
    pub lambda: T,
    pub apex_weight: T,
}

impl<T: Real> ArrowheadMatrix<T> {
    /// `diag` must be strictly increasing and as long as `coupling`.
    pub fn new(apex: T, diag: Vec<T>, coupling: Vec<T>) -> Result<Self, T> {
        if diag.len() != coupling.len() {
            return Err(Error::InvalidParameter {
                field: "coupling",
                reason: format!("{} couplings for {} diagonal entries", coupling.len(), diag.len()),
            });
        }
        if !diag.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter {
                field: "diag",
                reason: "diagonal entries must be strictly increasing".into(),
            });
        }
        if !apex.is_finite() || diag.iter().chain(&coupling).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter { field: "matrix", reason: "non-finite entry".into() });
        }
        Ok(Self { apex, diag, coupling })
    }

    pub fn apex(&self) -> T {
        self.apex
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn coupling(&self) -> &[T] {
        &self.coupling
    }

    /// Number of continuum modes; the matrix is `(n+1) × (n+1)`.
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn trace(&self) -> T {
        self.apex + self.diag.iter().copied().sum::<T>()
    }

    /// Row-major dense copy, apex at `(0, 0)`.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let dim = self.n() + 1;
        let mut a = vec![vec![T::zero(); dim]; dim];
        a[0][0] = self.apex;
        for (i, (&d, &c)) in self.diag.iter().zip(&self.coupling).enumerate() {
            a[0][i + 1] = c;
            a[i + 1][0] = c;
            a[i + 1][i + 1] = d;
        }
        a
    }

    fn secular_unchecked(&self, lambda: T) -> T {
        let tail: T = self
            .diag
            .iter()
            .zip(&self.coupling)
            .filter(|(_, &c)| c != T::zero())
            .map(|(&d, &c)| c * c / (lambda - d))
            .sum();
        self.apex - lambda + tail
    }

    fn norm_tail(&self, lambda: T) -> T {
        self.diag
            .iter()
            .zip(&self.coupling)
            .filter(|(_, &c)| c != T::zero())
            .map(|(&d, &c)| {
                let r = c / (lambda - d);
                r * r
            })
            .sum()
    }

    fn apex_weight(&self, lambda: T) -> T {
        T::one() / (T::one() + self.norm_tail(lambda))
    }
}

/// Arrowhead truncation of `H` for one bare V and the N+θ states on `grid`:
/// apex `m_V0`, diagonal `m_N + ω(kᵢ)`, couplings `vertex_weight · √wᵢ`.
pub fn build_arrowhead<T: Real>(
    params: &ModelParams<T>,
    bare: &BareCoupling<T>,
    grid: &RadialGrid<T>,
) -> Result<ArrowheadMatrix<T>, T> {
    let ff = params.form_factor();
    let (diag, coupling) = grid
        .modes()
        .iter()
        .map(|m| {
            let w = params.omega(m.k);
            let c = vertex_weight(bare.g0, &ff, w, params.mu()) * m.weight.sqrt();
            (params.m_n() + w, c)
        })
        .unzip();
    ArrowheadMatrix::new(bare.m_v0, diag, coupling)
}

/// `s(λ) = apex - λ + Σ cᵢ²/(λ - dᵢ)`. Modes with `cᵢ = 0` are decoupled and
/// contribute no pole.
pub fn secular_eval<T: Real>(a: &ArrowheadMatrix<T>, lambda: T) -> Result<T, T> {
    let rel: T = lit(1e-14);
    for (&d, &c) in a.diag.iter().zip(&a.coupling) {
        if c != T::zero() && (lambda - d).abs() <= rel * d.abs().max(T::one()) {
            return Err(Error::PoleHit { lambda: as_f64(lambda), pole: as_f64(d) });
        }
    }
    Ok(a.secular_unchecked(lambda))
}

/// Bisection for the sign change of the decreasing secular function on the
/// open interval `(lo, hi)`. Endpoints are never evaluated, so they may be
/// poles.
fn bisect<T: Real>(a: &ArrowheadMatrix<T>, mut lo: T, mut hi: T, tol: T) -> T {
    let half: T = lit(0.5);
    loop {
        let mid = lo + (hi - lo) * half;
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return mid;
        }
        let s = a.secular_unchecked(mid);
        if s > T::zero() {
            lo = mid;
        } else if s < T::zero() {
            hi = mid;
        } else {
            return mid;
        }
    }
}

/// The V-like eigenstate: the root of `s` below the first coupled pole.
///
/// Modes with zero coupling are eigenvectors of their own and are skipped.
/// With no coupling at all this is the bare V, `λ = apex` with weight 1.
pub fn lowest_eigenpair<T: Real>(a: &ArrowheadMatrix<T>, tol: T) -> Result<EigenPair<T>, T> {
    let first_pole = a.diag.iter().zip(&a.coupling).find(|(_, &c)| c != T::zero()).map(|(&d, _)| d);
    let Some(pole) = first_pole else {
        return Ok(EigenPair { lambda: a.apex, apex_weight: T::one() });
    };

    let mut step = T::one();
    let mut lo = a.apex.min(pole) - step;
    let mut expansions = 0;
    while !(a.secular_unchecked(lo) > T::zero()) {
        expansions += 1;
        if expansions > 200 || !lo.is_finite() {
            return Err(Error::NoConvergence {
                context: "lowest eigenvalue bracket",
                detail: format!("secular function never positive down to {lo}"),
            });
        }
        step = step + step;
        lo = lo - step;
    }
    let lambda = bisect(a, lo, pole, tol);
    Ok(EigenPair { lambda, apex_weight: a.apex_weight(lambda) })
}

/// All `n + 1` eigenvalues, ascending, one per interlacing interval
/// `(-∞, d₁), (d₁, d₂), …, (dₙ, ∞)`. Requires every coupling nonzero.
pub fn all_eigenvalues<T: Real>(a: &ArrowheadMatrix<T>, tol: T) -> Result<Vec<T>, T> {
    if let Some(i) = a.coupling.iter().position(|&c| c == T::zero()) {
        return Err(Error::InvalidParameter {
            field: "coupling",
            reason: format!("coupling {i} vanishes; interlacing needs every mode coupled"),
        });
    }
    let n = a.n();
    if n == 0 {
        return Ok(vec![a.apex]);
    }
    // Gershgorin margins
    let radius: T = a.coupling.iter().map(|c| c.abs()).sum::<T>() + T::one();
    let bottom = a.apex.min(a.diag[0]) - radius;
    let top = a.apex.max(a.diag[n - 1]) + radius;

    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let lo = if i == 0 { bottom } else { a.diag[i - 1] };
        let hi = if i == n { top } else { a.diag[i] };
        out.push(bisect(a, lo, hi, tol));
    }
    Ok(out)
}
