//! Finite-mode truncation of the V ↔ Nθ sector, solved exactly. Used to
//! check the continuum mass and wavefunction renormalization.

mod arrowhead;
mod grid;
mod jacobi;

pub use arrowhead::{all_eigenvalues, build_arrowhead, lowest_eigenpair, secular_eval, ArrowheadMatrix, EigenPair};
pub use grid::{build_grid, GridScheme, Mode, RadialGrid};
pub use jacobi::{dense_cross_check, symmetric_eigenvalues, MAX_MODES, MAX_SWEEPS};

use crate::error::{Error, Result};
use crate::model::{BareCoupling, ModelParams};
use crate::renorm::{solve_physical_mass, z_from_bare, RenormSettings};
use crate::scalar::{as_f64, Real};

/// Discrete vs continuum comparison at one grid size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow<T> {
    pub n: usize,
    pub lambda: T,
    pub z: T,
    pub lambda_err: T,
    pub z_err: T,
}

/// Lowest arrowhead eigenpair for each `n` against the continuum `m_V` and
/// `Z_V` at the same truncation. `k_max = None` uses the quadrature's upper
/// limit (the sharp support edge, or `40 Λ`).
pub fn convergence_study<T: Real>(
    params: &ModelParams<T>,
    bare: &BareCoupling<T>,
    n_list: &[usize],
    k_max: Option<T>,
    scheme: GridScheme,
    settings: &RenormSettings<T>,
) -> Result<Vec<ConvergenceRow<T>>, T> {
    if !n_list.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter { field: "n_list", reason: "must be strictly increasing".into() });
    }
    let mut quad = settings.quad;
    if k_max.is_some() {
        quad.k_max = k_max;
    }
    let k_top = k_max.unwrap_or_else(|| quad.upper_limit(params));
    let m_v = solve_physical_mass(params, bare, &quad, settings.root_tol)?
        .ok_or(Error::NoBoundState { threshold: as_f64(params.threshold()) })?;
    let z_v = z_from_bare(params, bare.g0, m_v, &quad)?;

    n_list
        .iter()
        .map(|&n| {
            let grid = build_grid(k_top, n, scheme)?;
            let a = build_arrowhead(params, bare, &grid)?;
            let e = lowest_eigenpair(&a, settings.root_tol)?;
            Ok(ConvergenceRow {
                n,
                lambda: e.lambda,
                z: e.apex_weight,
                lambda_err: (e.lambda - m_v).abs(),
                z_err: (e.apex_weight - z_v).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FormFactor;

    #[test]
    fn free_theory_is_exact() {
        let p = ModelParams::reference();
        let rows = convergence_study(
            &p,
            &BareCoupling::new(1.7, 0.0),
            &[4, 16, 64],
            None,
            GridScheme::UniformK,
            &RenormSettings::default(),
        )
        .unwrap();
        for r in rows {
            assert_eq!((r.lambda_err, r.z_err), (0.0, 0.0));
        }
    }

    #[test]
    fn midpoint_errors_decay_monotonically() {
        let p = ModelParams::reference();
        let rows = convergence_study(
            &p,
            &BareCoupling::new(1.8, 5.0),
            &[64, 256, 1024, 4096],
            None,
            GridScheme::UniformK,
            &RenormSettings::default(),
        )
        .unwrap();
        for w in rows.windows(2) {
            assert!(w[1].lambda_err <= w[0].lambda_err, "{rows:?}");
            assert!(w[1].z_err <= w[0].z_err, "{rows:?}");
        }
        assert!(rows[3].lambda_err < 1e-5 && rows[3].z_err < 1e-5, "{rows:?}");
    }

    #[test]
    fn modes_above_sharp_cutoff_decouple() {
        let p = ModelParams::reference();
        let bare = BareCoupling::new(1.8, 5.0);
        let edge = 99f64.sqrt();
        // uniform spacing kept identical below the edge: 64 modes on the
        // support, 128 on twice the range
        let a = build_arrowhead(&p, &bare, &build_grid(edge, 64, GridScheme::UniformK).unwrap()).unwrap();
        let b = build_arrowhead(&p, &bare, &build_grid(2.0 * edge, 128, GridScheme::UniformK).unwrap()).unwrap();
        assert!(b.coupling()[64..].iter().all(|&c| c == 0.0));
        let ea = lowest_eigenpair(&a, 1e-14).unwrap();
        let eb = lowest_eigenpair(&b, 1e-14).unwrap();
        assert!((ea.lambda - eb.lambda).abs() < 1e-12);
        assert!((ea.apex_weight - eb.apex_weight).abs() < 1e-12);
    }

    #[test]
    fn soft_form_factor_converges() {
        let p = ModelParams::new(1.0, 1.0, FormFactor::Exponential { cutoff: 2.0 }).unwrap();
        let rows = convergence_study(
            &p,
            &BareCoupling::new(1.8, 5.0),
            &[256, 1024],
            None,
            GridScheme::GaussLegendreK,
            &RenormSettings::default(),
        )
        .unwrap();
        assert!(rows[1].lambda_err < 1e-9 && rows[1].z_err < 1e-9, "{rows:?}");
    }

    #[test]
    fn rejects_unsorted_sizes() {
        let p = ModelParams::reference();
        let r = convergence_study(
            &p,
            &BareCoupling::new(1.8, 1.0),
            &[64, 16],
            None,
            GridScheme::UniformK,
            &RenormSettings::default(),
        );
        assert!(r.is_err());
    }
}
