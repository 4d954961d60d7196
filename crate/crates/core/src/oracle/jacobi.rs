//! Cyclic Jacobi rotations for dense symmetric matrices. Slow but
//! structure-agnostic, which is what a cross-check wants.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

use super::arrowhead::ArrowheadMatrix;

pub const MAX_MODES: usize = 256;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a dense symmetric matrix, ascending.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_eigenvalues<T: Real>(mut a: Vec<Vec<T>>) -> Result<Vec<T>, T> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParameter { field: "matrix", reason: "not square".into() });
    }
    let frob: T = a.iter().flatten().map(|&v| v * v).sum::<T>().sqrt();
    let target = T::epsilon() * frob;
    let off = |a: &[Vec<T>]| -> T {
        let mut s = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                s = s + a[p][q] * a[p][q];
            }
        }
        s.sqrt()
    };

    let half: T = lit(0.5);
    for _ in 0..MAX_SWEEPS {
        if off(&a) <= target {
            let mut ev: Vec<T> = (0..n).map(|i| a[i][i]).collect();
            ev.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
            return Ok(ev);
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == T::zero() {
                    continue;
                }
                let (app, aqq) = (a[p][p], a[q][q]);
                let theta = (aqq - app) * half / apq;
                let t = {
                    let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = T::zero();
                a[q][p] = T::zero();
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let (arp, arq) = (a[r][p], a[r][q]);
                    let new_p = c * arp - s * arq;
                    let new_q = s * arp + c * arq;
                    a[r][p] = new_p;
                    a[p][r] = new_p;
                    a[r][q] = new_q;
                    a[q][r] = new_q;
                }
            }
        }
    }
    Err(Error::NoConvergence {
        context: "Jacobi eigenvalue sweeps",
        detail: format!("off-diagonal norm {} after {MAX_SWEEPS} sweeps", off(&a)),
    })
}

/// Dense eigenvalues of an arrowhead matrix with at most [`MAX_MODES`] modes.
pub fn dense_cross_check<T: Real>(a: &ArrowheadMatrix<T>) -> Result<Vec<T>, T> {
    if a.n() > MAX_MODES {
        return Err(Error::MatrixTooLarge { n: a.n(), max: MAX_MODES });
    }
    symmetric_eigenvalues(a.to_dense())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let a = ArrowheadMatrix::new(0.0, vec![2.0], vec![1.0]).unwrap();
        let ev = dense_cross_check(&a).unwrap();
        assert!((ev[0] - (1.0 - 2f64.sqrt())).abs() < 1e-14);
        assert!((ev[1] - (1.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn diagonal_is_sorted() {
        let a = ArrowheadMatrix::new(2.5, vec![1.0, 2.0, 3.0], vec![0.0; 3]).unwrap();
        assert_eq!(dense_cross_check(&a).unwrap(), vec![1.0, 2.0, 2.5, 3.0]);
    }

    #[test]
    fn generic_symmetric() {
        // eigenvalues of [[2,1,0],[1,2,1],[0,1,2]] are 2-√2, 2, 2+√2
        let m = vec![vec![2.0, 1.0, 0.0], vec![1.0, 2.0, 1.0], vec![0.0, 1.0, 2.0]];
        let ev = symmetric_eigenvalues(m).unwrap();
        let r = 2f64.sqrt();
        for (g, w) in ev.iter().zip([2.0 - r, 2.0, 2.0 + r]) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn size_cap() {
        let n = MAX_MODES + 1;
        let diag: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let a = ArrowheadMatrix::new(0.0, diag, vec![1.0; n]).unwrap();
        assert!(matches!(dense_cross_check(&a), Err(Error::MatrixTooLarge { .. })));
    }
}
