//! Conjugate-gradient solve of the CAR precision system (I - rho W) u = b.

use crate::error::{Error, Result};
use crate::graph::SparseSymmetric;
use crate::scalar::{dot, sum_sq, Scalar};

/// Solve (I - rho W) u = b for symmetric W with spectral radius <= 1 and
/// rho in (0, 1), so the system matrix is positive definite. Iterates until
/// the relative residual drops below `tol`.
pub fn solve_car_system<S: Scalar>(
    w: &SparseSymmetric<S>,
    rho: S,
    b: &[S],
    tol: S,
    max_iter: usize,
) -> Result<Vec<S>> {
    let n = w.n;
    debug_assert_eq!(b.len(), n);
    let b_norm = sum_sq(b).sqrt();
    if b_norm == S::zero() {
        return Ok(vec![S::zero(); n]);
    }

    let mut tmp = vec![S::zero(); n];
    let mut apply = |v: &[S], out: &mut [S], tmp: &mut [S]| {
        w.matvec_into(v, tmp);
        for i in 0..n {
            out[i] = v[i] - rho * tmp[i];
        }
    };

    let mut x = vec![S::zero(); n];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut ap = vec![S::zero(); n];
    let mut rs = sum_sq(&r);

    for _ in 0..max_iter {
        if rs.sqrt() / b_norm < tol {
            return Ok(x);
        }
        apply(&p, &mut ap, &mut tmp);
        let alpha = rs / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rs_new = sum_sq(&r);
        let beta = rs_new / rs;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
        rs = rs_new;
    }
    if rs.sqrt() / b_norm < tol {
        return Ok(x);
    }
    Err(Error::SolverDivergence {
        residual: (rs.sqrt() / b_norm).f64(),
        iterations: max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_two_by_two_by_hand() {
        // W = [[0,1],[1,0]], rho = 0.5: (I - 0.5 W) u = [1, 0] has u = [4/3, 2/3]
        let w = SparseSymmetric {
            n: 2,
            diag: vec![0.0, 0.0],
            off: vec![(0, 1, 1.0f64)],
        };
        let u = solve_car_system(&w, 0.5, &[1.0, 0.0], 1e-12, 100).unwrap();
        assert!((u[0] - 4.0 / 3.0).abs() < 1e-10);
        assert!((u[1] - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn zero_rhs_short_circuits() {
        let w = SparseSymmetric::<f64>::identity(3);
        let u = solve_car_system(&w, 0.5, &[0.0; 3], 1e-10, 10).unwrap();
        assert_eq!(u, vec![0.0; 3]);
    }

    #[test]
    fn reports_divergence_when_capped() {
        let w = SparseSymmetric {
            n: 2,
            diag: vec![0.0, 0.0],
            off: vec![(0, 1, 1.0f64)],
        };
        let err = solve_car_system(&w, 0.999, &[1.0, 0.0], 1e-15, 1);
        assert!(matches!(err, Err(Error::SolverDivergence { .. })));
    }
}
