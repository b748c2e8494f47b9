//! Flat row-major dense matrix with just enough linear algebra for kernels:
//! matvec, symmetrization checks, and a symmetric eigensolver. Decompositions
//! run in f64 internally regardless of the storage scalar.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use nalgebra::DMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    n_rows: usize,
    n_cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            data: vec![S::zero(); n_rows * n_cols],
        }
    }

    pub fn from_rows(n_rows: usize, n_cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != n_rows * n_cols {
            return Err(Error::DimensionMismatch {
                expected: n_rows * n_cols,
                got: data.len(),
            });
        }
        Ok(Self {
            n_rows,
            n_cols,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.n_cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n_cols + j] = v;
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn matvec_into(&self, v: &[S], out: &mut [S]) {
        debug_assert_eq!(v.len(), self.n_cols);
        debug_assert_eq!(out.len(), self.n_rows);
        for (i, o) in out.iter_mut().enumerate() {
            *o = crate::scalar::dot(self.row(i), v);
        }
    }

    pub fn matvec(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.n_rows];
        self.matvec_into(v, &mut out);
        out
    }

    pub fn trace(&self) -> S {
        (0..self.n_rows.min(self.n_cols))
            .map(|i| self.get(i, i))
            .sum()
    }

    pub fn frobenius_sq(&self) -> S {
        crate::scalar::sum_sq(&self.data)
    }

    pub fn diag_sq_sum(&self) -> S {
        (0..self.n_rows.min(self.n_cols))
            .map(|i| {
                let d = self.get(i, i);
                d * d
            })
            .sum()
    }

    pub fn row_sums(&self) -> Vec<S> {
        (0..self.n_rows)
            .map(|i| self.row(i).iter().copied().sum())
            .collect()
    }

    /// The doubly-centered matrix H K H with H = I - 11^T/n.
    pub fn center(&self) -> Self {
        let n = self.n_rows;
        debug_assert_eq!(n, self.n_cols);
        let nf = S::cast(n as f64);
        let row_means: Vec<S> = self.row_sums().iter().map(|&s| s / nf).collect();
        let total: S = row_means.iter().copied().sum::<S>() / nf;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(i, j) - row_means[i] - row_means[j] + total);
            }
        }
        out
    }

    fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n_rows, self.n_cols, |i, j| self.get(i, j).f64())
    }

    /// Eigendecomposition of a symmetric matrix, descending by eigenvalue.
    /// Returns the eigenvalues and the eigenvector matrix with one column per
    /// eigenvalue.
    pub fn symmetric_eigen(&self) -> (Vec<S>, DenseMatrix<S>) {
        let n = self.n_rows;
        debug_assert_eq!(n, self.n_cols);
        let eig = nalgebra::SymmetricEigen::new(self.to_f64());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
        let values = order.iter().map(|&k| S::cast(eig.eigenvalues[k])).collect();
        let mut vectors = DenseMatrix::zeros(n, n);
        for (col, &k) in order.iter().enumerate() {
            for i in 0..n {
                vectors.set(i, col, S::cast(eig.eigenvectors[(i, k)]));
            }
        }
        (values, vectors)
    }

    /// Inverse via LU in f64. Errors if the matrix is numerically singular.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self
            .to_f64()
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("matrix is singular".into()))?;
        let mut out = Self::zeros(self.n_rows, self.n_cols);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                out.set(i, j, S::cast(inv[(i, j)]));
            }
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.n_rows).map(|i| self.get(i, j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matvec_swap() {
        let m = DenseMatrix::from_rows(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(m.matvec(&[1.0, 2.0]), vec![2.0, 1.0]);
        assert_eq!(m.trace(), 0.0);
        assert_eq!(m.frobenius_sq(), 2.0);
    }

    #[test]
    fn symmetric_eigen_of_swap_matrix() {
        let m = DenseMatrix::from_rows(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let (vals, vecs) = m.symmetric_eigen();
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] + 1.0).abs() < 1e-12);
        // eigenvector for +1 is (1,1)/sqrt(2) up to sign
        let v0 = vecs.column(0);
        assert!((v0[0] - v0[1]).abs() < 1e-10);
    }

    #[test]
    fn centering_zeroes_row_sums() {
        let m = DenseMatrix::from_rows(3, 3, vec![4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0])
            .unwrap();
        let c = m.center();
        for s in c.row_sums() {
            assert!(s.abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = DenseMatrix::from_rows(2, 2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let inv = m.inverse().unwrap();
        let prod00 = m.row(0).iter().zip(inv.column(0)).map(|(a, b)| a * b).sum::<f64>();
        assert!((prod00 - 1.0).abs() < 1e-12);
    }
}
