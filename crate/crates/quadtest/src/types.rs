//! Domain types shared by every module: locations, feature matrices,
//! standardized vectors, null moments, and per-feature test results.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Boundary condition of a regular lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Torus,
}

/// Descriptor for locations arranged on a regular `rows x cols` lattice,
/// enumerated row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    pub boundary: Boundary,
}

impl GridSpec {
    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The spatial domain: `n` points in R^d (d in {1, 2, 3}), optionally carrying
/// a regular-grid descriptor when the points form a lattice.
#[derive(Debug, Clone)]
pub struct SpatialLocations<S> {
    dim: usize,
    coords: Vec<S>, // n x dim, row-major
    grid: Option<GridSpec>,
}

impl<S: Scalar> SpatialLocations<S> {
    /// Build from explicit points. All points must share one dimension in {1, 2, 3}.
    pub fn from_points(points: &[Vec<S>]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 locations, got {}",
                points.len()
            )));
        }
        let dim = points[0].len();
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidInput(format!(
                "location dimension must be 1, 2 or 3, got {dim}"
            )));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            let _ = i;
            coords.extend_from_slice(p);
        }
        Ok(Self {
            dim,
            coords,
            grid: None,
        })
    }

    /// Lattice locations enumerated row-major; point (r, c) has coordinates (c, r).
    pub fn grid(rows: usize, cols: usize, boundary: Boundary) -> Result<Self> {
        if rows * cols < 2 {
            return Err(Error::InvalidInput(
                "grid must contain at least 2 cells".into(),
            ));
        }
        let mut coords = Vec::with_capacity(rows * cols * 2);
        for r in 0..rows {
            for c in 0..cols {
                coords.push(S::cast(c as f64));
                coords.push(S::cast(r as f64));
            }
        }
        Ok(Self {
            dim: 2,
            coords,
            grid: Some(GridSpec {
                rows,
                cols,
                boundary,
            }),
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grid_spec(&self) -> Option<GridSpec> {
        self.grid
    }

    pub fn point(&self, i: usize) -> &[S] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Squared Euclidean distance between points i and j.
    pub fn distance2(&self, i: usize, j: usize) -> S {
        self.point(i)
            .iter()
            .zip(self.point(j))
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum()
    }

    /// Squared distance wrapping around the torus when this is a periodic grid;
    /// falls back to the Euclidean distance otherwise.
    pub fn wrapped_distance2(&self, i: usize, j: usize) -> S {
        match self.grid {
            Some(g) if g.boundary == Boundary::Torus => {
                let (ri, ci) = (i / g.cols, i % g.cols);
                let (rj, cj) = (j / g.cols, j % g.cols);
                let dr = ri.abs_diff(rj);
                let dc = ci.abs_diff(cj);
                let dr = dr.min(g.rows - dr) as f64;
                let dc = dc.min(g.cols - dc) as f64;
                S::cast(dr * dr + dc * dc)
            }
            _ => self.distance2(i, j),
        }
    }
}

/// Feature-by-location value matrix.
#[derive(Debug, Clone)]
pub struct FeatureMatrix<S> {
    n_features: usize,
    n_locations: usize,
    values: Vec<S>, // n_features x n_locations, row-major
    pub feature_ids: Vec<String>,
    pub counts_flag: bool,
}

impl<S: Scalar> FeatureMatrix<S> {
    pub fn new(
        values: Vec<S>,
        n_features: usize,
        n_locations: usize,
        feature_ids: Vec<String>,
        counts_flag: bool,
    ) -> Result<Self> {
        if values.len() != n_features * n_locations {
            return Err(Error::DimensionMismatch {
                expected: n_features * n_locations,
                got: values.len(),
            });
        }
        if feature_ids.len() != n_features {
            return Err(Error::DimensionMismatch {
                expected: n_features,
                got: feature_ids.len(),
            });
        }
        if counts_flag {
            for (i, v) in values.iter().enumerate() {
                if *v < S::zero() || v.fract() != S::zero() {
                    return Err(Error::InvalidInput(format!(
                        "counts_flag set but entry {i} is not a non-negative integer"
                    )));
                }
            }
        }
        Ok(Self {
            n_features,
            n_locations,
            values,
            feature_ids,
            counts_flag,
        })
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_locations(&self) -> usize {
        self.n_locations
    }

    pub fn feature(&self, i: usize) -> &[S] {
        &self.values[i * self.n_locations..(i + 1) * self.n_locations]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }
}

/// Null variance model used for standardization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model<S> {
    Gaussian,
    Poisson,
    NegBin { r: S },
}

/// A zero-mean standardized observation vector with its scaling metadata.
#[derive(Debug, Clone)]
pub struct StandardizedVector<S> {
    pub z: Vec<S>,
    /// Null mean estimate (the sample mean).
    pub mu_hat: S,
    /// Divisor applied to the centered data.
    pub scale: S,
    pub model: Model<S>,
}

impl<S: Scalar> StandardizedVector<S> {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

/// First two moments (and the kurtosis input) of the Q-statistic null.
#[derive(Debug, Clone, Copy)]
pub struct NullMoments<S> {
    /// E[Q] = tr(K).
    pub mean: S,
    /// Var(Q) = (mu4 - 3) sum_i K_ii^2 + 2 tr(K^2).
    pub variance: S,
    /// Fourth moment of the standardized data; 3 for Gaussian.
    pub kurtosis_mu4: S,
}

/// P-value method identifiers carried on results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PValueKind {
    Normal,
    Welch,
    Liu,
    Permutation,
}

impl std::fmt::Display for PValueKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PValueKind::Normal => "normal",
            PValueKind::Welch => "welch",
            PValueKind::Liu => "liu",
            PValueKind::Permutation => "permutation",
        };
        f.write_str(s)
    }
}

/// Per-feature test outcome. Reported in f64 regardless of the compute scalar.
#[derive(Debug, Clone)]
pub struct TestResult {
    pub feature_id: String,
    pub q: f64,
    pub z_score: f64,
    pub p_value: f64,
    pub p_adjusted: Option<f64>,
    pub method: PValueKind,
    pub kernel_name: String,
    /// Set when the feature failed standardization (constant input); such
    /// features carry p = 1 and NaN statistics.
    pub degenerate: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_enumerates_row_major() {
        let locs: SpatialLocations<f64> = SpatialLocations::grid(2, 3, Boundary::Open).unwrap();
        assert_eq!(locs.len(), 6);
        assert_eq!(locs.point(0), &[0.0, 0.0]);
        assert_eq!(locs.point(1), &[1.0, 0.0]);
        assert_eq!(locs.point(3), &[0.0, 1.0]);
    }

    #[test]
    fn torus_distance_wraps() {
        let locs: SpatialLocations<f64> = SpatialLocations::grid(1, 4, Boundary::Torus).unwrap();
        // points 0 and 3 are adjacent through the wrap
        assert_eq!(locs.wrapped_distance2(0, 3), 1.0);
        assert_eq!(locs.distance2(0, 3), 9.0);
    }

    #[test]
    fn mismatched_point_dims_rejected() {
        let res: Result<SpatialLocations<f64>> =
            SpatialLocations::from_points(&[vec![0.0, 1.0], vec![2.0]]);
        assert!(matches!(res, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn counts_flag_validates_integrality() {
        let err = FeatureMatrix::new(vec![1.0, 2.5], 1, 2, vec!["g".into()], true);
        assert!(err.is_err());
        let ok = FeatureMatrix::new(vec![1.0, 2.0], 1, 2, vec!["g".into()], true);
        assert!(ok.is_ok());
    }
}
