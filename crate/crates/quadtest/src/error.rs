//! Error type shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("input vector is constant (zero sample variance)")]
    ConstantInput,
    #[error("negative count at position {0} under a counts model")]
    NegativeCount(usize),
    #[error("dispersion must be positive, got {0}")]
    NonPositiveDispersion(f64),
    #[error("p-value outside [0, 1] at position {0}: {1}")]
    OutOfRange(usize, f64),
    #[error("coincident points at indices {0} and {1}; nearest-neighbor ties are undefined")]
    DuplicatePoints(usize, usize),
    #[error("k = {k} must be smaller than the number of points n = {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("node {0} has zero degree; normalization is undefined")]
    IsolatedNode(usize),
    #[error("degree normalization did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("parent pointers cycle through node {0}")]
    CyclicTree(usize),
    #[error("backend mismatch: {0}")]
    BackendMismatch(&'static str),
    #[error("unsupported Matern smoothness nu = {0}; supported values are 0.5, 1.5, 2.5")]
    UnsupportedNu(f64),
    #[error("iterative solver did not reach tolerance: relative residual {residual:.3e} after {iterations} iterations")]
    SolverDivergence { residual: f64, iterations: usize },
    #[error("CAR autocorrelation rho must lie in (0, 1), got {0}")]
    BadRho(f64),
    #[error("CAR kernels require a symmetric- or double-normalized graph (spectral radius <= 1)")]
    GraphNotNormalized,
    #[error("stationary profile is not point-symmetric at offset ({0}, {1})")]
    AsymmetricProfile(i64, i64),
    #[error("FFT output carries imaginary residual {0:.3e} above tolerance; profile symmetry violated numerically")]
    ImaginaryResidual(f64),
    #[error("exact {0} is unavailable for this backend; use the stochastic estimator")]
    ExactUnavailable(&'static str),
    #[error("dense spectrum requested for n = {n}, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("operation requires a centered spectrum")]
    NotCentered,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("null variance is zero")]
    ZeroVariance,
    #[error("moment matching requires positive traces (tr = {tr:.3e}, tr2 = {tr2:.3e}); route indefinite kernels to the normal or permutation p-value")]
    NonPositiveTrace { tr: f64, tr2: f64 },
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("bad pattern spec: {0}")]
    BadSpec(String),
    #[error("bad simulation parameters: {0}")]
    BadParams(String),
    #[error("feature index {index} out of range for {n_features} features")]
    IndexOutOfRange { index: usize, n_features: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
