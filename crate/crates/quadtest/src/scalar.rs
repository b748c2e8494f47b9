//! Floating-point scalar abstraction: f32 or f64.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Scalar type all numeric kernels are generic over.
///
/// Implemented by `f32` and `f64`. Inference-layer quantities (p-values,
/// moment-matched tail probabilities) are always computed in `f64`; the
/// conversions below bridge the two worlds.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssignOps + std::iter::Sum<Self> + rustfft::FftNum
{
    /// Convert an `f64` constant into this scalar type.
    fn cast(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable as scalar")
    }

    /// Widen to `f64`.
    fn f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssignOps
        + std::iter::Sum<T>
        + rustfft::FftNum
{
}

/// Sum of squares of a slice.
pub fn sum_sq<S: Scalar>(v: &[S]) -> S {
    v.iter().map(|&x| x * x).sum()
}

/// Dot product of two equal-length slices.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Arithmetic mean of a non-empty slice.
pub fn mean<S: Scalar>(v: &[S]) -> S {
    v.iter().copied().sum::<S>() / S::cast(v.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn casts_round_trip() {
        assert_eq!(<f64 as Scalar>::cast(1.5), 1.5);
        assert_eq!(<f32 as Scalar>::cast(1.5), 1.5f32);
        assert_eq!(2.5f32.f64(), 2.5f64);
    }

    #[test]
    fn dot_and_mean() {
        assert_eq!(dot(&[1.0, 2.0], &[3.0, 4.0]), 11.0);
        assert_eq!(mean(&[1.0f64, 2.0, 3.0]), 2.0);
        assert_eq!(sum_sq(&[3.0f64, 4.0]), 25.0);
    }
}
