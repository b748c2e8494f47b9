//! Data standardization under Gaussian, Poisson and negative-binomial null
//! models, plus Benjamini-Hochberg adjustment of p-value lists.

use crate::error::{Error, Result};
use crate::scalar::{mean, Scalar};
use crate::types::{Model, StandardizedVector};

/// Standardize a raw observation vector under the given null model.
///
/// Gaussian data are centered by the sample mean and divided by the sample
/// standard deviation (the 1/(n-1) estimator). Count models center by the
/// sample mean and divide by the working-scale `v0` of the corresponding
/// generalized linear model: `v0^2 = 1/mean` for Poisson and
/// `v0^2 = 1/(mean + mean^2/r)` for the negative binomial with dispersion `r`.
/// Relative to Gaussian scaling this inflates the resulting quadratic
/// statistic by roughly `mean^2` for Poisson data, prioritizing highly
/// expressed features. The returned vector is re-centered to exact zero mean.
///
/// # Errors
///
/// `ConstantInput` when the sample variance is zero, `NegativeCount` when a
/// counts model sees a negative entry, `NonPositiveDispersion` when `r <= 0`.
pub fn standardize<S: Scalar>(x: &[S], model: Model<S>) -> Result<StandardizedVector<S>> {
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "standardization needs at least 2 observations, got {n}"
        )));
    }
    match model {
        Model::Poisson | Model::NegBin { .. } => {
            if let Some(i) = x.iter().position(|v| *v < S::zero()) {
                return Err(Error::NegativeCount(i));
            }
        }
        Model::Gaussian => {}
    }
    if let Model::NegBin { r } = model {
        if r <= S::zero() {
            return Err(Error::NonPositiveDispersion(r.f64()));
        }
    }

    let mu = mean(x);
    let var: S = x.iter().map(|&v| (v - mu) * (v - mu)).sum::<S>() / S::cast((n - 1) as f64);
    if var == S::zero() {
        return Err(Error::ConstantInput);
    }

    let scale = match model {
        Model::Gaussian => var.sqrt(),
        // v0 = sqrt(1/mean); mean > 0 is implied by non-negative, non-constant counts
        Model::Poisson => (S::one() / mu).sqrt(),
        Model::NegBin { r } => (S::one() / (mu + mu * mu / r)).sqrt(),
    };

    let mut z: Vec<S> = x.iter().map(|&v| (v - mu) / scale).collect();
    // fold any rounding drift back out so downstream quadratic forms see an
    // exactly mean-centered vector
    let drift = mean(&z);
    for v in &mut z {
        *v -= drift;
    }

    Ok(StandardizedVector {
        z,
        mu_hat: mu,
        scale,
        model,
    })
}

/// Benjamini-Hochberg step-up adjustment.
///
/// Returns adjusted p-values in the original input order, clipped to 1.
/// Ties are resolved by a stable sort on the original index.
///
/// # Errors
///
/// `OutOfRange` if any entry lies outside [0, 1].
pub fn bh_adjust(p: &[f64]) -> Result<Vec<f64>> {
    for (i, &v) in p.iter().enumerate() {
        if !(0.0..=1.0).contains(&v) || v.is_nan() {
            return Err(Error::OutOfRange(i, v));
        }
    }
    let m = p.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p[a].partial_cmp(&p[b]).unwrap().then(a.cmp(&b)));

    // m * p_(i) / i, then a running minimum from the largest rank down
    let mut adjusted = vec![0.0; m];
    let mut running_min = 1.0f64;
    for rank in (0..m).rev() {
        let idx = order[rank];
        let raw = p[idx] * m as f64 / (rank + 1) as f64;
        running_min = running_min.min(raw);
        adjusted[idx] = running_min.min(1.0);
    }
    Ok(adjusted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_symmetric_three_point() {
        // x = [1,2,3]: mean 2, sample sd 1
        let s = standardize(&[1.0f64, 2.0, 3.0], Model::Gaussian).unwrap();
        assert_eq!(s.z, vec![-1.0, 0.0, 1.0]);
        assert_eq!(s.mu_hat, 2.0);
        assert_eq!(s.scale, 1.0);
    }

    #[test]
    fn constant_input_is_an_error() {
        let err = standardize(&[2.0f64, 2.0, 2.0], Model::Gaussian);
        assert_eq!(err.unwrap_err(), Error::ConstantInput);
    }

    #[test]
    fn poisson_scale_inflates_by_mean() {
        // mean 2 => v0^2 = 1/2; Q scales as scale_gauss^2 / v0^2 ~ mean^2 = 4
        let x = [1.0f64, 3.0, 1.0, 3.0];
        let s = standardize(&x, Model::Poisson).unwrap();
        assert_relative_eq!(s.scale * s.scale, 0.5, max_relative = 1e-12);
        let g = standardize(&x, Model::Gaussian).unwrap();
        let q_ratio: f64 = s.z.iter().map(|v| v * v).sum::<f64>()
            / g.z.iter().map(|v| v * v).sum::<f64>();
        // sample variance of x is 4/3, so the ratio is var/v0^2 = (4/3)/(1/2)
        assert_relative_eq!(q_ratio, (4.0 / 3.0) / 0.5, max_relative = 1e-12);
    }

    #[test]
    fn negbin_scale_matches_closed_form() {
        let x = [0.0f64, 4.0, 2.0, 2.0];
        let r = 5.0;
        let s = standardize(&x, Model::NegBin { r }).unwrap();
        let mu = 2.0;
        assert_relative_eq!(
            s.scale * s.scale,
            1.0 / (mu + mu * mu / r),
            max_relative = 1e-12
        );
    }

    #[test]
    fn negative_count_rejected() {
        let err = standardize(&[1.0f64, -1.0, 2.0], Model::Poisson);
        assert_eq!(err.unwrap_err(), Error::NegativeCount(1));
        let err = standardize(&[1.0f64, 2.0, 3.0], Model::NegBin { r: 0.0 });
        assert!(matches!(err.unwrap_err(), Error::NonPositiveDispersion(_)));
    }

    #[test]
    fn z_mean_is_exactly_zero() {
        let x: Vec<f64> = (0..37).map(|i| (i as f64 * 0.618).sin() * 10.0 + 3.0).collect();
        for model in [Model::Gaussian, Model::Poisson] {
            let x = x.iter().map(|v| v.abs()).collect::<Vec<_>>();
            let s = standardize(&x, model).unwrap();
            let m: f64 = s.z.iter().sum::<f64>() / s.z.len() as f64;
            assert!(m.abs() < 1e-10);
        }
    }

    #[test]
    fn bh_hand_checked_cases() {
        // sorted raws: .01*3/1=.03, .02*3/2=.03, .03*3/3=.03 -> all .03
        let adj = bh_adjust(&[0.01, 0.02, 0.03]).unwrap();
        for v in &adj {
            assert_relative_eq!(*v, 0.03, max_relative = 1e-12);
        }
        assert_eq!(bh_adjust(&[1.0]).unwrap(), vec![1.0]);
        // two elements: .01*2/1=.02, .05*2/2=.05
        let adj = bh_adjust(&[0.05, 0.01]).unwrap();
        assert_relative_eq!(adj[0], 0.05, max_relative = 1e-12);
        assert_relative_eq!(adj[1], 0.02, max_relative = 1e-12);
    }

    #[test]
    fn bh_rejects_out_of_range() {
        assert!(matches!(
            bh_adjust(&[0.5, 1.2]),
            Err(Error::OutOfRange(1, _))
        ));
        assert!(bh_adjust(&[0.5, f64::NAN]).is_err());
    }

    #[test]
    fn bh_never_decreases_and_is_idempotent() {
        let p = [0.9, 0.001, 0.2, 0.2, 0.04, 1.0, 0.33];
        let adj = bh_adjust(&p).unwrap();
        for (raw, a) in p.iter().zip(&adj) {
            assert!(a >= raw);
        }
        let twice = bh_adjust(&adj).unwrap();
        for (a, b) in adj.iter().zip(&twice) {
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn generic_over_f32() {
        let s = standardize(&[1.0f32, 2.0, 3.0], Model::Gaussian).unwrap();
        assert_eq!(s.z, vec![-1.0f32, 0.0, 1.0]);
    }
}
