//! Likelihood scan: fit G⁰ᵢ by moments on each side of a split and score the
//! split by the joint log-likelihood.

use crate::error::{Error, Result};
use crate::gi0::{log_density_with_norm, GI0Params};
use crate::moments::{MomentEstimator, ParamEstimate};

/// What to do with a side whose moment equation had no root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnconvergedSplit {
    /// Score the split with `-inf`, removing it from the argmax.
    #[default]
    Exclude,
    /// Score the side at the clamped bracket-end estimate.
    ScoreClamped,
}

/// Sum of `ln f(z; α̂, γ̂, L)` over one side.
pub fn side_loglik(data: &[f64], est: &ParamEstimate, looks: f64) -> Result<f64> {
    let p = GI0Params::new(est.alpha_hat, est.gamma_hat, looks)?;
    let norm = p.log_norm();
    Ok(data.iter().map(|&z| log_density_with_norm(z, &p, norm)).sum())
}

fn fit_side(
    data: &[f64],
    looks: f64,
    estimator: &MomentEstimator,
    policy: UnconvergedSplit,
) -> Result<Option<ParamEstimate>> {
    match estimator.estimate_params(data, looks) {
        Ok(est) if est.converged || policy == UnconvergedSplit::ScoreClamped => Ok(Some(est)),
        Ok(_) => Ok(None),
        // an all-zero side has no usable moments
        Err(Error::DegenerateSample(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Joint log-likelihood of a split with per-side moment estimates.
///
/// Returns `-inf` when a side cannot be fitted under `policy`. Sides shorter
/// than the estimator's `n_min` are an error.
pub fn gambini_loglik_with(
    left: &[f64],
    right: &[f64],
    looks: f64,
    estimator: &MomentEstimator,
    policy: UnconvergedSplit,
) -> Result<f64> {
    let (Some(el), Some(er)) = (
        fit_side(left, looks, estimator, policy)?,
        fit_side(right, looks, estimator, policy)?,
    ) else {
        return Ok(f64::NEG_INFINITY);
    };
    Ok(side_loglik(left, &el, looks)? + side_loglik(right, &er, looks)?)
}

/// [`gambini_loglik_with`] using the default estimator and policy.
pub fn gambini_loglik(left: &[f64], right: &[f64], looks: f64) -> Result<f64> {
    gambini_loglik_with(left, right, looks, &MomentEstimator::default(), UnconvergedSplit::default())
}
