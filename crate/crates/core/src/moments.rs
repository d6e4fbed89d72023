//! Method-of-moments estimation of `(α, γ)` with the number of looks known.
//!
//! Matching the sample moments of order 1 and 1/2 to their G⁰ᵢ expressions
//! eliminates γ and leaves one equation in α:
//!
//! ```text
//! m1 Γ(-α)Γ(L)L / (Γ(-α-1)Γ(L+1)) = m½² Γ²(-α)Γ²(L)L / (Γ²(-α-½)Γ²(L+½))
//! ```
//!
//! It is solved by bisection on the log-difference of the two sides, and γ̂
//! follows from the first-moment equation.

use crate::error::{Error, Result};
use crate::gi0::check_looks;
use crate::special::ln_gamma;

/// `n⁻¹ Σ zᵢ^r`.
pub fn sample_moment(data: &[f64], r: f64) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptySample);
    }
    let sum: f64 = if r == 1.0 {
        data.iter().sum()
    } else if r == 0.5 {
        data.iter().map(|z| z.sqrt()).sum()
    } else {
        data.iter().map(|z| z.powf(r)).sum()
    };
    Ok(sum / data.len() as f64)
}

/// First and half-order sample moments of one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPair {
    pub m1: f64,
    pub m_half: f64,
    pub n: usize,
}

impl MomentPair {
    pub fn new(m1: f64, m_half: f64, n: usize) -> Result<Self> {
        if !(m1 > 0.0 && m_half > 0.0) || !m1.is_finite() || !m_half.is_finite() {
            return Err(Error::DegenerateSample("sample moments must be positive and finite"));
        }
        // Jensen: m½² ≤ m1, up to rounding
        if m_half * m_half > m1 * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "m_half^2 = {} exceeds m1 = {m1}",
                m_half * m_half
            )));
        }
        Ok(Self { m1, m_half, n })
    }

    pub fn from_sample(data: &[f64]) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptySample);
        }
        let (mut s1, mut sh) = (0.0, 0.0);
        for &z in data {
            s1 += z;
            sh += z.sqrt();
        }
        let n = data.len() as f64;
        Self::new(s1 / n, sh / n, data.len())
    }
}

/// Estimated parameters; `converged == false` means the moment equation had
/// no root on the bracket and `alpha_hat` sits on a bracket end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamEstimate {
    pub alpha_hat: f64,
    pub gamma_hat: f64,
    pub converged: bool,
}

/// Bracket, tolerance and sample-size settings for the estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimator {
    pub alpha_min: f64,
    /// Upper bracket end is `-1 - epsilon`.
    pub epsilon: f64,
    /// Stop once `|g(α)|` falls below this.
    pub tolerance: f64,
    pub max_iter: usize,
    pub n_min: usize,
}

impl Default for MomentEstimator {
    fn default() -> Self {
        Self { alpha_min: -60.0, epsilon: 0.01, tolerance: 1e-8, max_iter: 200, n_min: 20 }
    }
}

/// `g(α)`: log of the left side minus log of the right side of the moment
/// equation. Decreasing in α on `(-∞, -1)`, with `g → -∞` as `α → -1`.
#[derive(Debug, Clone, Copy)]
pub struct MomentEquation {
    offset: f64,
}

impl MomentEquation {
    pub fn new(m: &MomentPair, looks: f64) -> Self {
        let offset = (m.m1 / (m.m_half * m.m_half)).ln() - looks.ln() - 2.0 * ln_gamma(looks)
            + 2.0 * ln_gamma(looks + 0.5);
        Self { offset }
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        // Γ(-α)/Γ(-α-1) = -α-1
        self.offset + (-alpha - 1.0).ln() - 2.0 * ln_gamma(-alpha) + 2.0 * ln_gamma(-alpha - 0.5)
    }
}

impl MomentEstimator {
    pub fn upper_bracket(&self) -> f64 {
        -1.0 - self.epsilon
    }

    /// Root of the moment equation on `[alpha_min, -1 - epsilon]`.
    pub fn solve_alpha(&self, m: &MomentPair, looks: f64) -> Result<f64> {
        check_looks(looks)?;
        let g = MomentEquation::new(m, looks);
        let (mut lo, mut hi) = (self.alpha_min, self.upper_bracket());
        let (g_lo, g_hi) = (g.eval(lo), g.eval(hi));
        if g_lo.abs() < self.tolerance {
            return Ok(lo);
        }
        if g_hi.abs() < self.tolerance {
            return Ok(hi);
        }
        if !(g_lo.signum() != g_hi.signum()) || !g_lo.is_finite() || !g_hi.is_finite() {
            return Err(Error::NoRoot { lo, hi });
        }
        let lo_positive = g_lo > 0.0;
        let mut mid = 0.5 * (lo + hi);
        for _ in 0..self.max_iter {
            mid = 0.5 * (lo + hi);
            let g_mid = g.eval(mid);
            if g_mid.abs() < self.tolerance || mid == lo || mid == hi {
                break;
            }
            if (g_mid > 0.0) == lo_positive {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(mid)
    }

    /// γ̂ from the first-moment equation: `m1 L Γ(-α̂)Γ(L) / (Γ(-α̂-1)Γ(L+1)) = m1 (-α̂ - 1)`.
    pub fn estimate_gamma(&self, alpha_hat: f64, m1: f64, looks: f64) -> Result<f64> {
        estimate_gamma(alpha_hat, m1, looks)
    }

    pub fn estimate_params(&self, data: &[f64], looks: f64) -> Result<ParamEstimate> {
        if data.len() < self.n_min {
            return Err(Error::SampleTooSmall { len: data.len(), min: self.n_min });
        }
        let m = MomentPair::from_sample(data)?;
        self.estimate_from_moments(&m, looks)
    }

    pub fn estimate_from_moments(&self, m: &MomentPair, looks: f64) -> Result<ParamEstimate> {
        match self.solve_alpha(m, looks) {
            Ok(alpha_hat) => Ok(ParamEstimate {
                alpha_hat,
                gamma_hat: estimate_gamma(alpha_hat, m.m1, looks)?,
                converged: true,
            }),
            Err(Error::NoRoot { lo, hi }) => {
                let g = MomentEquation::new(m, looks);
                let alpha_hat = if g.eval(lo).abs() <= g.eval(hi).abs() { lo } else { hi };
                Ok(ParamEstimate {
                    alpha_hat,
                    gamma_hat: estimate_gamma(alpha_hat, m.m1, looks)?,
                    converged: false,
                })
            }
            Err(e) => Err(e),
        }
    }
}

pub fn estimate_gamma(alpha_hat: f64, m1: f64, looks: f64) -> Result<f64> {
    if !(alpha_hat < -1.0) {
        return Err(Error::Domain(format!("gamma estimate requires alpha < -1, got {alpha_hat}")));
    }
    check_looks(looks)?;
    Ok(m1 * (-alpha_hat - 1.0))
}

/// [`MomentEstimator::solve_alpha`] with default settings.
pub fn solve_alpha(m: &MomentPair, looks: f64) -> Result<f64> {
    MomentEstimator::default().solve_alpha(m, looks)
}

/// [`MomentEstimator::estimate_params`] with default settings.
pub fn estimate_params(data: &[f64], looks: f64) -> Result<ParamEstimate> {
    MomentEstimator::default().estimate_params(data, looks)
}
