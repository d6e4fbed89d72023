//! The multiplicative speckle model.
//!
//! Backscatter `X ~ Γ⁻¹(α, γ)` (reciprocal Gamma, density
//! `x^(α-1) e^(-γ/x) / (γ^α Γ(-α))`), speckle `Y ~ Γ(L, L)` (unit mean), and
//! the observed intensity `Z = X·Y ~ G⁰ᵢ(α, γ, L)` with density
//!
//! ```text
//! f(z) = L^L Γ(L-α) z^(L-1) / (γ^α Γ(L) Γ(-α) (γ + L z)^(L-α)),   z > 0
//! ```
//!
//! All densities are evaluated in log space.

use rand::distr::Open01;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::special::ln_gamma;

/// Parameters of the G⁰ᵢ law: roughness `alpha < 0`, scale `gamma > 0`,
/// number of looks `looks >= 1` (non-integer looks are allowed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GI0Params {
    alpha: f64,
    gamma: f64,
    looks: f64,
}

impl GI0Params {
    pub fn new(alpha: f64, gamma: f64, looks: f64) -> Result<Self> {
        if !(alpha < 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be negative, got {alpha}")));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!("gamma must be positive, got {gamma}")));
        }
        check_looks(looks)?;
        Ok(Self { alpha, gamma, looks })
    }

    /// Unit-mean parameterisation: `gamma = unit_mean_gamma(alpha, looks)`.
    pub fn unit_mean(alpha: f64, looks: f64) -> Result<Self> {
        Self::new(alpha, unit_mean_gamma(alpha, looks)?, looks)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn looks(&self) -> f64 {
        self.looks
    }

    /// Log of the z-independent factor `L^L Γ(L-α) / (γ^α Γ(L) Γ(-α))`.
    pub(crate) fn log_norm(&self) -> f64 {
        let (a, g, l) = (self.alpha, self.gamma, self.looks);
        l * l.ln() + ln_gamma(l - a) - a * g.ln() - ln_gamma(l) - ln_gamma(-a)
    }
}

pub(crate) fn check_looks(looks: f64) -> Result<()> {
    if !(looks >= 1.0) || !looks.is_finite() {
        return Err(Error::Domain(format!("looks must be >= 1, got {looks}")));
    }
    Ok(())
}

/// Scale that gives the G⁰ᵢ(α, γ, L) law unit mean.
///
/// `Γ(-α)Γ(L)L / (Γ(-α-1)Γ(L+1))` reduces to `-α - 1` for every `L`, and that
/// reduced form is what is returned.
pub fn unit_mean_gamma(alpha: f64, looks: f64) -> Result<f64> {
    if !(alpha < -1.0) {
        return Err(Error::Domain(format!("unit mean requires alpha < -1, got {alpha}")));
    }
    check_looks(looks)?;
    Ok(-alpha - 1.0)
}

/// `ln f(z)`; `-inf` where the density vanishes (`z = 0` with `L > 1`).
pub fn gi0_log_density(z: f64, p: &GI0Params) -> f64 {
    log_density_with_norm(z, p, p.log_norm())
}

#[inline]
pub(crate) fn log_density_with_norm(z: f64, p: &GI0Params, log_norm: f64) -> f64 {
    let l = p.looks;
    let kernel = if z == 0.0 {
        if l == 1.0 {
            0.0
        } else {
            return f64::NEG_INFINITY;
        }
    } else {
        (l - 1.0) * z.ln()
    };
    log_norm + kernel - (l - p.alpha) * (p.gamma + l * z).ln()
}

pub fn gi0_density(z: f64, p: &GI0Params) -> f64 {
    gi0_log_density(z, p).exp()
}

/// `E[Z^r]`, or `+inf` when `-α <= r`.
pub fn gi0_moment(r: f64, p: &GI0Params) -> f64 {
    let (a, g, l) = (p.alpha, p.gamma, p.looks);
    if -a <= r {
        return f64::INFINITY;
    }
    (r * (g / l).ln() + ln_gamma(-a - r) + ln_gamma(l + r) - ln_gamma(-a) - ln_gamma(l)).exp()
}

/// Standard Gamma variate (unit rate) by Marsaglia & Tsang, with the
/// `U^(1/k)` boost for shapes below one.
pub(crate) fn standard_gamma(shape: f64, rng: &mut RngStream) -> f64 {
    if shape < 1.0 {
        let u: f64 = rng.sample(Open01);
        return standard_gamma(shape + 1.0, rng) * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let v_cbrt = 1.0 + c * x;
        if v_cbrt <= 0.0 {
            continue;
        }
        let v = v_cbrt * v_cbrt * v_cbrt;
        let u: f64 = rng.sample(Open01);
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// Speckle draws `Y ~ Γ(L, L)`: mean 1, variance `1/L`.
pub fn sample_gamma_speckle(looks: f64, n: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    check_looks(looks)?;
    Ok((0..n).map(|_| standard_gamma(looks, rng) / looks).collect())
}

/// Backscatter draws `X = γ / W` with `W ~ Γ(-α, 1)`.
pub fn sample_reciprocal_gamma(
    alpha: f64,
    gamma: f64,
    n: usize,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    if !(alpha < 0.0) || !(gamma > 0.0) {
        return Err(Error::Domain(format!(
            "reciprocal gamma needs alpha < 0 and gamma > 0, got ({alpha}, {gamma})"
        )));
    }
    Ok((0..n).map(|_| gamma / standard_gamma(-alpha, rng)).collect())
}

/// G⁰ᵢ draws as the product of one backscatter and one speckle draw per pixel.
pub fn sample_gi0(p: &GI0Params, n: usize, rng: &mut RngStream) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    fill_gi0(p, rng, &mut out, n);
    out
}

pub(crate) fn fill_gi0(p: &GI0Params, rng: &mut RngStream, out: &mut Vec<f64>, n: usize) {
    let shape = -p.alpha;
    for _ in 0..n {
        let x = p.gamma / standard_gamma(shape, rng);
        let y = standard_gamma(p.looks, rng) / p.looks;
        out.push(x * y);
    }
}
