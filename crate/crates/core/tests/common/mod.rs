//! Oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use speckle_edge::gi0::{gi0_density, GI0Params};
use speckle_edge::Window;

/// Adaptive Simpson on `[a, b]`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Density in `t = z / (1 + z)`, which maps `(0, ∞)` onto `(0, 1)`.
pub fn density_on_unit(t: f64, p: &GI0Params) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        return 0.0;
    }
    let z = t / (1.0 - t);
    gi0_density(z, p) / ((1.0 - t) * (1.0 - t))
}

pub fn to_unit(z: f64) -> f64 {
    z / (1.0 + z)
}

/// CDF at each (ascending) point by accumulating quadrature between points.
pub fn cdf_sorted(sorted: &[f64], p: &GI0Params) -> Vec<f64> {
    let f = |t: f64| density_on_unit(t, p);
    let mut acc = 0.0;
    let mut prev = 0.0;
    sorted
        .iter()
        .map(|&z| {
            let t = to_unit(z);
            if t > prev {
                acc += simpson(&f, prev, t, 1e-11);
                prev = t;
            }
            acc
        })
        .collect()
}

/// Two-sided KS distance of a sample from a CDF.
pub fn ks_statistic(sample: &[f64], p: &GI0Params) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let cdf = cdf_sorted(&s, p);
    let n = s.len() as f64;
    cdf.iter()
        .enumerate()
        .map(|(i, &c)| (c - i as f64 / n).abs().max(((i + 1) as f64 / n - c).abs()))
        .fold(0.0, f64::max)
}

/// Midranks by counting: rank = #smaller + (#equal + 1) / 2.
pub fn brute_ranks(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|&x| {
            let less = v.iter().filter(|&&y| y < x).count() as f64;
            let equal = v.iter().filter(|&&y| y == x).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// `(T - E[T]) / sqrt(nm/(N(N-1)) Σ (R - R̄)²)`
pub fn brute_t1(x: &[f64], y: &[f64]) -> Option<f64> {
    let all: Vec<f64> = x.iter().chain(y).copied().collect();
    let r = brute_ranks(&all);
    let (n, m) = (x.len() as f64, y.len() as f64);
    let big_n = n + m;
    let rbar = mean(&r);
    let ss: f64 = r.iter().map(|v| (v - rbar).powi(2)).sum();
    if ss == 0.0 {
        return None;
    }
    let t: f64 = r[..x.len()].iter().sum();
    Some((t - n * rbar) / (n * m / (big_n * (big_n - 1.0)) * ss).sqrt())
}

/// `(N - 1) Σ nᵢ (R̄ᵢ - R̄)² / Σ (Rᵢⱼ - R̄)²`
pub fn brute_kruskal(groups: &[&[f64]]) -> Option<f64> {
    let all: Vec<f64> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    let r = brute_ranks(&all);
    let rbar = mean(&r);
    let ss: f64 = r.iter().map(|v| (v - rbar).powi(2)).sum();
    if ss == 0.0 {
        return None;
    }
    let mut between = 0.0;
    let mut off = 0;
    for g in groups {
        let gr = &r[off..off + g.len()];
        between += g.len() as f64 * (mean(gr) - rbar).powi(2);
        off += g.len();
    }
    Some((all.len() as f64 - 1.0) * between / ss)
}

/// Squared ranks of absolute deviations from each side's own mean.
pub fn brute_tv(x: &[f64], y: &[f64]) -> Option<f64> {
    let (mx, my) = (mean(x), mean(y));
    let dev: Vec<f64> = x.iter().map(|v| (v - mx).abs()).chain(y.iter().map(|v| (v - my).abs())).collect();
    let r2: Vec<f64> = brute_ranks(&dev).iter().map(|r| r * r).collect();
    let (n, m) = (x.len() as f64, y.len() as f64);
    let big_n = n + m;
    let mbar = mean(&r2);
    let ss: f64 = r2.iter().map(|v| (v - mbar).powi(2)).sum();
    if ss == 0.0 {
        return None;
    }
    let t: f64 = r2[..x.len()].iter().sum();
    Some((t - n * mbar) / (n * m / (big_n * (big_n - 1.0)) * ss).sqrt())
}

/// `| |R̄ₓ - R̄ᵧ| - (N+1)/2 |`
pub fn brute_tpe(x: &[f64], y: &[f64]) -> f64 {
    let all: Vec<f64> = x.iter().chain(y).copied().collect();
    let r = brute_ranks(&all);
    let gap = (mean(&r[..x.len()]) - mean(&r[x.len()..])).abs();
    (gap - (all.len() as f64 + 1.0) / 2.0).abs()
}

/// A small sample; `tied` draws from a handful of integers so ties are common.
pub fn small_sample(rng: &mut ChaCha20Rng, len: usize, tied: bool) -> Vec<f64> {
    (0..len)
        .map(|_| if tied { rng.random_range(0..5) as f64 } else { rng.random::<f64>() * 10.0 })
        .collect()
}

pub fn test_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Relative agreement with a floor for statistics that are exactly zero.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

/// Two-region G⁰ᵢ window with unit means on both sides.
pub fn two_region_window(
    alpha_left: f64,
    alpha_right: f64,
    looks: f64,
    rows: usize,
    cols: usize,
    edge: usize,
    seed: u64,
    rep: u64,
) -> Window {
    let c = speckle_edge::CellConfig::new(alpha_left, alpha_right, looks)
        .shape(rows, cols, edge)
        .seed(seed);
    speckle_edge::monte_carlo::generate_window(&c, rep).unwrap()
}
