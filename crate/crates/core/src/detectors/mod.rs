//! Single-edge detectors for a strip of pixels.
//!
//! Every detector scans candidate split columns `j`, computes a statistic
//! comparing columns `0..j` with columns `j..cols`, and reports the optimizing
//! column: the maximum for the likelihood, Mann-Whitney, Kruskal-Wallis and
//! squared-ranks statistics, the minimum for TPE. Ties go to the smallest `j`.
//! Splits whose statistic is undefined (zero rank variance, unfittable side)
//! are skipped; they show up in the trace as `NaN` (rank methods) or `-inf`
//! (likelihood). A window whose pixels are all equal has no usable split for
//! any rank method, TPE included.

mod gambini;
mod window;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

pub use gambini::{gambini_loglik, gambini_loglik_with, side_loglik, UnconvergedSplit};
pub use rank_tests::{
    kruskal_wallis, mann_whitney_t1, midranks, squared_ranks_tv, tpe_e, RankedSample,
};
pub use window::Window;

use crate::error::{Error, Result};
use crate::moments::MomentEstimator;
use rank_tests::{
    abs_deviations_into, kruskal_from_sums, midranks_into, t1_from_sums, tpe_from_sums,
    tv_from_ranks,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Gambini,
    MannWhitney,
    Kruskal,
    Variance,
    Tpe,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Gambini, Method::MannWhitney, Method::Kruskal, Method::Variance, Method::Tpe];

    pub const NONPARAMETRIC: [Method; 4] =
        [Method::MannWhitney, Method::Kruskal, Method::Variance, Method::Tpe];

    pub fn name(self) -> &'static str {
        match self {
            Method::Gambini => "gambini",
            Method::MannWhitney => "mann_whitney",
            Method::Kruskal => "kruskal",
            Method::Variance => "variance",
            Method::Tpe => "tpe",
        }
    }

    /// TPE is minimized; every other statistic is maximized.
    pub fn minimizes(self) -> bool {
        self == Method::Tpe
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "gambini" => Ok(Method::Gambini),
            "mann_whitney" | "mannwhitney" | "mw" => Ok(Method::MannWhitney),
            "kruskal" | "kruskal_wallis" | "kw" => Ok(Method::Kruskal),
            "variance" | "squared_ranks" => Ok(Method::Variance),
            "tpe" => Ok(Method::Tpe),
            other => Err(Error::Domain(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectOptions {
    /// Number of looks; required by the likelihood detector only.
    pub looks: Option<f64>,
    /// Explicit candidate columns; defaults to `j_min..=cols - j_min`.
    pub candidates: Option<RangeInclusive<usize>>,
    /// Minimum number of columns on each side of a split.
    pub j_min: usize,
    /// Maximize `|T₁|` and `|Tᵥ|` instead of the signed statistics.
    pub absolute: bool,
    pub estimator: MomentEstimator,
    pub unconverged: UnconvergedSplit,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self {
            looks: None,
            candidates: None,
            j_min: 3,
            absolute: false,
            estimator: MomentEstimator::default(),
            unconverged: UnconvergedSplit::default(),
        }
    }
}

impl DetectOptions {
    pub fn with_looks(looks: f64) -> Self {
        Self { looks: Some(looks), ..Self::default() }
    }

    pub fn candidate_range(&self, w: &Window) -> Result<RangeInclusive<usize>> {
        let j_min = self.j_min.max(1);
        if w.cols() < 2 * j_min {
            return Err(Error::InvalidWindow(format!(
                "{} columns leave no split with {j_min} columns per side",
                w.cols()
            )));
        }
        let full = j_min..=w.cols() - j_min;
        match &self.candidates {
            None => Ok(full),
            Some(r) if r.is_empty() => Err(Error::InvalidWindow("empty candidate range".into())),
            Some(r) if full.contains(r.start()) && full.contains(r.end()) => Ok(r.clone()),
            Some(r) => Err(Error::InvalidWindow(format!(
                "candidate range {}..={} outside {}..={}",
                r.start(),
                r.end(),
                full.start(),
                full.end()
            ))),
        }
    }
}

/// Detected edge column and the statistic trace that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeEstimate {
    pub edge_index: usize,
    pub method: Method,
    pub trace: Vec<f64>,
    pub candidates: RangeInclusive<usize>,
}

impl EdgeEstimate {
    /// Statistic value at the detected edge.
    pub fn value(&self) -> f64 {
        self.trace[self.edge_index - self.candidates.start()]
    }
}

/// Position of the optimum among finite entries, smallest index on ties.
fn optimum(trace: &[f64], minimize: bool) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in trace.iter().enumerate() {
        if !v.is_finite() {
            continue;
        }
        let better = match best {
            None => true,
            Some((_, b)) => {
                if minimize {
                    v < b
                } else {
                    v > b
                }
            }
        };
        if better {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

pub fn detect_edge(w: &Window, method: Method, opts: &DetectOptions) -> Result<EdgeEstimate> {
    let candidates = opts.candidate_range(w)?;
    let trace = compute_trace(w, method, opts, &candidates)?;
    let best = optimum(&trace, method.minimizes()).ok_or(Error::DetectionFailed)?;
    Ok(EdgeEstimate { edge_index: candidates.start() + best, method, trace, candidates })
}

/// The per-candidate statistic values of [`detect_edge`], one per column in
/// the candidate range.
pub fn statistic_trace(w: &Window, method: Method, opts: &DetectOptions) -> Result<Vec<f64>> {
    let candidates = opts.candidate_range(w)?;
    compute_trace(w, method, opts, &candidates)
}

fn compute_trace(
    w: &Window,
    method: Method,
    opts: &DetectOptions,
    candidates: &RangeInclusive<usize>,
) -> Result<Vec<f64>> {
    match method {
        Method::Gambini => gambini_trace(w, opts, candidates),
        Method::Variance => variance_trace(w, opts, candidates),
        Method::MannWhitney | Method::Kruskal | Method::Tpe => {
            Ok(rank_sum_trace(w, method, opts, candidates))
        }
    }
}

fn gambini_trace(
    w: &Window,
    opts: &DetectOptions,
    candidates: &RangeInclusive<usize>,
) -> Result<Vec<f64>> {
    let looks = opts.looks.ok_or(Error::MissingLooks)?;
    let (mut left, mut right) = (Vec::new(), Vec::new());
    candidates
        .clone()
        .map(|j| {
            w.split_into(j, &mut left, &mut right);
            gambini_loglik_with(&left, &right, looks, &opts.estimator, opts.unconverged)
        })
        .collect()
}

/// Mann-Whitney, Kruskal-Wallis and TPE depend on a split only through the
/// left rank sum, and the combined sample is the whole window at every split,
/// so the window is ranked once and scanned with column prefix sums.
fn rank_sum_trace(
    w: &Window,
    method: Method,
    opts: &DetectOptions,
    candidates: &RangeInclusive<usize>,
) -> Vec<f64> {
    let big_n = w.len();
    let mut ranks = vec![0.0; big_n];
    let ties = window_midranks(w.pixels(), &mut ranks);
    let all_tied = ranks.windows(2).all(|p| p[0] == p[1]);
    let sum_sq: f64 = ranks.iter().map(|r| r * r).sum();
    let total = ranks.iter().sum::<f64>();

    let cols = w.cols();
    let mut prefix = vec![0.0; cols + 1];
    for c in 0..cols {
        let col_sum: f64 = (0..w.rows()).map(|r| ranks[r * cols + c]).sum();
        prefix[c + 1] = prefix[c] + col_sum;
    }

    candidates
        .clone()
        .map(|j| {
            if all_tied {
                return f64::NAN;
            }
            let n = w.rows() * j;
            let m = big_n - n;
            let t = prefix[j];
            match method {
                Method::MannWhitney => {
                    let t1 = t1_from_sums(t, n, m, sum_sq);
                    if opts.absolute {
                        t1.abs()
                    } else {
                        t1
                    }
                }
                Method::Kruskal => {
                    kruskal_from_sums(&[(t, n), (total - t, m)], sum_sq, ties).unwrap_or(f64::NAN)
                }
                Method::Tpe => tpe_from_sums(t, n, m),
                Method::Gambini | Method::Variance => unreachable!(),
            }
        })
        .collect()
}

/// [`midranks_into`] for window pixels, which are finite and nonnegative, so
/// their bit patterns sort like their values. Sorting `(bits, index)` pairs
/// directly avoids the indirect comparisons of the general routine.
fn window_midranks(pixels: &[f64], ranks: &mut [f64]) -> bool {
    // + 0.0 maps -0.0 to +0.0
    let mut keys: Vec<(u64, u32)> =
        pixels.iter().enumerate().map(|(i, &v)| ((v + 0.0).to_bits(), i as u32)).collect();
    sort_keys(&mut keys);
    let n = keys.len();
    let mut ties = false;
    let mut i = 0;
    while i < n {
        let mut k = i + 1;
        while k < n && keys[k].0 == keys[i].0 {
            k += 1;
        }
        ties |= k - i > 1;
        let r = (i + k + 1) as f64 / 2.0;
        for &(_, idx) in &keys[i..k] {
            ranks[idx as usize] = r;
        }
        i = k;
    }
    ties
}

/// Sorts by key: a byte-wise LSD radix pass over the high 32 bits (skipping
/// bytes shared by every key), then a comparison sort inside each run of
/// equal high halves.
fn sort_keys(keys: &mut Vec<(u64, u32)>) {
    let n = keys.len();
    if n < 256 {
        keys.sort_unstable();
        return;
    }
    let mut counts = [[0usize; 256]; 4];
    for &(k, _) in keys.iter() {
        for (b, c) in counts.iter_mut().enumerate() {
            c[(k >> (32 + 8 * b)) as usize & 0xff] += 1;
        }
    }
    let mut scratch = vec![(0u64, 0u32); n];
    for (b, c) in counts.iter().enumerate() {
        if c.contains(&n) {
            continue;
        }
        let mut offsets = [0usize; 256];
        let mut sum = 0;
        for (o, &cnt) in offsets.iter_mut().zip(c) {
            *o = sum;
            sum += cnt;
        }
        for &e in keys.iter() {
            let d = (e.0 >> (32 + 8 * b)) as usize & 0xff;
            scratch[offsets[d]] = e;
            offsets[d] += 1;
        }
        std::mem::swap(keys, &mut scratch);
    }
    let mut i = 0;
    while i < n {
        let high = keys[i].0 >> 32;
        let mut k = i + 1;
        while k < n && keys[k].0 >> 32 == high {
            k += 1;
        }
        if k - i > 1 {
            keys[i..k].sort_unstable();
        }
        i = k;
    }
}

/// The squared-ranks statistic re-centres each side at its own mean, so the
/// deviations are re-ranked at every split.
fn variance_trace(
    w: &Window,
    opts: &DetectOptions,
    candidates: &RangeInclusive<usize>,
) -> Result<Vec<f64>> {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    let mut dev = Vec::with_capacity(w.len());
    let mut order = Vec::with_capacity(w.len());
    let mut ranks = vec![0.0; w.len()];
    candidates
        .clone()
        .map(|j| {
            w.split_into(j, &mut left, &mut right);
            if left.len() < 2 || right.len() < 2 {
                return Err(Error::SampleTooSmall { len: left.len().min(right.len()), min: 2 });
            }
            abs_deviations_into(&left, &right, &mut dev);
            midranks_into(&dev, &mut order, &mut ranks);
            Ok(match tv_from_ranks(&ranks, left.len()) {
                Ok(tv) if opts.absolute => tv.abs(),
                Ok(tv) => tv,
                Err(_) => f64::NAN,
            })
        })
        .collect()
}
