//! Error-rate and timing experiment over a grid of roughness pairs.
//!
//! Each cell simulates `replications` windows whose left `edge_col` columns
//! follow G⁰ᵢ(α_ℓ, γ_{α_ℓ,L}, L) and whose remaining columns follow
//! G⁰ᵢ(α_r, γ_{α_r,L}, L), both with unit mean. A detection counts as an
//! error when it lands more than 5 columns from the true edge or fails
//! outright.

use std::time::Instant;

use rayon::prelude::*;

use crate::detectors::{detect_edge, DetectOptions, EdgeEstimate, Method, Window};
use crate::error::{Error, Result};
use crate::gi0::{fill_gi0, GI0Params};
use crate::rng::{mix_seed, RngStream};

/// Largest distance (in columns) from the true edge that still counts as a hit.
pub const ERROR_THRESHOLD: usize = 5;

pub const GRID_ALPHA_LEFT: [f64; 10] =
    [-3.0, -4.0, -6.0, -8.0, -10.0, -12.0, -14.0, -16.0, -18.0, -20.0];
pub const GRID_LOOKS: [f64; 3] = [1.0, 3.0, 8.0];

/// `-2, -3, ..., -20`
pub fn grid_alpha_right() -> Vec<f64> {
    (2..=20).map(|a| -(a as f64)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellConfig {
    pub alpha_left: f64,
    pub alpha_right: f64,
    pub looks: f64,
    pub rows: usize,
    pub cols: usize,
    pub edge_col: usize,
    pub replications: usize,
    pub methods: Vec<Method>,
    pub seed: u64,
}

impl CellConfig {
    /// A 20×100 cell with the edge at column 50.
    pub fn new(alpha_left: f64, alpha_right: f64, looks: f64) -> Self {
        Self {
            alpha_left,
            alpha_right,
            looks,
            rows: 20,
            cols: 100,
            edge_col: 50,
            replications: 1000,
            methods: Method::ALL.to_vec(),
            seed: 0,
        }
    }

    pub fn replications(mut self, n: usize) -> Self {
        self.replications = n;
        self
    }

    pub fn methods(mut self, methods: &[Method]) -> Self {
        self.methods = methods.to_vec();
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn shape(mut self, rows: usize, cols: usize, edge_col: usize) -> Self {
        self.rows = rows;
        self.cols = cols;
        self.edge_col = edge_col;
        self
    }

    pub fn validate(&self, opts: &DetectOptions) -> Result<()> {
        if self.alpha_left == self.alpha_right {
            return Err(Error::Domain("equal roughness on both sides has no edge".into()));
        }
        if !(self.alpha_left <= -2.0 && self.alpha_right <= -2.0) {
            return Err(Error::Domain(format!(
                "roughness must be <= -2, got ({}, {})",
                self.alpha_left, self.alpha_right
            )));
        }
        GI0Params::unit_mean(self.alpha_left, self.looks)?;
        let probe = Window::new(self.rows, self.cols, vec![0.0; self.rows * self.cols])?;
        let range = opts.candidate_range(&probe)?;
        if !range.contains(&self.edge_col) {
            return Err(Error::Domain(format!(
                "edge column {} outside candidate range {}..={}",
                self.edge_col,
                range.start(),
                range.end()
            )));
        }
        Ok(())
    }
}

/// Simulated window for replication `rep`, drawn from stream `(seed, rep)`.
pub fn generate_window(c: &CellConfig, rep: u64) -> Result<Window> {
    let left = GI0Params::unit_mean(c.alpha_left, c.looks)?;
    let right = GI0Params::unit_mean(c.alpha_right, c.looks)?;
    let mut rng = RngStream::new(c.seed, rep);
    let mut pixels = Vec::with_capacity(c.rows * c.cols);
    for _ in 0..c.rows {
        fill_gi0(&left, &mut rng, &mut pixels, c.edge_col);
        fill_gi0(&right, &mut rng, &mut pixels, c.cols - c.edge_col);
    }
    Ok(Window::new(c.rows, c.cols, pixels)?.with_true_edge(c.edge_col))
}

/// `|truth - edge_index|`
pub fn error_metric(estimate: &EdgeEstimate, truth: usize) -> usize {
    estimate.edge_index.abs_diff(truth)
}

pub fn is_error(distance: usize) -> bool {
    distance > ERROR_THRESHOLD
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodStats {
    pub method: Method,
    /// Fraction of replications with distance > 5 or a failed detection.
    pub error_rate: f64,
    /// Mean wall-clock seconds per window spent in detection.
    pub mean_time_s: f64,
    pub replications: usize,
    /// Replications where detection returned an error.
    pub failures: usize,
    pub hits: usize,
    /// Distance from the truth per replication, `None` on failure.
    pub distances: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellReport {
    pub config: CellConfig,
    pub methods: Vec<MethodStats>,
}

impl CellReport {
    pub fn stats(&self, method: Method) -> Option<&MethodStats> {
        self.methods.iter().find(|s| s.method == method)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentReport {
    pub cells: Vec<CellReport>,
}

impl ExperimentReport {
    pub fn find(&self, alpha_left: f64, alpha_right: f64, looks: f64) -> Option<&CellReport> {
        self.cells.iter().find(|c| {
            c.config.alpha_left == alpha_left
                && c.config.alpha_right == alpha_right
                && c.config.looks == looks
        })
    }
}

struct Outcome {
    distance: Option<usize>,
    seconds: f64,
}

/// Runs every replication of one cell. Replications execute in parallel;
/// error counts depend only on the seed.
pub fn run_cell(c: &CellConfig, opts: &DetectOptions) -> Result<CellReport> {
    c.validate(opts)?;
    let opts = DetectOptions { looks: Some(c.looks), ..opts.clone() };
    let per_rep: Vec<Vec<Outcome>> = (0..c.replications as u64)
        .into_par_iter()
        .map(|rep| {
            let w = generate_window(c, rep)?;
            Ok(c.methods
                .iter()
                .map(|&m| {
                    let start = Instant::now();
                    let est = detect_edge(&w, m, &opts);
                    let seconds = start.elapsed().as_secs_f64();
                    Outcome { distance: est.ok().map(|e| error_metric(&e, c.edge_col)), seconds }
                })
                .collect())
        })
        .collect::<Result<_>>()?;

    let methods = c
        .methods
        .iter()
        .enumerate()
        .map(|(k, &method)| {
            let distances: Vec<Option<usize>> = per_rep.iter().map(|o| o[k].distance).collect();
            let failures = distances.iter().filter(|d| d.is_none()).count();
            let errors = distances.iter().filter(|d| d.map_or(true, is_error)).count();
            let n = c.replications.max(1) as f64;
            let total_time: f64 = per_rep.iter().map(|o| o[k].seconds).sum();
            MethodStats {
                method,
                error_rate: errors as f64 / n,
                mean_time_s: total_time / n,
                replications: c.replications,
                failures,
                hits: c.replications - errors,
                distances,
            }
        })
        .collect();
    Ok(CellReport { config: c.clone(), methods })
}

pub fn run_grid(grid: &[CellConfig], opts: &DetectOptions) -> Result<ExperimentReport> {
    if grid.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    let cells = grid.par_iter().map(|c| run_cell(c, opts)).collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport { cells })
}

/// Cartesian product of the roughness lists and looks, dropping equal pairs.
/// Cell `i` gets seed `mix_seed(seed, i)`.
pub fn build_grid(
    alpha_left: &[f64],
    alpha_right: &[f64],
    looks: &[f64],
    replications: usize,
    methods: &[Method],
    seed: u64,
) -> Vec<CellConfig> {
    let mut grid = Vec::new();
    for &l in looks {
        for &al in alpha_left {
            for &ar in alpha_right {
                if al == ar {
                    continue;
                }
                let idx = grid.len() as u64;
                grid.push(
                    CellConfig::new(al, ar, l)
                        .replications(replications)
                        .methods(methods)
                        .seed(mix_seed(seed, idx)),
                );
            }
        }
    }
    grid
}

/// The full 10 × 19 × 3 roughness/looks grid minus the 30 equal-roughness cells.
pub fn full_grid(replications: usize, methods: &[Method], seed: u64) -> Vec<CellConfig> {
    build_grid(&GRID_ALPHA_LEFT, &grid_alpha_right(), &GRID_LOOKS, replications, methods, seed)
}
