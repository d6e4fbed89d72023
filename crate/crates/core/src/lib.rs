//! Edge detection in speckled (SAR-like) intensity imagery.
//!
//! The crate simulates G⁰ᵢ-distributed intensity data, estimates its
//! parameters by the method of moments, and locates a single edge along a
//! strip with one likelihood detector and four rank-based detectors. The
//! [`monte_carlo`] module runs the error-rate and timing experiment over a
//! grid of roughness parameters, and [`io`] / [`cli`] provide the raster,
//! CSV and command-line surfaces.

pub mod cli;
pub mod detectors;
pub mod error;
pub mod gi0;
pub mod io;
pub mod moments;
pub mod monte_carlo;
pub mod rng;
pub mod special;

pub use detectors::{detect_edge, statistic_trace, DetectOptions, EdgeEstimate, Method, Window};
pub use error::{Error, Result};
pub use gi0::GI0Params;
pub use moments::{estimate_params, ParamEstimate};
pub use monte_carlo::{run_cell, run_grid, CellConfig, ExperimentReport};
pub use rng::RngStream;
