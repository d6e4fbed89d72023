//! File formats: rasters in, CSV reports and run manifests out.

mod manifest;
mod raster;
mod report;

pub use manifest::{manifest_path, RunManifest};
pub use raster::{
    extract_strips, load_raster, write_grid, write_window, RasterFormat, RasterImage,
};
pub use report::{emit_report, fmt_sig, write_report, REPORT_HEADER};
