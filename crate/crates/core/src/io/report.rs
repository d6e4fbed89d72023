use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::monte_carlo::ExperimentReport;

/// Column order is fixed; the timing column is last because it is the only
/// one that varies between runs with the same seed.
pub const REPORT_HEADER: &str = "alpha_left,alpha_right,looks,method,error_rate,failures,mean_time_s";

/// `%g`-style formatting with `digits` significant digits, without an exponent.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn write_report<W: Write>(report: &ExperimentReport, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{REPORT_HEADER}")?;
    for cell in &report.cells {
        let c = &cell.config;
        for s in &cell.methods {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                fmt_sig(c.alpha_left, 6),
                fmt_sig(c.alpha_right, 6),
                fmt_sig(c.looks, 6),
                s.method,
                fmt_sig(s.error_rate, 6),
                s.failures,
                fmt_sig(s.mean_time_s, 6),
            )?;
        }
    }
    Ok(())
}

/// Writes one CSV row per (cell, method).
pub fn emit_report(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_report(report, &mut buf).map_err(|e| Error::io(path, e))?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detectors::Method;
    use crate::monte_carlo::{CellConfig, CellReport, MethodStats};

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.383, 6), "0.383");
        assert_eq!(fmt_sig(-12.0, 6), "-12");
        assert_eq!(fmt_sig(3.2, 6), "3.2");
        assert_eq!(fmt_sig(1.0 / 3.0, 6), "0.333333");
        assert_eq!(fmt_sig(123456.789, 6), "123457");
        assert_eq!(fmt_sig(0.000052345678, 6), "0.0000523457");
        assert_eq!(fmt_sig(0.0, 6), "0");
    }

    fn stats(method: Method) -> MethodStats {
        MethodStats {
            method,
            error_rate: 0.25,
            mean_time_s: 0.0012345678,
            replications: 4,
            failures: 1,
            hits: 3,
            distances: vec![Some(0), Some(1), Some(2), None],
        }
    }

    #[test]
    fn empty_and_single_cell_reports() {
        let mut buf = Vec::new();
        write_report(&ExperimentReport::default(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{REPORT_HEADER}\n"));

        let report = ExperimentReport {
            cells: vec![CellReport {
                config: CellConfig::new(-3.0, -2.0, 1.0),
                methods: vec![stats(Method::Gambini), stats(Method::Kruskal)],
            }],
        };
        let mut buf = Vec::new();
        write_report(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "-3,-2,1,gambini,0.25,1,0.00123457");
        assert_eq!(lines[2], "-3,-2,1,kruskal,0.25,1,0.00123457");
    }
}
