use crate::error::{Error, Result};

/// A `rows × cols` block of nonnegative intensities, stored row-major.
///
/// A split at column `j` puts columns `0..j` (the first `j` columns) in the
/// left sample and the remaining columns in the right sample, each flattened
/// row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pixels: Vec<f64>,
    rows: usize,
    cols: usize,
    true_edge_col: Option<usize>,
}

impl Window {
    pub fn new(rows: usize, cols: usize, pixels: Vec<f64>) -> Result<Self> {
        if rows < 1 || cols < 3 {
            return Err(Error::InvalidWindow(format!(
                "need at least 1 row and 3 columns, got {rows}x{cols}"
            )));
        }
        if pixels.len() != rows * cols {
            return Err(Error::InvalidWindow(format!(
                "{} pixels for a {rows}x{cols} window",
                pixels.len()
            )));
        }
        if let Some(i) = pixels.iter().position(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidWindow(format!(
                "pixel ({}, {}) = {} is not a finite nonnegative value",
                i / cols,
                i % cols,
                pixels[i]
            )));
        }
        Ok(Self { pixels, rows, cols, true_edge_col: None })
    }

    pub fn with_true_edge(mut self, col: usize) -> Self {
        self.true_edge_col = Some(col);
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn true_edge_col(&self) -> Option<usize> {
        self.true_edge_col
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.pixels[row * self.cols..(row + 1) * self.cols]
    }

    /// Left and right samples for a split after the first `j` columns.
    pub fn split(&self, j: usize) -> (Vec<f64>, Vec<f64>) {
        let mut left = Vec::with_capacity(self.rows * j);
        let mut right = Vec::with_capacity(self.rows * (self.cols - j));
        self.split_into(j, &mut left, &mut right);
        (left, right)
    }

    pub(crate) fn split_into(&self, j: usize, left: &mut Vec<f64>, right: &mut Vec<f64>) {
        left.clear();
        right.clear();
        for r in 0..self.rows {
            let row = self.row(r);
            left.extend_from_slice(&row[..j]);
            right.extend_from_slice(&row[j..]);
        }
    }

    /// Applies `f` to every pixel. The result must stay finite and nonnegative.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let mut w = Self::new(self.rows, self.cols, self.pixels.iter().map(|&p| f(p)).collect())?;
        w.true_edge_col = self.true_edge_col;
        Ok(w)
    }

    /// Mirror image across the vertical axis; a true edge at `j` moves to `cols - j`.
    pub fn reflect_columns(&self) -> Self {
        let mut pixels = Vec::with_capacity(self.pixels.len());
        for r in 0..self.rows {
            pixels.extend(self.row(r).iter().rev());
        }
        Self {
            pixels,
            rows: self.rows,
            cols: self.cols,
            true_edge_col: self.true_edge_col.map(|j| self.cols - j),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Window::new(1, 2, vec![1.0, 2.0]).is_err());
        assert!(Window::new(1, 3, vec![1.0, 2.0]).is_err());
        assert!(Window::new(1, 3, vec![1.0, -2.0, 0.0]).is_err());
        assert!(Window::new(1, 3, vec![1.0, f64::INFINITY, 0.0]).is_err());
        assert!(Window::new(0, 3, vec![]).is_err());
        assert!(Window::new(1, 3, vec![1.0, 0.0, 0.0]).is_ok());
    }

    #[test]
    fn split_flattens_rows() {
        let w = Window::new(2, 4, (0..8).map(f64::from).collect()).unwrap();
        let (l, r) = w.split(1);
        assert_eq!(l, vec![0.0, 4.0]);
        assert_eq!(r, vec![1.0, 2.0, 3.0, 5.0, 6.0, 7.0]);
        let (l, r) = w.split(3);
        assert_eq!(l, vec![0.0, 1.0, 2.0, 4.0, 5.0, 6.0]);
        assert_eq!(r, vec![3.0, 7.0]);
    }

    #[test]
    fn reflection() {
        let w = Window::new(2, 3, (0..6).map(f64::from).collect()).unwrap().with_true_edge(1);
        let r = w.reflect_columns();
        assert_eq!(r.pixels(), &[2.0, 1.0, 0.0, 5.0, 4.0, 3.0]);
        assert_eq!(r.true_edge_col(), Some(2));
        assert_eq!(r.reflect_columns(), w);
    }
}
