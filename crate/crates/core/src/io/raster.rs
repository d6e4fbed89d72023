//! Raster ingestion (plain matrix text, CSV, PGM P2/P5) and strip extraction.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::detectors::Window;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RasterFormat {
    /// Whitespace-separated numbers, one image row per line; `#` starts a comment line.
    Matrix,
    Csv,
    /// Netpbm graymap, ASCII (P2) or binary (P5, 8 or 16 bit big-endian).
    Pgm,
}

impl RasterFormat {
    /// Guess from the file extension; anything unrecognized is read as a plain matrix.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase()) {
            Some(e) if e == "csv" => RasterFormat::Csv,
            Some(e) if e == "pgm" || e == "pnm" => RasterFormat::Pgm,
            _ => RasterFormat::Matrix,
        }
    }
}

impl FromStr for RasterFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "matrix" | "plain" | "txt" | "text" => Ok(RasterFormat::Matrix),
            "csv" => Ok(RasterFormat::Csv),
            "pgm" | "p2" | "p5" => Ok(RasterFormat::Pgm),
            other => Err(Error::Domain(format!("unknown raster format '{other}'"))),
        }
    }
}

impl fmt::Display for RasterFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RasterFormat::Matrix => "matrix",
            RasterFormat::Csv => "csv",
            RasterFormat::Pgm => "pgm",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RasterImage {
    pub pixels: Vec<f64>,
    pub rows: usize,
    pub cols: usize,
    pub source: PathBuf,
}

impl RasterImage {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.cols + col]
    }

    /// The whole image as a single window.
    pub fn to_window(&self) -> Result<Window> {
        Window::new(self.rows, self.cols, self.pixels.clone())
    }
}

pub fn load_raster(path: &Path, format: Option<RasterFormat>) -> Result<RasterImage> {
    let format = format.unwrap_or_else(|| RasterFormat::from_path(path));
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let (rows, cols, pixels) = match format {
        RasterFormat::Matrix => parse_delimited(path, &bytes, None)?,
        RasterFormat::Csv => parse_delimited(path, &bytes, Some(','))?,
        RasterFormat::Pgm => parse_pgm(path, &bytes)?,
    };
    if rows == 0 || cols == 0 {
        return Err(Error::Parse { path: path.into(), line: 1, msg: "empty raster".into() });
    }
    Ok(RasterImage { pixels, rows, cols, source: path.to_path_buf() })
}

fn parse_delimited(
    path: &Path,
    bytes: &[u8],
    delim: Option<char>,
) -> Result<(usize, usize, Vec<f64>)> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::BinaryParse {
        path: path.into(),
        offset: e.valid_up_to(),
        msg: "invalid UTF-8".into(),
    })?;
    let mut pixels = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = match delim {
            Some(d) => trimmed.split(d).map(str::trim).collect(),
            None => trimmed.split_whitespace().collect(),
        };
        for f in &fields {
            let v: f64 = f.parse().map_err(|_| Error::Parse {
                path: path.into(),
                line: line_no,
                msg: format!("'{f}' is not a number"),
            })?;
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Parse {
                    path: path.into(),
                    line: line_no,
                    msg: format!("pixel value {v} is not finite and nonnegative"),
                });
            }
            pixels.push(v);
        }
        rows += 1;
        match cols {
            None => cols = Some(fields.len()),
            Some(c) if c != fields.len() => {
                return Err(Error::RaggedRow {
                    path: path.into(),
                    row: rows,
                    found: fields.len(),
                    expected: c,
                })
            }
            _ => {}
        }
    }
    Ok((rows, cols.unwrap_or(0), pixels))
}

struct PgmHeader {
    binary: bool,
    width: usize,
    height: usize,
    maxval: u32,
    data_offset: usize,
}

fn line_of(bytes: &[u8], offset: usize) -> usize {
    1 + bytes[..offset.min(bytes.len())].iter().filter(|&&b| b == b'\n').count()
}

fn parse_pgm_header(path: &Path, bytes: &[u8]) -> Result<PgmHeader> {
    let err = |offset: usize, msg: String| Error::Parse { path: path.into(), line: line_of(bytes, offset), msg };
    let binary = match bytes.get(..2) {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err(err(0, "missing P2/P5 magic number".into())),
    };
    let mut pos = 2;
    let mut fields = [0u32; 3];
    for (k, field) in fields.iter_mut().enumerate() {
        // skip whitespace and comments
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        let name = ["width", "height", "maxval"][k];
        let tok = std::str::from_utf8(&bytes[start..pos]).unwrap_or("");
        *field = tok.parse().map_err(|_| err(start, format!("invalid {name}")))?;
    }
    let [width, height, maxval] = fields;
    if maxval == 0 || maxval > 65535 {
        return Err(err(pos, format!("maxval {maxval} outside 1..=65535")));
    }
    // exactly one whitespace byte separates the header from binary data
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(err(pos, "expected whitespace after maxval".into()));
    }
    Ok(PgmHeader { binary, width: width as usize, height: height as usize, maxval, data_offset: pos + 1 })
}

fn parse_pgm(path: &Path, bytes: &[u8]) -> Result<(usize, usize, Vec<f64>)> {
    let h = parse_pgm_header(path, bytes)?;
    let count = h.width * h.height;
    let mut pixels = Vec::with_capacity(count);
    if h.binary {
        let width = if h.maxval < 256 { 1 } else { 2 };
        let data = &bytes[h.data_offset..];
        if data.len() < count * width {
            return Err(Error::BinaryParse {
                path: path.into(),
                offset: bytes.len(),
                msg: format!("expected {} bytes of pixel data, found {}", count * width, data.len()),
            });
        }
        for i in 0..count {
            let v = if width == 1 {
                data[i] as u32
            } else {
                u16::from_be_bytes([data[2 * i], data[2 * i + 1]]) as u32
            };
            if v > h.maxval {
                return Err(Error::BinaryParse {
                    path: path.into(),
                    offset: h.data_offset + i * width,
                    msg: format!("sample {v} exceeds maxval {}", h.maxval),
                });
            }
            pixels.push(v as f64);
        }
    } else {
        let mut pos = h.data_offset;
        while pixels.len() < count {
            while bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
                pos += 1;
            }
            if bytes.get(pos) == Some(&b'#') {
                while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                    pos += 1;
                }
                continue;
            }
            let start = pos;
            while bytes.get(pos).is_some_and(|b| !b.is_ascii_whitespace()) {
                pos += 1;
            }
            let perr = |msg: String| Error::Parse { path: path.into(), line: line_of(bytes, start), msg };
            if start == pos {
                return Err(perr(format!("expected {count} samples, found {}", pixels.len())));
            }
            let tok = std::str::from_utf8(&bytes[start..pos]).unwrap_or("");
            let v: u32 = tok.parse().map_err(|_| perr(format!("'{tok}' is not a sample value")))?;
            if v > h.maxval {
                return Err(perr(format!("sample {v} exceeds maxval {}", h.maxval)));
            }
            pixels.push(v as f64);
        }
    }
    Ok((h.height, h.width, pixels))
}

/// Writes a grid as plain matrix text or CSV. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn write_grid(
    path: &Path,
    rows: usize,
    cols: usize,
    pixels: &[f64],
    format: RasterFormat,
) -> Result<()> {
    let sep = match format {
        RasterFormat::Matrix => " ",
        RasterFormat::Csv => ",",
        RasterFormat::Pgm => {
            return Err(Error::Domain("writing real-valued data as PGM is not supported".into()))
        }
    };
    let mut out = String::with_capacity(rows * cols * 20);
    for r in 0..rows {
        for c in 0..cols {
            if c > 0 {
                out.push_str(sep);
            }
            out.push_str(&pixels[r * cols + c].to_string());
        }
        out.push('\n');
    }
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))
}

pub fn write_window(path: &Path, w: &Window, format: RasterFormat) -> Result<()> {
    write_grid(path, w.rows(), w.cols(), w.pixels(), format)
}

/// Non-overlapping horizontal strips of `strip_height` rows from the top;
/// leftover rows at the bottom are dropped.
pub fn extract_strips(img: &RasterImage, strip_height: usize) -> Result<Vec<Window>> {
    if strip_height == 0 {
        return Err(Error::Domain("strip height must be positive".into()));
    }
    let n = img.rows / strip_height;
    (0..n)
        .map(|s| {
            let start = s * strip_height * img.cols;
            let end = start + strip_height * img.cols;
            Window::new(strip_height, img.cols, img.pixels[start..end].to_vec())
        })
        .collect()
}
