//! Point-cloud CSV, image CSV matrices and PGM (P2/P5) images.

use std::path::Path;

use super::{GrayscaleImage, PointCloud};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn parse_row<T: Real>(line: &str) -> Option<Vec<T>> {
    line.split(',')
        .map(|f| f.trim().parse::<T>().ok().filter(|v| v.is_finite()))
        .collect()
}

/// One point per row, comma separated. A non-numeric first row is treated as
/// a header.
pub fn parse_point_cloud<T: Real>(text: &str) -> Result<PointCloud<T>> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_row(line) {
            Some(p) => points.push(p),
            None if idx == 0 => continue,
            None => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("non-numeric row `{line}`"),
                })
            }
        }
    }
    PointCloud::new(points)
}

/// Rows of comma-separated intensities; every row must have the same length.
pub fn parse_image_csv<T: Real>(text: &str) -> Result<GrayscaleImage<T>> {
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = parse_row(line).ok_or_else(|| Error::Parse {
            line: idx + 1,
            message: format!("non-numeric row `{line}`"),
        })?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("row has {} values, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    let width = rows.first().map_or(0, Vec::len);
    let height = rows.len();
    GrayscaleImage::new(width, height, rows.into_iter().flatten().collect())
}

/// Binary (P5) or ASCII (P2) PGM. Intensities are raw sample values.
pub fn parse_pgm<T: Real>(bytes: &[u8]) -> Result<GrayscaleImage<T>> {
    let bad = |m: &str| Error::InvalidInput(format!("PGM: {m}"));
    let mut pos = 0usize;
    let mut token = |bytes: &[u8]| -> Option<String> {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        (pos > start).then(|| String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };
    let magic = token(bytes).ok_or_else(|| bad("missing magic"))?;
    let mut num = |what: &str| -> Result<usize> {
        token(bytes)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(&format!("bad {what}")))
    };
    let width = num("width")?;
    let height = num("height")?;
    let maxval = num("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(bad("maxval out of range"));
    }
    let count = width * height;
    let values: Vec<T> = match magic.as_str() {
        "P2" => (0..count)
            .map(|_| num("sample").map(T::of_usize))
            .collect::<Result<_>>()?,
        "P5" => {
            // Exactly one whitespace byte separates maxval from the raster.
            let start = pos + 1;
            let width_bytes = if maxval < 256 { 1 } else { 2 };
            let raster = bytes
                .get(start..start + count * width_bytes)
                .ok_or_else(|| bad("truncated raster"))?;
            if width_bytes == 1 {
                raster.iter().map(|&b| T::of_usize(b as usize)).collect()
            } else {
                raster
                    .chunks_exact(2)
                    .map(|c| T::of_usize(u16::from_be_bytes([c[0], c[1]]) as usize))
                    .collect()
            }
        }
        _ => return Err(bad("unsupported magic (expected P2 or P5)")),
    };
    GrayscaleImage::new(width, height, values)
}

/// Writes a P5 PGM, scaling `values` (row-major, top row first) linearly to
/// 0..=255 between their minimum and maximum.
pub fn write_pgm<T: Real>(
    width: usize,
    height: usize,
    values: &[T],
    path: impl AsRef<Path>,
) -> Result<()> {
    std::fs::write(path, encode_pgm(width, height, values))?;
    Ok(())
}

/// P5 bytes of `values` scaled as in [`write_pgm`].
pub fn encode_pgm<T: Real>(width: usize, height: usize, values: &[T]) -> Vec<u8> {
    let lo = values.iter().copied().fold(T::infinity(), T::min);
    let hi = values.iter().copied().fold(T::neg_infinity(), T::max);
    let span = hi - lo;
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend(values.iter().map(|&v| {
        if span > T::zero() {
            ((v - lo) / span * T::of(255.0)).round().to_u8().unwrap_or(0)
        } else {
            0
        }
    }));
    out
}

pub fn read_point_cloud<T: Real>(path: impl AsRef<Path>) -> Result<PointCloud<T>> {
    parse_point_cloud(&std::fs::read_to_string(path)?)
}

/// Reads a `.pgm` file, or a CSV matrix for any other extension.
pub fn read_image<T: Real>(path: impl AsRef<Path>) -> Result<GrayscaleImage<T>> {
    let path = path.as_ref();
    let is_pgm = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("pgm"));
    if is_pgm {
        parse_pgm(&std::fs::read(path)?)
    } else {
        parse_image_csv(&std::fs::read_to_string(path)?)
    }
}
