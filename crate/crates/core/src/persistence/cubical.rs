use serde::{Deserialize, Serialize};

use super::{Cell, FilteredComplex, FiltrationOrder};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Grayscale image with row-major intensities (`y * width + x`).
#[derive(Debug, Clone, PartialEq)]
pub struct GrayscaleImage<T> {
    width: usize,
    height: usize,
    intensities: Vec<T>,
}

impl<T: Real> GrayscaleImage<T> {
    pub fn new(width: usize, height: usize, intensities: Vec<T>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput("image must have positive size".into()));
        }
        if intensities.len() != width * height {
            return Err(Error::InvalidInput(format!(
                "expected {} intensities for a {width}x{height} image, found {}",
                width * height,
                intensities.len()
            )));
        }
        if intensities.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("intensities must be finite".into()));
        }
        Ok(GrayscaleImage {
            width,
            height,
            intensities,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn intensities(&self) -> &[T] {
        &self.intensities
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.intensities[y * self.width + x]
    }
}

/// How intensities of the pixels (top cells) extend to their faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Faces take the smallest adjacent pixel intensity; sublevel sweep.
    #[default]
    UpperStar,
    /// Faces take the largest adjacent pixel intensity; superlevel sweep.
    LowerStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicalBudget {
    pub max_width: usize,
    pub max_height: usize,
}

impl Default for CubicalBudget {
    fn default() -> Self {
        CubicalBudget {
            max_width: 512,
            max_height: 512,
        }
    }
}

/// Two-dimensional cubical complex of an image with one square per pixel.
///
/// Cells are laid out as vertices, then horizontal edges, then vertical edges,
/// then squares. With [`Direction::LowerStar`] the complex carries
/// [`FiltrationOrder::Decreasing`].
pub fn cubical_complex<T: Real>(
    img: &GrayscaleImage<T>,
    direction: Direction,
    budget: &CubicalBudget,
) -> Result<FilteredComplex<T>> {
    let (w, h) = (img.width, img.height);
    if w > budget.max_width || h > budget.max_height {
        return Err(Error::Budget(format!(
            "{w}x{h} image exceeds the cap of {}x{}",
            budget.max_width, budget.max_height
        )));
    }
    let pick = |a: T, b: T| match direction {
        Direction::UpperStar => a.min(b),
        Direction::LowerStar => a.max(b),
    };
    let fold = |vals: &mut dyn Iterator<Item = T>| {
        let first = vals.next().expect("at least one adjacent pixel");
        vals.fold(first, pick)
    };

    let n_vert = (w + 1) * (h + 1);
    let n_hedge = w * (h + 1);
    let n_vedge = (w + 1) * h;
    let vert = |x: usize, y: usize| y * (w + 1) + x;
    let hedge = |x: usize, y: usize| n_vert + y * w + x;
    let vedge = |x: usize, y: usize| n_vert + n_hedge + y * (w + 1) + x;

    let mut cells = Vec::with_capacity(n_vert + n_hedge + n_vedge + w * h);
    for y in 0..=h {
        for x in 0..=w {
            let xs = x.saturating_sub(1)..x.min(w - 1) + 1;
            let ys = y.saturating_sub(1)..y.min(h - 1) + 1;
            let mut vals = ys.flat_map(|py| xs.clone().map(move |px| (px, py)))
                .map(|(px, py)| img.get(px, py));
            cells.push(Cell {
                dim: 0,
                filtration: fold(&mut vals),
                boundary: Vec::new(),
            });
        }
    }
    for y in 0..=h {
        for x in 0..w {
            let ys = y.saturating_sub(1)..y.min(h - 1) + 1;
            let mut vals = ys.map(|py| img.get(x, py));
            cells.push(Cell {
                dim: 1,
                filtration: fold(&mut vals),
                boundary: vec![vert(x, y), vert(x + 1, y)],
            });
        }
    }
    for y in 0..h {
        for x in 0..=w {
            let xs = x.saturating_sub(1)..x.min(w - 1) + 1;
            let mut vals = xs.map(|px| img.get(px, y));
            cells.push(Cell {
                dim: 1,
                filtration: fold(&mut vals),
                boundary: vec![vert(x, y), vert(x, y + 1)],
            });
        }
    }
    for y in 0..h {
        for x in 0..w {
            cells.push(Cell {
                dim: 2,
                filtration: img.get(x, y),
                boundary: vec![hedge(x, y), hedge(x, y + 1), vedge(x, y), vedge(x + 1, y)],
            });
        }
    }
    let order = match direction {
        Direction::UpperStar => FiltrationOrder::Increasing,
        Direction::LowerStar => FiltrationOrder::Decreasing,
    };
    Ok(FilteredComplex { cells, order })
}
