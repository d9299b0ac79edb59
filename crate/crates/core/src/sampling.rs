//! Finite sampling of real-valued curves on evenly spaced grids.

use serde::{Deserialize, Serialize};

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Closed sampling interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingRange<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> SamplingRange<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::DegenerateRange {
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        Ok(SamplingRange { lo, hi })
    }

    /// `[min birth, max death]` of a finite nonempty barcode.
    pub fn of_barcode(b: &Barcode<T>) -> Result<Self> {
        let lo = b.min_birth().ok_or(Error::EmptyBarcode)?;
        let hi = b.max_death().ok_or(Error::EmptyBarcode)?;
        Self::new(lo, hi)
    }

    /// Smallest range covering every nonempty barcode of a collection.
    pub fn covering<'a, I>(barcodes: I) -> Option<Result<Self>>
    where
        I: IntoIterator<Item = &'a Barcode<T>>,
    {
        let mut acc: Option<(T, T)> = None;
        for b in barcodes {
            if let (Some(lo), Some(hi)) = (b.min_birth(), b.max_death()) {
                acc = Some(match acc {
                    None => (lo, hi),
                    Some((l, h)) => (l.min(lo), h.max(hi)),
                });
            }
        }
        acc.map(|(lo, hi)| Self::new(lo, hi))
    }

    /// `resolution` evenly spaced points, both endpoints included.
    pub fn grid(&self, resolution: usize) -> Result<Vec<T>> {
        if resolution < 2 {
            return Err(Error::InvalidParameter {
                name: "resolution",
                reason: "must be at least 2".into(),
            });
        }
        let step = (self.hi - self.lo) / T::of_usize(resolution - 1);
        Ok((0..resolution)
            .map(|i| {
                if i + 1 == resolution {
                    self.hi
                } else {
                    self.lo + step * T::of_usize(i)
                }
            })
            .collect())
    }
}

/// Values of a curve on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve<T> {
    pub grid: Vec<T>,
    pub values: Vec<T>,
}

impl<T: Real> SampledCurve<T> {
    /// Samples `f` at every grid point.
    pub fn sample(grid: Vec<T>, f: impl Fn(T) -> T) -> Self {
        let values = grid.iter().map(|&t| f(t)).collect();
        SampledCurve { grid, values }
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Trapezoidal integral over the grid.
    pub fn trapezoid(&self) -> T {
        self.grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(g, v)| (g[1] - g[0]) * (v[0] + v[1]) * T::of(0.5))
            .fold(T::zero(), |a, b| a + b)
    }
}

/// Resolves an optional user range, falling back to the barcode's own extent
/// and to `[0, 1]` for an empty barcode.
pub(crate) fn resolve_range<T: Real>(
    b: &Barcode<T>,
    range: Option<SamplingRange<T>>,
) -> Result<SamplingRange<T>> {
    match range {
        Some(r) => SamplingRange::new(r.lo, r.hi),
        None if b.is_empty() => SamplingRange::new(T::zero(), T::one()),
        None => SamplingRange::of_barcode(b),
    }
}
