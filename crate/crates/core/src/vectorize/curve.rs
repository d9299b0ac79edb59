//! Betti curve, lifespan curve, persistence landscapes and silhouettes.
//!
//! Indicator-based curves use the half-open convention `p <= t < q`; the tent
//! `Δ([p,q], t) = max(min(t - p, q - t), 0)` is supported on the closed
//! interval.

use serde::{Deserialize, Serialize};

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::sampling::{resolve_range, SampledCurve, SamplingRange};
use crate::scalar::{cmp, Real};

#[inline]
pub fn tent<T: Real>(p: T, q: T, t: T) -> T {
    (t - p).min(q - t).max(T::zero())
}

pub fn betti_curve<T: Real>(
    b: &Barcode<T>,
    resolution: usize,
    range: Option<SamplingRange<T>>,
) -> Result<SampledCurve<T>> {
    weighted_indicator_curve(b, resolution, range, |_, _| T::one())
}

pub fn lifespan_curve<T: Real>(
    b: &Barcode<T>,
    resolution: usize,
    range: Option<SamplingRange<T>>,
) -> Result<SampledCurve<T>> {
    weighted_indicator_curve(b, resolution, range, |p, q| q - p)
}

fn weighted_indicator_curve<T: Real>(
    b: &Barcode<T>,
    resolution: usize,
    range: Option<SamplingRange<T>>,
    weight: impl Fn(T, T) -> T,
) -> Result<SampledCurve<T>> {
    let range = resolve_range(b, range)?;
    let terms: Vec<(T, T, T)> = b
        .entries()
        .iter()
        .map(|(iv, m)| {
            let (p, q) = (iv.birth(), iv.death());
            (p, q, T::of_usize(*m) * weight(p, q))
        })
        .collect();
    Ok(SampledCurve::sample(range.grid(resolution)?, |t| {
        terms
            .iter()
            .filter(|(p, q, _)| *p <= t && t < *q)
            .map(|(_, _, w)| *w)
            .fold(T::zero(), |a, b| a + b)
    }))
}

/// First `k` landscape levels on a common grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandscapeStack<T> {
    pub grid: Vec<T>,
    /// `levels[i][j]` is the (i+1)-th landscape at `grid[j]`.
    pub levels: Vec<Vec<T>>,
}

impl<T: Real> LandscapeStack<T> {
    pub fn k(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> SampledCurve<T> {
        SampledCurve {
            grid: self.grid.clone(),
            values: self.levels[i].clone(),
        }
    }

    /// Level-major flattening.
    pub fn to_vec(&self) -> Vec<T> {
        self.levels.iter().flatten().copied().collect()
    }
}

/// `Λ_i(t)` is the i-th largest tent value at `t` counted with multiplicity, or
/// 0 when fewer than `i` bars exist.
pub fn landscapes<T: Real>(
    b: &Barcode<T>,
    k: usize,
    resolution: usize,
    range: Option<SamplingRange<T>>,
) -> Result<LandscapeStack<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: "must be positive".into(),
        });
    }
    let range = resolve_range(b, range)?;
    let grid = range.grid(resolution)?;
    let bars: Vec<(T, T)> = b.expanded().map(|i| (i.birth(), i.death())).collect();
    let mut levels = vec![vec![T::zero(); grid.len()]; k];
    let mut scratch = Vec::with_capacity(bars.len());
    for (j, &t) in grid.iter().enumerate() {
        scratch.clear();
        scratch.extend(bars.iter().map(|&(p, q)| tent(p, q, t)));
        scratch.sort_by(|a, b| cmp(b, a));
        for (i, v) in scratch.iter().take(k).enumerate() {
            levels[i][j] = *v;
        }
    }
    Ok(LandscapeStack { grid, levels })
}

/// Weighted average of tents with weights `(q - p)^alpha`.
pub fn silhouette<T: Real>(
    b: &Barcode<T>,
    alpha: T,
    resolution: usize,
    range: Option<SamplingRange<T>>,
) -> Result<SampledCurve<T>> {
    if b.is_empty() {
        return Err(Error::EmptyBarcode);
    }
    if !(alpha >= T::zero()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: "must be nonnegative".into(),
        });
    }
    let range = resolve_range(b, range)?;
    let terms: Vec<(T, T, T)> = b
        .entries()
        .iter()
        .map(|(iv, m)| {
            (
                iv.birth(),
                iv.death(),
                T::of_usize(*m) * iv.lifespan().powf(alpha),
            )
        })
        .collect();
    let total: T = terms.iter().map(|t| t.2).fold(T::zero(), |a, b| a + b);
    if !(total > T::zero()) || !total.is_finite() {
        return Err(Error::InvalidInput(
            "silhouette weights sum to zero or overflow".into(),
        ));
    }
    Ok(SampledCurve::sample(range.grid(resolution)?, |t| {
        terms.iter().map(|&(p, q, w)| w * tent(p, q, t)).fold(T::zero(), |a, b| a + b) / total
    }))
}
