//! Persistence images and tent template functions, both on the
//! birth–lifespan plane `(p, q - p)`.

use serde::{Deserialize, Serialize};

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::sampling::SamplingRange;
use crate::scalar::Real;

/// Pixel grid for persistence images.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageGrid<T> {
    /// Birth axis.
    pub x_range: SamplingRange<T>,
    /// Lifespan axis.
    pub y_range: SamplingRange<T>,
    pub nx: usize,
    pub ny: usize,
    /// Standard deviation of the isotropic Gaussian placed on every bar.
    pub sigma: T,
    /// Fixed `λ_max` of the weight ramp. When absent, each barcode uses its
    /// own largest lifespan; fixing it makes the image additive over
    /// disjoint unions.
    #[serde(default = "none", skip_serializing_if = "Option::is_none")]
    pub weight_max: Option<T>,
}

fn none<T>() -> Option<T> {
    None
}

impl<T: Real> ImageGrid<T> {
    pub fn new(
        x_range: SamplingRange<T>,
        y_range: SamplingRange<T>,
        nx: usize,
        ny: usize,
        sigma: T,
    ) -> Result<Self> {
        let grid = ImageGrid {
            x_range,
            y_range,
            nx,
            ny,
            sigma,
            weight_max: None,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        SamplingRange::new(self.x_range.lo, self.x_range.hi)?;
        SamplingRange::new(self.y_range.lo, self.y_range.hi)?;
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::InvalidParameter {
                name: "resolution",
                reason: "pixel counts must be positive".into(),
            });
        }
        if !(self.sigma > T::zero()) || !self.sigma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "sigma",
                reason: "must be positive".into(),
            });
        }
        if let Some(w) = self.weight_max {
            if !(w > T::zero()) || !w.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "weight_max",
                    reason: "must be positive".into(),
                });
            }
        }
        Ok(())
    }

    pub fn with_weight_max(mut self, weight_max: T) -> Result<Self> {
        self.weight_max = Some(weight_max);
        self.validate()?;
        Ok(self)
    }

    /// Bounding box of the birth–lifespan points of `barcodes`, widened by
    /// `3 sigma` on every side.
    pub fn fit<'a, I>(barcodes: I, nx: usize, ny: usize, sigma: T) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Barcode<T>>,
    {
        let (lo, hi) = bounding_box(barcodes)
            .ok_or_else(|| Error::InvalidInput("no bars to fit an image grid".into()))?;
        let pad = sigma * T::of(3.0);
        Self::new(
            SamplingRange::new(lo.0 - pad, hi.0 + pad)?,
            SamplingRange::new(lo.1 - pad, hi.1 + pad)?,
            nx,
            ny,
            sigma,
        )
    }

    fn edges(range: &SamplingRange<T>, n: usize) -> Vec<T> {
        let step = (range.hi - range.lo) / T::of_usize(n);
        (0..=n)
            .map(|i| {
                if i == n {
                    range.hi
                } else {
                    range.lo + step * T::of_usize(i)
                }
            })
            .collect()
    }
}

/// Weight ramp `f(λ) = clamp(λ / λ_max, 0, 1)` on the lifespan coordinate.
#[inline]
pub fn ramp_weight<T: Real>(lifespan: T, lambda_max: T) -> T {
    if lifespan <= T::zero() {
        T::zero()
    } else if lifespan >= lambda_max {
        T::one()
    } else {
        lifespan / lambda_max
    }
}

/// Mass of `N(mean, sigma²)` on `[a, b]`, avoiding cancellation in the tails.
pub(crate) fn gaussian_mass<T: Real>(a: T, b: T, mean: T, sigma: T) -> T {
    let s = sigma * T::SQRT_2();
    let (za, zb) = ((a - mean) / s, (b - mean) / s);
    let half = T::of(0.5);
    if za >= T::zero() {
        half * (za.erfc() - zb.erfc())
    } else if zb <= T::zero() {
        half * ((-zb).erfc() - (-za).erfc())
    } else {
        half * (zb.erf() - za.erf())
    }
}

/// Pixel masses of the persistence surface, row-major with row 0 at the
/// lowest lifespan: index `row * nx + col`.
///
/// Each bar contributes `μ · f(λ) · ∫∫_pixel N((p, λ), σ² I)`, integrated
/// exactly as a product of one-dimensional Gaussian masses.
pub fn persistence_image<T: Real>(b: &Barcode<T>, grid: &ImageGrid<T>) -> Result<Vec<T>> {
    grid.validate()?;
    let mut out = vec![T::zero(); grid.nx * grid.ny];
    let lambda_max = grid.weight_max.unwrap_or_else(|| {
        b.entries()
            .iter()
            .map(|(iv, _)| iv.lifespan())
            .fold(T::zero(), T::max)
    });
    let xe = ImageGrid::edges(&grid.x_range, grid.nx);
    let ye = ImageGrid::edges(&grid.y_range, grid.ny);
    let mut mx = vec![T::zero(); grid.nx];
    for (iv, m) in b.entries() {
        let (p, l) = (iv.birth(), iv.lifespan());
        let w = T::of_usize(*m) * ramp_weight(l, lambda_max);
        if w == T::zero() {
            continue;
        }
        for (i, e) in xe.windows(2).enumerate() {
            mx[i] = gaussian_mass(e[0], e[1], p, grid.sigma);
        }
        for (j, e) in ye.windows(2).enumerate() {
            let my = w * gaussian_mass(e[0], e[1], l, grid.sigma);
            let row = &mut out[j * grid.nx..(j + 1) * grid.nx];
            for (cell, &x) in row.iter_mut().zip(&mx) {
                *cell += my * x;
            }
        }
    }
    Ok(out)
}

/// Scales an image so its largest pixel is 1 (display only).
pub fn max_normalize<T: Real>(pixels: &mut [T]) {
    let hi = pixels.iter().copied().fold(T::zero(), T::max);
    if hi > T::zero() {
        for v in pixels {
            *v /= hi;
        }
    }
}

/// Rows reordered top-down (highest lifespan first), for image export.
pub fn image_rows_top_down<T: Real>(pixels: &[T], nx: usize) -> Vec<T> {
    pixels.chunks(nx).rev().flatten().copied().collect()
}

fn bounding_box<'a, T: Real + 'a, I>(barcodes: I) -> Option<((T, T), (T, T))>
where
    I: IntoIterator<Item = &'a Barcode<T>>,
{
    let mut acc: Option<((T, T), (T, T))> = None;
    for b in barcodes {
        for (iv, _) in b.entries() {
            let (x, y) = (iv.birth(), iv.lifespan());
            acc = Some(match acc {
                None => ((x, y), (x, y)),
                Some((lo, hi)) => ((lo.0.min(x), lo.1.min(y)), (hi.0.max(x), hi.1.max(y))),
            });
        }
    }
    acc
}

/// `max(1 - max(|x - u|, |y - v|)/δ, 0)`.
#[inline]
pub fn tent_template<T: Real>(x: T, y: T, u: T, v: T, delta: T) -> T {
    (T::one() - (x - u).abs().max((y - v).abs()) / delta).max(T::zero())
}

/// A `d × d` grid of tent templates over a box of the birth–lifespan plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TentGrid<T> {
    /// Padded box on the birth axis.
    pub x: SamplingRange<T>,
    /// Padded box on the lifespan axis.
    pub y: SamplingRange<T>,
    pub d: usize,
    pub delta: T,
    pub padding: T,
}

impl<T: Real> TentGrid<T> {
    fn axis(range: &SamplingRange<T>, d: usize) -> Vec<T> {
        if d == 1 {
            return vec![(range.lo + range.hi) * T::of(0.5)];
        }
        let step = (range.hi - range.lo) / T::of_usize(d - 1);
        (0..d)
            .map(|i| {
                if i + 1 == d {
                    range.hi
                } else {
                    range.lo + step * T::of_usize(i)
                }
            })
            .collect()
    }

    /// Tent centers `(u, v)`, lifespan-major: index `row * d + col`.
    pub fn centers(&self) -> Vec<(T, T)> {
        let us = Self::axis(&self.x, self.d);
        let vs = Self::axis(&self.y, self.d);
        vs.iter()
            .flat_map(|&v| us.iter().map(move |&u| (u, v)))
            .collect()
    }

    /// Largest per-axis spacing between neighbouring centers; for `d = 1`,
    /// the larger box side.
    pub fn spacing(&self) -> T {
        let w = self.x.hi - self.x.lo;
        let h = self.y.hi - self.y.lo;
        if self.d == 1 {
            w.max(h)
        } else {
            w.max(h) / T::of_usize(self.d - 1)
        }
    }
}

/// Inflates a zero-width side around its center.
fn widen<T: Real>(lo: T, hi: T) -> (T, T) {
    if hi > lo {
        return (lo, hi);
    }
    let c = (lo + hi) * T::of(0.5);
    let w = T::of(1e-9).max(T::of(1e-9) * c.abs());
    (c - w * T::of(0.5), c + w * T::of(0.5))
}

/// Covers the padded bounding box of all training points with `d × d` tents.
/// `delta` defaults to the grid spacing. Training without any bar uses the
/// unit box.
pub fn fit_tent_grid<T: Real>(
    training: &[Barcode<T>],
    d: usize,
    padding: T,
    delta: Option<T>,
) -> Result<TentGrid<T>> {
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "must be positive".into(),
        });
    }
    if !(padding >= T::zero()) {
        return Err(Error::InvalidParameter {
            name: "padding",
            reason: "must be nonnegative".into(),
        });
    }
    let (lo, hi) = bounding_box(training.iter()).unwrap_or_else(|| {
        log::warn!("template grid fitted on empty barcodes; using the unit box");
        ((T::zero(), T::zero()), (T::one(), T::one()))
    });
    let (x0, x1) = widen(lo.0 - padding, hi.0 + padding);
    let (y0, y1) = widen(lo.1 - padding, hi.1 + padding);
    let mut grid = TentGrid {
        x: SamplingRange { lo: x0, hi: x1 },
        y: SamplingRange { lo: y0, hi: y1 },
        d,
        delta: T::one(),
        padding,
    };
    grid.delta = match delta {
        Some(v) if !(v > T::zero()) => {
            return Err(Error::InvalidParameter {
                name: "delta",
                reason: "must be positive".into(),
            })
        }
        Some(v) => v,
        None => grid.spacing(),
    };
    Ok(grid)
}

/// `V_μ(g) = Σ μ g(p, q - p)` for every tent of the grid.
pub fn tent_template_features<T: Real>(b: &Barcode<T>, tents: &TentGrid<T>) -> Vec<T> {
    tents
        .centers()
        .into_iter()
        .map(|(u, v)| {
            b.entries()
                .iter()
                .map(|(iv, m)| {
                    T::of_usize(*m) * tent_template(iv.birth(), iv.lifespan(), u, v, tents.delta)
                })
                .fold(T::zero(), |a, b| a + b)
        })
        .collect()
}
