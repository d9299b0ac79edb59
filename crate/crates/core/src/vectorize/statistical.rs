//! Persistence statistics and the entropy summary curve.

use serde::{Deserialize, Serialize};

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::sampling::{resolve_range, SampledCurve, SamplingRange};
use crate::scalar::{cmp, Real};

/// Nine summary statistics of one derived quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantityStats<T> {
    pub mean: T,
    /// Population standard deviation.
    pub std: T,
    pub median: T,
    /// `p75 - p25`.
    pub iqr: T,
    /// `max - min`.
    pub range: T,
    pub p10: T,
    pub p25: T,
    pub p75: T,
    pub p90: T,
}

pub const QUANTITY_STAT_NAMES: [&str; 9] =
    ["mean", "std", "median", "iqr", "range", "p10", "p25", "p75", "p90"];

impl<T: Real> QuantityStats<T> {
    fn of(mut values: Vec<T>) -> Self {
        values.sort_by(cmp);
        let n = T::of_usize(values.len());
        let mean = values.iter().copied().fold(T::zero(), |a, b| a + b) / n;
        let var = values
            .iter()
            .map(|&v| (v - mean) * (v - mean))
            .fold(T::zero(), |a, b| a + b)
            / n;
        let p = |q: f64| percentile(&values, q);
        let (p25, p75) = (p(0.25), p(0.75));
        QuantityStats {
            mean,
            std: var.sqrt(),
            median: p(0.5),
            iqr: p75 - p25,
            range: values[values.len() - 1] - values[0],
            p10: p(0.10),
            p25,
            p75,
            p90: p(0.90),
        }
    }

    pub fn to_array(&self) -> [T; 9] {
        [
            self.mean, self.std, self.median, self.iqr, self.range, self.p10, self.p25,
            self.p75, self.p90,
        ]
    }
}

/// Linear interpolation between closest ranks on sorted, nonempty data.
pub(crate) fn percentile<T: Real>(sorted: &[T], q: f64) -> T {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = T::of(pos - lo as f64);
    let (a, b) = (sorted[lo], sorted[hi]);
    (a + (b - a) * frac).min(b).max(a)
}

/// The 38-entry persistence statistics vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatsVector<T> {
    pub births: QuantityStats<T>,
    pub deaths: QuantityStats<T>,
    pub midpoints: QuantityStats<T>,
    pub lifespans: QuantityStats<T>,
    /// Number of bars counted with multiplicity.
    pub count: T,
    pub entropy: T,
}

impl<T: Real> StatsVector<T> {
    pub const LEN: usize = 38;

    /// Field order: births, deaths, midpoints, lifespans blocks (each in
    /// [`QUANTITY_STAT_NAMES`] order), then count, then entropy.
    pub fn to_vec(&self) -> Vec<T> {
        let mut v = Vec::with_capacity(Self::LEN);
        for q in [&self.births, &self.deaths, &self.midpoints, &self.lifespans] {
            v.extend(q.to_array());
        }
        v.push(self.count);
        v.push(self.entropy);
        v
    }

    pub fn field_names() -> Vec<String> {
        let mut names = Vec::with_capacity(Self::LEN);
        for block in ["birth", "death", "midpoint", "lifespan"] {
            names.extend(QUANTITY_STAT_NAMES.iter().map(|s| format!("{block}_{s}")));
        }
        names.push("count".into());
        names.push("entropy".into());
        names
    }
}

/// `-Σ μ (ℓ/L) ln(ℓ/L)` per entry, with `L` the total persistence.
fn entropy_terms<T: Real>(b: &Barcode<T>) -> Vec<(T, T, T)> {
    let total = b.total_persistence();
    b.entries()
        .iter()
        .map(|(iv, m)| {
            let x = iv.lifespan() / total;
            let term = if x > T::zero() {
                -(T::of_usize(*m) * x * x.ln())
            } else {
                T::zero()
            };
            (iv.birth(), iv.death(), term)
        })
        .collect()
}

/// Persistent entropy of a finite nonempty barcode.
pub fn persistent_entropy<T: Real>(b: &Barcode<T>) -> Result<T> {
    if b.is_empty() {
        return Err(Error::EmptyBarcode);
    }
    let e: T = entropy_terms(b).into_iter().map(|(_, _, t)| t).fold(T::zero(), |a, b| a + b);
    Ok(e.max(T::zero()))
}

pub fn persistence_statistics<T: Real>(b: &Barcode<T>) -> Result<StatsVector<T>> {
    if b.is_empty() {
        return Err(Error::EmptyBarcode);
    }
    let bars: Vec<_> = b.expanded().collect();
    let q = |f: &dyn Fn(&crate::barcode::Interval<T>) -> T| {
        QuantityStats::of(bars.iter().map(f).collect())
    };
    Ok(StatsVector {
        births: q(&|i| i.birth()),
        deaths: q(&|i| i.death()),
        midpoints: q(&|i| i.midpoint()),
        lifespans: q(&|i| i.lifespan()),
        count: T::of_usize(bars.len()),
        entropy: persistent_entropy(b)?,
    })
}

/// Entropy summary `S(t) = -Σ 1[p <= t < q] μ (ℓ/L) ln(ℓ/L)` sampled on
/// `resolution` points of `range` (default `[min birth, max death]`).
pub fn entropy_summary<T: Real>(
    b: &Barcode<T>,
    resolution: usize,
    range: Option<SamplingRange<T>>,
) -> Result<SampledCurve<T>> {
    if b.is_empty() {
        return Err(Error::EmptyBarcode);
    }
    let range = resolve_range(b, range)?;
    let terms = entropy_terms(b);
    Ok(SampledCurve::sample(range.grid(resolution)?, |t| {
        terms
            .iter()
            .filter(|(p, q, _)| *p <= t && t < *q)
            .map(|(_, _, v)| *v)
            .fold(T::zero(), |a, b| a + b)
    }))
}
