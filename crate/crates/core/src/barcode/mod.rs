//! Barcodes: multisets of persistence intervals for one homology degree.

mod bottleneck;
mod io;

pub use bottleneck::bottleneck_distance;
pub use io::{format_barcodes, parse_barcodes, read_barcodes, write_barcodes};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cmp, Real};

/// A persistence interval `[birth, death]`. `death` may be `+inf` for an
/// essential class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<T> {
    birth: T,
    death: T,
}

impl<T: Real> Interval<T> {
    pub fn new(birth: T, death: T) -> Result<Self> {
        if birth.is_nan() || death.is_nan() || !birth.is_finite() || death < birth {
            return Err(Error::InvalidInterval {
                birth: birth.as_f64(),
                death: death.as_f64(),
            });
        }
        Ok(Interval { birth, death })
    }

    /// Essential interval `[birth, +inf)`.
    pub fn essential(birth: T) -> Result<Self> {
        Self::new(birth, T::infinity())
    }

    #[inline]
    pub fn birth(&self) -> T {
        self.birth
    }

    #[inline]
    pub fn death(&self) -> T {
        self.death
    }

    #[inline]
    pub fn lifespan(&self) -> T {
        self.death - self.birth
    }

    #[inline]
    pub fn midpoint(&self) -> T {
        (self.birth + self.death) / T::of(2.0)
    }

    #[inline]
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    /// Half-open containment `birth <= t < death`.
    #[inline]
    pub fn alive_at(&self, t: T) -> bool {
        self.birth <= t && t < self.death
    }

    fn key_cmp(&self, other: &Self) -> std::cmp::Ordering {
        cmp(&self.birth, &other.birth).then_with(|| cmp(&self.death, &other.death))
    }
}

/// How [`Barcode::normalize`] treats essential (infinite) intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "snake_case")]
pub enum EssentialPolicy<T> {
    /// Remove essential intervals.
    Drop,
    /// Replace `+inf` by the given value, which must be at least every finite
    /// death in the barcode.
    Clamp(T),
    /// Clamp to the largest finite death of the same barcode, dropping the
    /// essential intervals when no finite death exists.
    ClampToMaxDeath,
}

impl<T> Default for EssentialPolicy<T> {
    fn default() -> Self {
        EssentialPolicy::ClampToMaxDeath
    }
}

/// Multiset of intervals in a single homology dimension.
///
/// Entries are kept sorted by `(birth, death)` and identical intervals are
/// merged into a single entry carrying the summed multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Barcode<T> {
    dimension: usize,
    bars: Vec<(Interval<T>, usize)>,
}

impl<T: Real> Barcode<T> {
    pub fn empty(dimension: usize) -> Self {
        Barcode {
            dimension,
            bars: Vec::new(),
        }
    }

    /// Builds a barcode from intervals with multiplicities; zero
    /// multiplicities are discarded.
    pub fn from_entries<I>(dimension: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (Interval<T>, usize)>,
    {
        let mut bars: Vec<_> = entries.into_iter().filter(|(_, m)| *m > 0).collect();
        bars.sort_by(|a, b| a.0.key_cmp(&b.0));
        let mut merged: Vec<(Interval<T>, usize)> = Vec::with_capacity(bars.len());
        for (iv, m) in bars {
            match merged.last_mut() {
                Some((last, lm)) if *last == iv => *lm += m,
                _ => merged.push((iv, m)),
            }
        }
        Barcode {
            dimension,
            bars: merged,
        }
    }

    pub fn from_intervals<I>(dimension: usize, intervals: I) -> Self
    where
        I: IntoIterator<Item = Interval<T>>,
    {
        Self::from_entries(dimension, intervals.into_iter().map(|iv| (iv, 1)))
    }

    /// Convenience constructor from `(birth, death)` pairs.
    pub fn from_pairs<I>(dimension: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, T)>,
    {
        let ivs = pairs
            .into_iter()
            .map(|(b, d)| Interval::new(b, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_intervals(dimension, ivs))
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Distinct intervals with their multiplicities, sorted by `(birth, death)`.
    #[inline]
    pub fn entries(&self) -> &[(Interval<T>, usize)] {
        &self.bars
    }

    /// Every interval repeated according to its multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = Interval<T>> + '_ {
        self.bars
            .iter()
            .flat_map(|(iv, m)| std::iter::repeat_n(*iv, *m))
    }

    /// Number of bars counted with multiplicity.
    pub fn len(&self) -> usize {
        self.bars.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn has_essential(&self) -> bool {
        self.bars.iter().any(|(iv, _)| iv.is_essential())
    }

    pub fn min_birth(&self) -> Option<T> {
        self.bars.first().map(|(iv, _)| iv.birth)
    }

    pub fn max_death(&self) -> Option<T> {
        self.bars
            .iter()
            .map(|(iv, _)| iv.death)
            .max_by(|a, b| cmp(a, b))
    }

    fn max_finite_death(&self) -> Option<T> {
        self.bars
            .iter()
            .map(|(iv, _)| iv.death)
            .filter(|d| d.is_finite())
            .max_by(|a, b| cmp(a, b))
    }

    /// Sum of lifespans counted with multiplicity.
    pub fn total_persistence(&self) -> T {
        self.bars
            .iter()
            .map(|(iv, m)| iv.lifespan() * T::of_usize(*m))
            .fold(T::zero(), |a, b| a + b)
    }

    /// Multiset union with another barcode of the same dimension.
    pub fn union(&self, other: &Barcode<T>) -> Barcode<T> {
        Barcode::from_entries(
            self.dimension,
            self.bars.iter().chain(other.bars.iter()).copied(),
        )
    }

    /// Resolves essential intervals according to `policy` and removes
    /// zero-length intervals, leaving only finite bars with `birth < death`.
    pub fn normalize(&self, policy: EssentialPolicy<T>) -> Result<Barcode<T>> {
        let clamp = match policy {
            EssentialPolicy::Drop => None,
            EssentialPolicy::Clamp(v) => {
                if let Some(d) = self.max_finite_death() {
                    if v < d {
                        return Err(Error::InvalidClamp {
                            clamp: v.as_f64(),
                            death: d.as_f64(),
                        });
                    }
                }
                Some(v)
            }
            EssentialPolicy::ClampToMaxDeath => self.max_finite_death(),
        };
        let entries = self.bars.iter().filter_map(|&(iv, m)| {
            let death = if iv.is_essential() { clamp? } else { iv.death };
            (iv.birth < death).then_some((Interval { birth: iv.birth, death }, m))
        });
        Ok(Barcode::from_entries(self.dimension, entries))
    }

    /// True when every interval is finite with positive length.
    pub fn is_normalized(&self) -> bool {
        self.bars
            .iter()
            .all(|(iv, _)| iv.death.is_finite() && iv.birth < iv.death)
    }
}

/// Barcodes keyed by homology dimension.
pub type BarcodeSet<T> = BTreeMap<usize, Barcode<T>>;

/// Applies [`Barcode::normalize`] to every barcode of a set.
pub fn normalize_set<T: Real>(
    set: &BarcodeSet<T>,
    policy: EssentialPolicy<T>,
) -> Result<BarcodeSet<T>> {
    set.iter()
        .map(|(d, b)| Ok((*d, b.normalize(policy)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(pairs: &[(f64, f64)]) -> Barcode<f64> {
        Barcode::from_pairs(0, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn drop_removes_essential() {
        let b = bc(&[(0.0, f64::INFINITY)]);
        assert!(b.normalize(EssentialPolicy::Drop).unwrap().is_empty());
    }

    #[test]
    fn identical_intervals_merge() {
        let b = Barcode::from_entries(
            0,
            [
                (Interval::new(0.0, 1.0).unwrap(), 2),
                (Interval::new(0.0, 1.0).unwrap(), 1),
            ],
        );
        assert_eq!(b.entries().len(), 1);
        assert_eq!(b.entries()[0].1, 3);
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn clamp_replaces_infinite_death() {
        let b = bc(&[(0.0, f64::INFINITY), (0.0, 1.0)]);
        let n = b.normalize(EssentialPolicy::Clamp(2.0)).unwrap();
        assert_eq!(n, bc(&[(0.0, 2.0), (0.0, 1.0)]));
    }

    #[test]
    fn clamp_below_finite_death_is_rejected() {
        let b = bc(&[(0.0, f64::INFINITY), (0.0, 3.0)]);
        assert!(matches!(
            b.normalize(EssentialPolicy::Clamp(2.0)),
            Err(Error::InvalidClamp { .. })
        ));
    }

    #[test]
    fn clamp_to_max_death_drops_when_nothing_finite() {
        let b = bc(&[(0.0, f64::INFINITY)]);
        assert!(b
            .normalize(EssentialPolicy::ClampToMaxDeath)
            .unwrap()
            .is_empty());
        let b = bc(&[(0.0, f64::INFINITY), (0.5, 1.5)]);
        let n = b.normalize(EssentialPolicy::ClampToMaxDeath).unwrap();
        assert_eq!(n, bc(&[(0.0, 1.5), (0.5, 1.5)]));
    }

    #[test]
    fn zero_length_bars_are_removed() {
        let b = bc(&[(1.0, 1.0), (0.0, 1.0)]);
        let n = b.normalize(EssentialPolicy::Drop).unwrap();
        assert_eq!(n, bc(&[(0.0, 1.0)]));
        assert!(n.is_normalized());
    }

    #[test]
    fn normalize_is_idempotent() {
        let b = bc(&[(0.0, f64::INFINITY), (0.3, 0.3), (0.1, 2.0), (0.1, 2.0)]);
        let once = b.normalize(EssentialPolicy::ClampToMaxDeath).unwrap();
        let twice = once.normalize(EssentialPolicy::ClampToMaxDeath).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn iteration_is_sorted() {
        let b = bc(&[(2.0, 3.0), (0.0, 5.0), (0.0, 1.0)]);
        let births: Vec<_> = b.expanded().map(|i| (i.birth(), i.death())).collect();
        assert_eq!(births, vec![(0.0, 1.0), (0.0, 5.0), (2.0, 3.0)]);
    }

    #[test]
    fn invalid_intervals() {
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(f64::NEG_INFINITY, 1.0).is_err());
        assert!(Interval::new(1.0f32, f32::INFINITY).unwrap().is_essential());
    }
}
