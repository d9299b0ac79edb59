//! Vectorizations fitted on a training collection: adaptive templates (GMM
//! ellipses in the birth–lifespan plane) and ATOL (k-means centers in the
//! birth–death plane).

mod adaptive;
mod atol;
mod gmm;
mod kmeans;

pub use adaptive::{adaptive_template_features, fit_adaptive_templates, EllipseTemplate};
pub use atol::{atol_features, fit_atol, fit_atol_points, AtolModel, AtolScale};
pub use gmm::{fit_gmm, GaussianComponent, GaussianMixture};
pub use kmeans::{weighted_kmeans, KMeansFit};

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::scalar::{cmp, Real};

pub type Point<T> = [T; 2];

/// Distinct points in lexicographic order, each with its total multiplicity.
pub fn pool_points<T: Real>(points: impl IntoIterator<Item = (Point<T>, usize)>) -> Vec<(Point<T>, T)> {
    let mut all: Vec<(Point<T>, usize)> = points.into_iter().collect();
    all.sort_by(|a, b| cmp(&a.0[0], &b.0[0]).then(cmp(&a.0[1], &b.0[1])));
    let mut out: Vec<(Point<T>, usize)> = Vec::with_capacity(all.len());
    for (p, m) in all {
        match out.last_mut() {
            Some((q, n)) if *q == p => *n += m,
            _ => out.push((p, m)),
        }
    }
    out.into_iter().map(|(p, m)| (p, T::of_usize(m))).collect()
}

/// Bars of every training barcode mapped through `f`, rejecting essential
/// bars.
pub(crate) fn pooled_bars<T: Real>(
    training: &[Barcode<T>],
    f: impl Fn(T, T) -> Option<Point<T>>,
) -> Result<Vec<(Point<T>, T)>> {
    let mut raw = Vec::new();
    for b in training {
        if b.has_essential() {
            return Err(Error::InvalidInput(
                "ensemble fits need finite barcodes; apply an essential policy first".into(),
            ));
        }
        for (iv, m) in b.entries() {
            if let Some(p) = f(iv.birth(), iv.death()) {
                raw.push((p, *m));
            }
        }
    }
    Ok(pool_points(raw))
}

#[inline]
pub(crate) fn dist2<T: Real>(a: &Point<T>, b: &Point<T>) -> T {
    let (dx, dy) = (a[0] - b[0], a[1] - b[1]);
    dx * dx + dy * dy
}
