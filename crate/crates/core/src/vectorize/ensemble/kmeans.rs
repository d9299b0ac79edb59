use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{dist2, Point};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_ITER: usize = 300;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeansFit<T> {
    pub centers: Vec<Point<T>>,
    /// Cluster index of every input point.
    pub assignment: Vec<usize>,
    /// Weighted inertia after each assignment step; non-increasing.
    pub inertia_history: Vec<T>,
}

impl<T: Real> KMeansFit<T> {
    pub fn inertia(&self) -> T {
        *self.inertia_history.last().expect("at least one iteration")
    }
}

fn nearest<T: Real>(p: &Point<T>, centers: &[Point<T>]) -> (usize, T) {
    let mut best = (0, dist2(p, &centers[0]));
    for (j, c) in centers.iter().enumerate().skip(1) {
        let d = dist2(p, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

/// Index drawn with probability proportional to `weights`.
fn draw(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    let mut last = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        last = i;
        if u < w {
            return i;
        }
        u -= w;
    }
    last
}

fn seed_centers<T: Real>(points: &[(Point<T>, T)], k: usize, rng: &mut ChaCha8Rng) -> Vec<Point<T>> {
    let w: Vec<f64> = points.iter().map(|(_, w)| w.as_f64()).collect();
    let mut centers = vec![points[draw(rng, &w)].0];
    let mut d2: Vec<f64> = points
        .iter()
        .map(|(p, _)| dist2(p, &centers[0]).as_f64())
        .collect();
    while centers.len() < k {
        let score: Vec<f64> = w.iter().zip(&d2).map(|(w, d)| w * d).collect();
        let c = points[draw(rng, &score)].0;
        for (d, (p, _)) in d2.iter_mut().zip(points) {
            *d = d.min(dist2(p, &c).as_f64());
        }
        centers.push(c);
    }
    centers
}

/// Lloyd's algorithm on distinct weighted points with k-means++ seeding.
///
/// Empty clusters keep their previous center. An update that would raise the
/// inertia through rounding is discarded and the fit stops.
pub fn weighted_kmeans<T: Real>(points: &[(Point<T>, T)], k: usize, seed: u64) -> Result<KMeansFit<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: "must be positive".into(),
        });
    }
    if k > points.len() {
        return Err(Error::InvalidInput(format!(
            "{k} clusters requested for {} distinct points",
            points.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers = seed_centers(points, k, &mut rng);
    let assign = |centers: &[Point<T>]| -> (Vec<usize>, T) {
        let mut inertia = T::zero();
        let a = points
            .iter()
            .map(|(p, w)| {
                let (j, d) = nearest(p, centers);
                inertia += *w * d;
                j
            })
            .collect();
        (a, inertia)
    };
    let (mut assignment, inertia) = assign(&centers);
    let mut history = vec![inertia];
    for _ in 0..MAX_ITER {
        let mut sums = vec![([T::zero(); 2], T::zero()); k];
        for ((p, w), &j) in points.iter().zip(&assignment) {
            sums[j].0[0] += *w * p[0];
            sums[j].0[1] += *w * p[1];
            sums[j].1 += *w;
        }
        let updated: Vec<Point<T>> = sums
            .iter()
            .zip(&centers)
            .map(|((s, w), c)| if *w > T::zero() { [s[0] / *w, s[1] / *w] } else { *c })
            .collect();
        let (next, inertia) = assign(&updated);
        if inertia > *history.last().unwrap() {
            break;
        }
        centers = updated;
        history.push(inertia);
        if next == assignment {
            break;
        }
        assignment = next;
    }
    Ok(KMeansFit {
        centers,
        assignment,
        inertia_history: history,
    })
}
