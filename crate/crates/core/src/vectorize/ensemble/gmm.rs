use serde::{Deserialize, Serialize};

use super::kmeans::weighted_kmeans;
use super::Point;
use crate::error::Result;
use crate::scalar::Real;

const MAX_ITER: usize = 200;
const TOL: f64 = 1e-10;

/// Symmetric 2×2 matrix `[[a, b], [b, c]]` stored as `[a, b, c]`.
pub type Sym2<T> = [T; 3];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianComponent<T> {
    pub weight: T,
    pub mean: Point<T>,
    pub covariance: Sym2<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianMixture<T> {
    pub components: Vec<GaussianComponent<T>>,
    pub log_likelihood: T,
}

pub(crate) fn det<T: Real>(s: &Sym2<T>) -> T {
    s[0] * s[2] - s[1] * s[1]
}

/// Adds `1e-9 · trace/2` to the diagonal when the matrix is near-singular.
/// A zero-trace matrix gets `floor` instead.
fn regularize<T: Real>(mut s: Sym2<T>, floor: T) -> Sym2<T> {
    let half_trace = (s[0] + s[2]) * T::of(0.5);
    let eps = T::of(1e-9);
    if det(&s) <= eps * half_trace * half_trace {
        let add = if half_trace > T::zero() {
            eps * half_trace
        } else {
            floor
        };
        s[0] += add;
        s[2] += add;
    }
    s
}

fn log_density<T: Real>(x: &Point<T>, c: &GaussianComponent<T>) -> T {
    let s = &c.covariance;
    let d = det(s);
    let (dx, dy) = (x[0] - c.mean[0], x[1] - c.mean[1]);
    let q = (s[2] * dx * dx - T::of(2.0) * s[1] * dx * dy + s[0] * dy * dy) / d;
    -(T::of(0.5) * q) - (T::TAU() * d.sqrt()).ln()
}

fn weighted_moments<T: Real>(points: &[(Point<T>, T)], r: impl Fn(usize) -> T) -> (T, Point<T>, Sym2<T>) {
    let mut w = T::zero();
    let mut m = [T::zero(); 2];
    for (i, (p, n)) in points.iter().enumerate() {
        let ri = r(i) * *n;
        w += ri;
        m[0] += ri * p[0];
        m[1] += ri * p[1];
    }
    if !(w > T::zero()) {
        return (w, m, [T::zero(); 3]);
    }
    m = [m[0] / w, m[1] / w];
    let mut s = [T::zero(); 3];
    for (i, (p, n)) in points.iter().enumerate() {
        let ri = r(i) * *n;
        let (dx, dy) = (p[0] - m[0], p[1] - m[1]);
        s[0] += ri * dx * dx;
        s[1] += ri * dx * dy;
        s[2] += ri * dy * dy;
    }
    (w, m, [s[0] / w, s[1] / w, s[2] / w])
}

/// EM for a `k`-component full-covariance mixture on weighted points,
/// initialised from a seeded k-means fit.
pub fn fit_gmm<T: Real>(points: &[(Point<T>, T)], k: usize, seed: u64) -> Result<GaussianMixture<T>> {
    let km = weighted_kmeans(points, k, seed)?;
    let total: T = points.iter().map(|(_, w)| *w).sum();
    let (_, _, global) = weighted_moments(points, |_| T::one());
    let global_half_trace = (global[0] + global[2]) * T::of(0.5);
    let floor = if global_half_trace > T::zero() {
        T::of(1e-9) * global_half_trace
    } else {
        T::of(1e-12)
    };

    let mut comps: Vec<GaussianComponent<T>> = (0..k)
        .map(|j| {
            let (w, _, cov) = weighted_moments(points, |i| {
                if km.assignment[i] == j {
                    T::one()
                } else {
                    T::zero()
                }
            });
            GaussianComponent {
                weight: w / total,
                mean: km.centers[j],
                covariance: regularize(cov, floor),
            }
        })
        .collect();

    let n = points.len();
    let mut resp = vec![T::zero(); n * k];
    let mut prev_ll = T::neg_infinity();
    let mut ll = prev_ll;
    for _ in 0..MAX_ITER {
        // E step in log space.
        ll = T::zero();
        for (i, (p, w)) in points.iter().enumerate() {
            let row = &mut resp[i * k..(i + 1) * k];
            for (r, c) in row.iter_mut().zip(&comps) {
                *r = if c.weight > T::zero() {
                    c.weight.ln() + log_density(p, c)
                } else {
                    T::neg_infinity()
                };
            }
            let hi = row.iter().copied().fold(T::neg_infinity(), T::max);
            let lse = hi + row.iter().map(|&r| (r - hi).exp()).sum::<T>().ln();
            for r in row.iter_mut() {
                *r = (*r - lse).exp();
            }
            ll += *w * lse;
        }
        // M step; a component that lost all mass keeps its parameters.
        for (j, c) in comps.iter_mut().enumerate() {
            let (w, m, cov) = weighted_moments(points, |i| resp[i * k + j]);
            if w > T::zero() {
                *c = GaussianComponent {
                    weight: w / total,
                    mean: m,
                    covariance: regularize(cov, floor),
                };
            }
        }
        if (ll - prev_ll).abs() <= T::of(TOL) * ll.abs() {
            break;
        }
        prev_ll = ll;
    }
    Ok(GaussianMixture {
        components: comps,
        log_likelihood: ll,
    })
}
