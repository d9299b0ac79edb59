use std::collections::HashMap;

use super::{Cell, FilteredComplex};
use crate::error::{Error, Result};
use crate::scalar::{cmp, Real};

/// Finite point cloud in ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud<T> {
    points: Vec<Vec<T>>,
}

impl<T: Real> PointCloud<T> {
    pub fn new(points: Vec<Vec<T>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidInput("point cloud is empty".into()))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::InvalidInput("points have no coordinates".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::InvalidInput(format!(
                    "point {i} has {} coordinates, expected {n}",
                    p.len()
                )));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!("point {i} is not finite")));
            }
        }
        Ok(PointCloud { points })
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn distance(&self, i: usize, j: usize) -> T {
        self.points[i]
            .iter()
            .zip(&self.points[j])
            .map(|(a, b)| (*a - *b) * (*a - *b))
            .sum::<T>()
            .sqrt()
    }

    /// Full pairwise Euclidean distance matrix.
    pub fn distance_matrix(&self) -> Vec<Vec<T>> {
        let n = self.len();
        let mut d = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.distance(i, j);
                d[i][j] = v;
                d[j][i] = v;
            }
        }
        d
    }
}

/// Size caps for Vietoris–Rips construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RipsBudget {
    pub max_points: usize,
    pub max_dim: usize,
    pub max_simplices: usize,
}

impl Default for RipsBudget {
    fn default() -> Self {
        RipsBudget {
            max_points: 512,
            max_dim: 2,
            max_simplices: 4_000_000,
        }
    }
}

/// Hard limit on simplex dimension regardless of budget.
pub const MAX_RIPS_DIM: usize = 3;

/// Vietoris–Rips filtration up to simplices of dimension `max_dim`.
///
/// A simplex is present iff all its pairwise distances are `<= max_scale` and
/// enters at its largest pairwise distance. Cells are emitted sorted by
/// (filtration, dimension, lexicographic vertex list).
pub fn rips_complex<T: Real>(
    pc: &PointCloud<T>,
    max_scale: T,
    max_dim: usize,
    budget: &RipsBudget,
) -> Result<FilteredComplex<T>> {
    if !(max_scale > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "max_scale",
            reason: "must be positive".into(),
        });
    }
    if max_dim > MAX_RIPS_DIM {
        return Err(Error::InvalidParameter {
            name: "max_dim",
            reason: format!("at most {MAX_RIPS_DIM}"),
        });
    }
    if pc.len() > budget.max_points {
        return Err(Error::Budget(format!(
            "{} points exceed the cap of {}",
            pc.len(),
            budget.max_points
        )));
    }
    if max_dim > budget.max_dim {
        return Err(Error::Budget(format!(
            "max_dim {max_dim} exceeds the cap of {}",
            budget.max_dim
        )));
    }

    let n = pc.len();
    let dist = pc.distance_matrix();
    // Higher-indexed neighbours within range, for clique expansion.
    let up: Vec<Vec<usize>> = (0..n)
        .map(|i| ((i + 1)..n).filter(|&j| dist[i][j] <= max_scale).collect())
        .collect();

    let mut simplices: Vec<(Vec<usize>, T)> = Vec::new();
    let mut stack: Vec<(Vec<usize>, T, Vec<usize>)> = (0..n)
        .rev()
        .map(|i| (vec![i], T::zero(), up[i].clone()))
        .collect();
    while let Some((verts, value, candidates)) = stack.pop() {
        if simplices.len() >= budget.max_simplices {
            return Err(Error::Budget(format!(
                "more than {} simplices",
                budget.max_simplices
            )));
        }
        if verts.len() <= max_dim {
            for &c in candidates.iter().rev() {
                let next: Vec<usize> = candidates
                    .iter()
                    .copied()
                    .filter(|&o| o > c && dist[c][o] <= max_scale)
                    .collect();
                let v = verts
                    .iter()
                    .fold(value, |acc, &u| acc.max(dist[u][c]));
                let mut nv = verts.clone();
                nv.push(c);
                stack.push((nv, v, next));
            }
        }
        simplices.push((verts, value));
    }

    simplices.sort_by(|a, b| {
        cmp(&a.1, &b.1)
            .then(a.0.len().cmp(&b.0.len()))
            .then_with(|| a.0.cmp(&b.0))
    });

    let index: HashMap<&[usize], usize> = simplices
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (v.as_slice(), i))
        .collect();
    let mut cells = Vec::with_capacity(simplices.len());
    let mut face = Vec::with_capacity(MAX_RIPS_DIM + 1);
    for (verts, value) in &simplices {
        let mut boundary = Vec::with_capacity(verts.len());
        if verts.len() > 1 {
            for skip in 0..verts.len() {
                face.clear();
                face.extend(verts.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v));
                boundary.push(index[face.as_slice()]);
            }
            boundary.sort_unstable();
        }
        cells.push(Cell {
            dim: verts.len() - 1,
            filtration: *value,
            boundary,
        });
    }
    Ok(FilteredComplex::new(cells))
}
