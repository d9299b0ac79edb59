use serde::{Deserialize, Serialize};

use super::kmeans::weighted_kmeans;
use super::{dist2, pooled_bars, Point};
use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// How ATOL scales are derived from the centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtolScale {
    /// `σ_i = ½ max_{j≠i} ‖z_j - z_i‖`.
    #[default]
    Max,
    /// `σ_i = ½ min_{j≠i} ‖z_j - z_i‖`.
    Min,
}

/// Centers and scales in the birth–death plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtolModel<T> {
    pub centers: Vec<Point<T>>,
    pub scales: Vec<T>,
    pub scale_mode: AtolScale,
}

impl<T: Real> AtolModel<T> {
    /// Derives the scales from `centers`.
    pub fn new(centers: Vec<Point<T>>, scale_mode: AtolScale) -> Result<Self> {
        if centers.len() < 2 {
            return Err(Error::AtolTooFewCenters);
        }
        let scales = (0..centers.len())
            .map(|i| {
                let d = centers
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, z)| dist2(z, &centers[i]).sqrt());
                let d = match scale_mode {
                    AtolScale::Max => d.fold(T::neg_infinity(), T::max),
                    AtolScale::Min => d.fold(T::infinity(), T::min),
                };
                d * T::of(0.5)
            })
            .collect();
        let model = AtolModel {
            centers,
            scales,
            scale_mode,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn b(&self) -> usize {
        self.centers.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.centers.len() < 2 {
            return Err(Error::AtolTooFewCenters);
        }
        if self.scales.len() != self.centers.len() {
            return Err(Error::InvalidInput("one scale per center required".into()));
        }
        if !self.scales.iter().all(|s| *s > T::zero() && s.is_finite()) {
            return Err(Error::InvalidInput(
                "ATOL scales must be positive; centers coincide".into(),
            ));
        }
        Ok(())
    }

    /// `Ω_i(x) = exp(-‖x - z_i‖ / σ_i)`.
    pub fn omega(&self, i: usize, x: Point<T>) -> T {
        (-(dist2(&x, &self.centers[i]).sqrt() / self.scales[i])).exp()
    }
}

/// Fits ATOL on explicit weighted points of the birth–death plane.
pub fn fit_atol_points<T: Real>(
    points: &[(Point<T>, T)],
    b: usize,
    seed: u64,
    scale_mode: AtolScale,
) -> Result<AtolModel<T>> {
    if b < 2 {
        return Err(Error::AtolTooFewCenters);
    }
    let km = weighted_kmeans(points, b, seed)?;
    AtolModel::new(km.centers, scale_mode)
}

/// Fits ATOL on the pooled points `(p, q)`, `q > p`, of the training set.
pub fn fit_atol<T: Real>(
    training: &[Barcode<T>],
    b: usize,
    seed: u64,
    scale_mode: AtolScale,
) -> Result<AtolModel<T>> {
    if b < 2 {
        return Err(Error::AtolTooFewCenters);
    }
    let points = pooled_bars(training, |p, q| (q > p).then_some([p, q]))?;
    fit_atol_points(&points, b, seed, scale_mode)
}

/// `Ω_i^μ = Σ μ Ω_i(p, q)` for every center.
pub fn atol_features<T: Real>(b: &Barcode<T>, model: &AtolModel<T>) -> Vec<T> {
    (0..model.b())
        .map(|i| {
            b.entries()
                .iter()
                .map(|(iv, m)| T::of_usize(*m) * model.omega(i, [iv.birth(), iv.death()]))
                .fold(T::zero(), |a, b| a + b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_center_example() {
        let pts = [([0.0, 0.0], 1.0), ([0.0, 2.0], 1.0)];
        let m = fit_atol_points(&pts, 2, 0, AtolScale::Max).unwrap();
        let mut c = m.centers.clone();
        c.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(c, vec![[0.0, 0.0], [0.0, 2.0]]);
        assert_eq!(m.scales, vec![1.0, 1.0]);

        let m = AtolModel::new(vec![[0.0, 0.0], [0.0, 2.0]], AtolScale::Max).unwrap();
        let b = Barcode::from_pairs(0, [(0.0, 2.0)]).unwrap();
        let f = atol_features(&b, &m);
        assert!((f[0] - (-2f64).exp()).abs() < 1e-12);
        assert_eq!(f[1], 1.0);
        assert_eq!(atol_features(&Barcode::empty(0), &m), vec![0.0, 0.0]);
    }

    #[test]
    fn scale_modes() {
        let z = vec![[0.0, 0.0], [1.0, 0.0], [4.0, 0.0]];
        let max = AtolModel::new(z.clone(), AtolScale::Max).unwrap();
        let min = AtolModel::new(z, AtolScale::Min).unwrap();
        assert_eq!(max.scales, vec![2.0, 1.5, 2.0]);
        assert_eq!(min.scales, vec![0.5, 0.5, 1.5]);
    }

    #[test]
    fn too_few_centers() {
        let b = Barcode::from_pairs(0, [(0.0, 2.0), (1.0, 3.0)]).unwrap();
        assert_eq!(
            fit_atol(std::slice::from_ref(&b), 1, 0, AtolScale::Max),
            Err(Error::AtolTooFewCenters)
        );
        assert_eq!(Error::AtolTooFewCenters.to_string(), "ATOL requires b ≥ 2");
        assert!(fit_atol(&[b], 3, 0, AtolScale::Max).is_err());
    }

    #[test]
    fn zero_length_bars_not_pooled() {
        let b = Barcode::from_pairs(0, [(0.0, 0.0), (0.0, 2.0), (1.0, 2.0)]).unwrap();
        let m = fit_atol(&[b], 2, 5, AtolScale::Max).unwrap();
        let mut c = m.centers.clone();
        c.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(c, vec![[0.0, 2.0], [1.0, 2.0]]);
    }
}
