use serde::{Deserialize, Serialize};

use super::gmm::{det, fit_gmm, Sym2};
use super::{pooled_bars, Point};
use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Ellipse `{z : (z - x)ᵀ A (z - x) = 1}` in the birth–lifespan plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseTemplate<T> {
    pub center: Point<T>,
    /// Symmetric positive-definite `[[a, b], [b, c]]` as `[a, b, c]`.
    pub a: Sym2<T>,
}

impl<T: Real> EllipseTemplate<T> {
    pub fn new(center: Point<T>, a: Sym2<T>) -> Result<Self> {
        let t = EllipseTemplate { center, a };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.a.iter().chain(&self.center).all(|v| v.is_finite());
        if !finite || !(self.a[0] > T::zero()) || !(det(&self.a) > T::zero()) {
            return Err(Error::InvalidInput(
                "ellipse matrix must be finite and positive-definite".into(),
            ));
        }
        Ok(())
    }

    /// `h(z) = (z - x)ᵀ A (z - x)`.
    pub fn h(&self, z: Point<T>) -> T {
        let (dx, dy) = (z[0] - self.center[0], z[1] - self.center[1]);
        self.a[0] * dx * dx + T::of(2.0) * self.a[1] * dx * dy + self.a[2] * dy * dy
    }

    /// `1 - h` inside the ellipse, 0 on and outside it.
    pub fn g(&self, z: Point<T>) -> T {
        let h = self.h(z);
        if h < T::one() {
            T::one() - h
        } else {
            T::zero()
        }
    }
}

/// `A = (c² Σ)⁻¹`.
fn ellipse_matrix<T: Real>(cov: &Sym2<T>, coverage_scale: T) -> Sym2<T> {
    let c2 = coverage_scale * coverage_scale;
    let s = [cov[0] * c2, cov[1] * c2, cov[2] * c2];
    let d = det(&s);
    [s[2] / d, -s[1] / d, s[0] / d]
}

/// One ellipse per component of a `k`-component Gaussian mixture fitted on
/// the pooled birth–lifespan points.
pub fn fit_adaptive_templates<T: Real>(
    training: &[Barcode<T>],
    k: usize,
    coverage_scale: T,
    seed: u64,
) -> Result<Vec<EllipseTemplate<T>>> {
    if !(coverage_scale > T::zero()) || !coverage_scale.is_finite() {
        return Err(Error::InvalidParameter {
            name: "coverage_scale",
            reason: "must be positive".into(),
        });
    }
    let points = pooled_bars(training, |p, q| Some([p, q - p]))?;
    if points.is_empty() {
        return Err(Error::InvalidInput("training barcodes are all empty".into()));
    }
    let gmm = fit_gmm(&points, k, seed)?;
    gmm.components
        .iter()
        .map(|c| EllipseTemplate::new(c.mean, ellipse_matrix(&c.covariance, coverage_scale)))
        .collect()
}

/// Feature `j` is `Σ μ g_j(p, q - p)`.
pub fn adaptive_template_features<T: Real>(b: &Barcode<T>, templates: &[EllipseTemplate<T>]) -> Vec<T> {
    templates
        .iter()
        .map(|t| {
            b.entries()
                .iter()
                .map(|(iv, m)| T::of_usize(*m) * t.g([iv.birth(), iv.lifespan()]))
                .fold(T::zero(), |a, b| a + b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(pairs: &[(f64, f64)]) -> Barcode<f64> {
        Barcode::from_pairs(0, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn template_values() {
        let t = EllipseTemplate::new([1.0, 1.0], [1.0, 0.0, 1.0]).unwrap();
        assert_eq!(t.g([1.0, 1.0]), 1.0);
        assert_eq!(t.g([2.0, 1.0]), 0.0);
        assert_eq!(t.g([1.5, 1.0]), 0.75);
        let b = bc(&[(1.0, 2.0), (1.0, 2.0), (1.5, 2.5)]);
        assert_eq!(adaptive_template_features(&b, &[t]), vec![2.75]);
        assert!(EllipseTemplate::new([0.0, 0.0], [1.0, 2.0, 1.0]).is_err());
    }

    #[test]
    fn repeated_point_k1() {
        let b = bc(&[(1.0, 3.0), (1.0, 3.0)]);
        let t = fit_adaptive_templates(&[b.clone(), b], 1, 2.0, 0).unwrap();
        assert_eq!(t[0].center, [1.0, 2.0]);
        assert!(t[0].a[0] > 1e6);
    }

    #[test]
    fn coverage_scale_quarters_matrix() {
        let b = bc(&[(0.0, 1.0), (0.5, 2.0), (1.0, 1.5), (0.25, 3.0)]);
        let one = fit_adaptive_templates(std::slice::from_ref(&b), 1, 1.0, 9).unwrap();
        let two = fit_adaptive_templates(&[b], 1, 2.0, 9).unwrap();
        for i in 0..3 {
            assert_eq!(two[0].a[i], one[0].a[i] / 4.0);
        }
    }

    #[test]
    fn fit_errors() {
        let b = bc(&[(0.0, 1.0)]);
        assert!(fit_adaptive_templates(std::slice::from_ref(&b), 2, 2.0, 0).is_err());
        assert!(fit_adaptive_templates(std::slice::from_ref(&b), 1, 0.0, 0).is_err());
        assert!(fit_adaptive_templates(&[bc(&[])], 1, 2.0, 0).is_err());
        let e = Barcode::from_intervals(0, [crate::Interval::essential(0.0).unwrap()]);
        assert!(fit_adaptive_templates(&[e], 1, 2.0, 0).is_err());
    }
}
