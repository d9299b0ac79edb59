//! Polynomial, tropical and complex-polynomial barcode coordinates.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::barcode::Barcode;
use crate::scalar::{cmp, Real};

/// Bars expanded by multiplicity as `(birth, death)`, in barcode order.
pub fn ordered_bars<T: Real>(b: &Barcode<T>) -> Vec<(T, T)> {
    b.expanded().map(|i| (i.birth(), i.death())).collect()
}

/// Adcock–Carlsson coordinates `f1..f4` followed by `f5 = max lifespan`.
///
/// ```text
/// f1 = Σ p (q - p)              f2 = Σ (q_max - q)(q - p)
/// f3 = Σ p² (q - p)⁴            f4 = Σ (q_max - q)² (q - p)⁴
/// ```
pub fn algebraic_functions<T: Real>(b: &Barcode<T>) -> [T; 5] {
    let bars = ordered_bars(b);
    let Some(q_max) = bars.iter().map(|&(_, q)| q).max_by(cmp) else {
        return [T::zero(); 5];
    };
    let mut f = [T::zero(); 5];
    for &(p, q) in &bars {
        let l = q - p;
        let l4 = l.powi(4);
        let tail = q_max - q;
        f[0] += p * l;
        f[1] += tail * l;
        f[2] += p * p * l4;
        f[3] += tail * tail * l4;
        f[4] = f[4].max(l);
    }
    f
}

/// The seven tropical coordinates with parameter `r`, where the mixed terms
/// use `y = min(r λ, p)`.
///
/// F2–F4 are the largest sums of 2, 3 and 4 distinct lifespans, and 0 when the
/// barcode has fewer bars than that.
pub fn tropical_coordinates<T: Real>(b: &Barcode<T>, r: u32) -> [T; 7] {
    let bars = ordered_bars(b);
    let r = T::of(r as f64);
    if bars.is_empty() {
        return [T::zero(); 7];
    }
    let lambdas: Vec<T> = bars.iter().map(|&(p, q)| q - p).collect();

    // Order-stable ranking: indices of the top-k lifespans, summed in bar
    // order so the result equals the direct sum for that index subset.
    let mut rank: Vec<usize> = (0..lambdas.len()).collect();
    rank.sort_by(|&i, &j| cmp(&lambdas[j], &lambdas[i]).then(i.cmp(&j)));
    let top = |k: usize| -> T {
        if lambdas.len() < k {
            return T::zero();
        }
        let mut chosen = rank[..k].to_vec();
        chosen.sort_unstable();
        chosen.iter().fold(T::zero(), |acc, &i| acc + lambdas[i])
    };

    let ys: Vec<T> = bars
        .iter()
        .zip(&lambdas)
        .map(|(&(p, _), &l)| (r * l).min(p))
        .collect();
    let shifted: Vec<T> = ys.iter().zip(&lambdas).map(|(&y, &l)| y + l).collect();
    let peak = shifted.iter().copied().fold(T::neg_infinity(), T::max);

    [
        lambdas.iter().copied().fold(T::neg_infinity(), T::max),
        top(2),
        top(3),
        top(4),
        lambdas.iter().copied().fold(T::zero(), |a, b| a + b),
        ys.iter().copied().fold(T::zero(), |a, b| a + b),
        shifted.iter().map(|&s| peak - s).fold(T::zero(), |a, b| a + b),
    ]
}

/// Map from a bar `(x, y) = (birth, death)` to a root in ℂ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PolyTransform {
    /// `x + iy`
    #[default]
    R,
    /// `(y - x)/(α√2) · (x + iy)`, and `0` at the origin.
    S,
    /// `(y - x)/2 · [(cos α - sin α) + i(cos α + sin α)]`.
    T,
}

impl PolyTransform {
    /// `α = √(x² + y²)` throughout.
    pub fn apply<T: Real>(self, x: T, y: T) -> Complex<T> {
        let alpha = x.hypot(y);
        match self {
            PolyTransform::R => Complex::new(x, y),
            PolyTransform::S => {
                if x == T::zero() && y == T::zero() {
                    Complex::new(T::zero(), T::zero())
                } else {
                    let s = (y - x) / (alpha * T::SQRT_2());
                    Complex::new(s * x, s * y)
                }
            }
            PolyTransform::T => {
                let s = (y - x) / T::of(2.0);
                let (sin, cos) = alpha.sin_cos();
                Complex::new(s * (cos - sin), s * (cos + sin))
            }
        }
    }
}

/// Leading coefficients of `Π (z - X(p, q))^μ` below the monic term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexCoefficients<T> {
    /// Coefficients of `z^{n-1}, z^{n-2}, …`, zero-padded to the requested
    /// length.
    pub coefficients: Vec<Complex<T>>,
}

impl<T: Real> ComplexCoefficients<T> {
    /// Interleaved `(re, im)` features.
    pub fn to_vec(&self) -> Vec<T> {
        self.coefficients.iter().flat_map(|c| [c.re, c.im]).collect()
    }
}

/// Roots `X(p, q)` of the barcode polynomial, one per bar with multiplicity.
pub fn polynomial_roots<T: Real>(b: &Barcode<T>, transform: PolyTransform) -> Vec<Complex<T>> {
    ordered_bars(b)
        .into_iter()
        .map(|(p, q)| transform.apply(p, q))
        .collect()
}

/// All coefficients of the monic polynomial with the given roots, highest
/// degree first (the leading 1 included).
pub fn expand_roots<T: Real>(roots: &[Complex<T>]) -> Vec<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut coeffs = vec![Complex::new(T::one(), T::zero())];
    for &r in roots {
        coeffs.push(zero);
        for k in (1..coeffs.len()).rev() {
            let prev = coeffs[k - 1];
            coeffs[k] = coeffs[k] - r * prev;
        }
    }
    coeffs
}

pub fn complex_polynomial<T: Real>(
    b: &Barcode<T>,
    transform: PolyTransform,
    n_coeffs: usize,
) -> ComplexCoefficients<T> {
    let full = expand_roots(&polynomial_roots(b, transform));
    let zero = Complex::new(T::zero(), T::zero());
    let coefficients = (0..n_coeffs)
        .map(|k| full.get(k + 1).copied().unwrap_or(zero))
        .collect();
    ComplexCoefficients { coefficients }
}
