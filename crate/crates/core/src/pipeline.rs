//! Uniform method descriptions, fit/transform, and multi-dimension pipelines.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::barcode::{normalize_set, Barcode, BarcodeSet, EssentialPolicy};
use crate::error::{Error, Result};
use crate::sampling::{SampledCurve, SamplingRange};
use crate::scalar::Real;
use crate::vectorize::{
    adaptive_template_features, algebraic_functions, atol_features, betti_curve,
    complex_polynomial, entropy_summary, fit_adaptive_templates, fit_atol, fit_tent_grid,
    landscapes, lifespan_curve, persistence_image, persistence_statistics, silhouette,
    tent_template_features, tropical_coordinates, AtolModel, AtolScale, EllipseTemplate, ImageGrid,
    PolyTransform, StatsVector, TentGrid,
};

/// Largest feature vector a single method may produce.
pub const MAX_OUTPUT_LEN: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodId {
    PersistenceStatistics,
    EntropySummary,
    AlgebraicFunctions,
    TropicalCoordinates,
    ComplexPolynomial,
    BettiCurve,
    LifespanCurve,
    PersistenceLandscape,
    PersistenceSilhouette,
    PersistenceImage,
    TemplateFunction,
    AdaptiveTemplateSystem,
    Atol,
}

/// How a client should display a method's output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RenderHint {
    Table,
    Bars,
    Curve,
    Heatmap,
}

impl MethodId {
    pub const ALL: [MethodId; 13] = [
        MethodId::PersistenceStatistics,
        MethodId::EntropySummary,
        MethodId::AlgebraicFunctions,
        MethodId::TropicalCoordinates,
        MethodId::ComplexPolynomial,
        MethodId::BettiCurve,
        MethodId::LifespanCurve,
        MethodId::PersistenceLandscape,
        MethodId::PersistenceSilhouette,
        MethodId::PersistenceImage,
        MethodId::TemplateFunction,
        MethodId::AdaptiveTemplateSystem,
        MethodId::Atol,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodId::PersistenceStatistics => "persistence_statistics",
            MethodId::EntropySummary => "entropy_summary",
            MethodId::AlgebraicFunctions => "algebraic_functions",
            MethodId::TropicalCoordinates => "tropical_coordinates",
            MethodId::ComplexPolynomial => "complex_polynomial",
            MethodId::BettiCurve => "betti_curve",
            MethodId::LifespanCurve => "lifespan_curve",
            MethodId::PersistenceLandscape => "persistence_landscape",
            MethodId::PersistenceSilhouette => "persistence_silhouette",
            MethodId::PersistenceImage => "persistence_image",
            MethodId::TemplateFunction => "template_function",
            MethodId::AdaptiveTemplateSystem => "adaptive_template_system",
            MethodId::Atol => "atol",
        }
    }

    pub fn parse(s: &str) -> Option<MethodId> {
        MethodId::ALL.into_iter().find(|m| m.as_str() == s)
    }

    pub fn render_hint(self) -> RenderHint {
        use MethodId::*;
        match self {
            PersistenceStatistics => RenderHint::Table,
            EntropySummary | BettiCurve | LifespanCurve | PersistenceLandscape
            | PersistenceSilhouette => RenderHint::Curve,
            PersistenceImage => RenderHint::Heatmap,
            AlgebraicFunctions | TropicalCoordinates | ComplexPolynomial | TemplateFunction
            | AdaptiveTemplateSystem | Atol => RenderHint::Bars,
        }
    }

    /// Methods whose functions are learned from a training collection and
    /// cannot be applied to a lone barcode.
    pub fn is_ensemble(self) -> bool {
        matches!(self, MethodId::AdaptiveTemplateSystem | MethodId::Atol)
    }

    pub fn default_spec(self) -> VectorizerSpec {
        serde_json::from_value(serde_json::json!({ "method": self.as_str() }))
            .expect("every method has full defaults")
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

mod defaults {
    pub fn resolution() -> usize {
        100
    }
    pub fn r() -> u32 {
        10
    }
    pub fn n_coeffs() -> usize {
        5
    }
    pub fn landscape_k() -> usize {
        5
    }
    pub fn alpha() -> f64 {
        1.0
    }
    pub fn image_resolution() -> usize {
        20
    }
    pub fn sigma() -> f64 {
        0.5
    }
    pub fn d() -> usize {
        10
    }
    pub fn padding() -> f64 {
        0.5
    }
    pub fn adaptive_k() -> usize {
        10
    }
    pub fn coverage_scale() -> f64 {
        2.0
    }
    pub fn atol_b() -> usize {
        8
    }
}

/// A method and its parameters. Serialized with a `method` tag, e.g.
/// `{"method": "persistence_landscape", "k": 5, "resolution": 100}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case", deny_unknown_fields)]
pub enum VectorizerSpec {
    PersistenceStatistics {},
    EntropySummary {
        #[serde(default = "defaults::resolution")]
        resolution: usize,
    },
    AlgebraicFunctions {},
    TropicalCoordinates {
        #[serde(default = "defaults::r")]
        r: u32,
    },
    ComplexPolynomial {
        #[serde(default)]
        transform: PolyTransform,
        #[serde(default = "defaults::n_coeffs")]
        n_coeffs: usize,
    },
    BettiCurve {
        #[serde(default = "defaults::resolution")]
        resolution: usize,
    },
    LifespanCurve {
        #[serde(default = "defaults::resolution")]
        resolution: usize,
    },
    PersistenceLandscape {
        #[serde(default = "defaults::landscape_k")]
        k: usize,
        #[serde(default = "defaults::resolution")]
        resolution: usize,
    },
    PersistenceSilhouette {
        #[serde(default = "defaults::alpha")]
        alpha: f64,
        #[serde(default = "defaults::resolution")]
        resolution: usize,
    },
    PersistenceImage {
        #[serde(default = "defaults::image_resolution")]
        resolution: usize,
        #[serde(default = "defaults::sigma")]
        sigma: f64,
    },
    TemplateFunction {
        #[serde(default = "defaults::d")]
        d: usize,
        #[serde(default = "defaults::padding")]
        padding: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<f64>,
    },
    AdaptiveTemplateSystem {
        #[serde(default = "defaults::adaptive_k")]
        k: usize,
        #[serde(default = "defaults::coverage_scale")]
        coverage_scale: f64,
        #[serde(default)]
        seed: u64,
    },
    Atol {
        #[serde(default = "defaults::atol_b")]
        b: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default)]
        scale: AtolScale,
    },
}

fn invalid(name: &'static str, reason: &str) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

impl VectorizerSpec {
    pub fn method(&self) -> MethodId {
        use VectorizerSpec as S;
        match self {
            S::PersistenceStatistics {} => MethodId::PersistenceStatistics,
            S::EntropySummary { .. } => MethodId::EntropySummary,
            S::AlgebraicFunctions {} => MethodId::AlgebraicFunctions,
            S::TropicalCoordinates { .. } => MethodId::TropicalCoordinates,
            S::ComplexPolynomial { .. } => MethodId::ComplexPolynomial,
            S::BettiCurve { .. } => MethodId::BettiCurve,
            S::LifespanCurve { .. } => MethodId::LifespanCurve,
            S::PersistenceLandscape { .. } => MethodId::PersistenceLandscape,
            S::PersistenceSilhouette { .. } => MethodId::PersistenceSilhouette,
            S::PersistenceImage { .. } => MethodId::PersistenceImage,
            S::TemplateFunction { .. } => MethodId::TemplateFunction,
            S::AdaptiveTemplateSystem { .. } => MethodId::AdaptiveTemplateSystem,
            S::Atol { .. } => MethodId::Atol,
        }
    }

    /// Parameters without the method tag, as a JSON object.
    pub fn params(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("spec serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("method");
        }
        v
    }

    /// Number of reals produced for one homology dimension.
    pub fn output_len(&self) -> usize {
        use VectorizerSpec as S;
        match *self {
            S::PersistenceStatistics {} => StatsVector::<f64>::LEN,
            S::EntropySummary { resolution }
            | S::BettiCurve { resolution }
            | S::LifespanCurve { resolution }
            | S::PersistenceSilhouette { resolution, .. } => resolution,
            S::AlgebraicFunctions {} => 5,
            S::TropicalCoordinates { .. } => 7,
            S::ComplexPolynomial { n_coeffs, .. } => n_coeffs.saturating_mul(2),
            S::PersistenceLandscape { k, resolution } => k.saturating_mul(resolution),
            S::PersistenceImage { resolution, .. } => resolution.saturating_mul(resolution),
            S::TemplateFunction { d, .. } => d.saturating_mul(d),
            S::AdaptiveTemplateSystem { k, .. } => k,
            S::Atol { b, .. } => b,
        }
    }

    pub fn validate(&self) -> Result<()> {
        use VectorizerSpec as S;
        let curve_res = |r: usize| {
            if r < 2 {
                Err(invalid("resolution", "must be at least 2"))
            } else {
                Ok(())
            }
        };
        match *self {
            S::PersistenceStatistics {} | S::AlgebraicFunctions {} => {}
            S::EntropySummary { resolution }
            | S::BettiCurve { resolution }
            | S::LifespanCurve { resolution } => curve_res(resolution)?,
            S::TropicalCoordinates { r } => {
                if r == 0 {
                    return Err(invalid("r", "must be positive"));
                }
            }
            S::ComplexPolynomial { n_coeffs, .. } => {
                if n_coeffs == 0 {
                    return Err(invalid("n_coeffs", "must be positive"));
                }
            }
            S::PersistenceLandscape { k, resolution } => {
                if k == 0 {
                    return Err(invalid("k", "must be positive"));
                }
                curve_res(resolution)?;
            }
            S::PersistenceSilhouette { alpha, resolution } => {
                if !(alpha >= 0.0) || !alpha.is_finite() {
                    return Err(invalid("alpha", "must be a finite nonnegative number"));
                }
                curve_res(resolution)?;
            }
            S::PersistenceImage { resolution, sigma } => {
                if resolution == 0 {
                    return Err(invalid("resolution", "must be positive"));
                }
                if !(sigma > 0.0) || !sigma.is_finite() {
                    return Err(invalid("sigma", "must be positive"));
                }
            }
            S::TemplateFunction { d, padding, delta } => {
                if d == 0 {
                    return Err(invalid("d", "must be positive"));
                }
                if !(padding >= 0.0) || !padding.is_finite() {
                    return Err(invalid("padding", "must be nonnegative"));
                }
                if let Some(dl) = delta {
                    if !(dl > 0.0) || !dl.is_finite() {
                        return Err(invalid("delta", "must be positive"));
                    }
                }
            }
            S::AdaptiveTemplateSystem {
                k, coverage_scale, ..
            } => {
                if k == 0 {
                    return Err(invalid("k", "must be positive"));
                }
                if !(coverage_scale > 0.0) || !coverage_scale.is_finite() {
                    return Err(invalid("coverage_scale", "must be positive"));
                }
            }
            S::Atol { b, .. } => {
                if b < 2 {
                    return Err(Error::AtolTooFewCenters);
                }
            }
        }
        if self.output_len() > MAX_OUTPUT_LEN {
            return Err(Error::Budget(format!(
                "{} would produce {} features (limit {MAX_OUTPUT_LEN})",
                self.method(),
                self.output_len()
            )));
        }
        Ok(())
    }

    /// Feature names for one homology dimension.
    pub fn labels(&self) -> Vec<String> {
        use VectorizerSpec as S;
        let indexed = |prefix: &str, n: usize| (0..n).map(|i| format!("{prefix}{i}")).collect();
        match *self {
            S::PersistenceStatistics {} => StatsVector::<f64>::field_names(),
            S::AlgebraicFunctions {} => (1..=5).map(|i| format!("f{i}")).collect(),
            S::TropicalCoordinates { .. } => (1..=7).map(|i| format!("F{i}")).collect(),
            S::ComplexPolynomial { n_coeffs, .. } => (1..=n_coeffs)
                .flat_map(|i| [format!("re_a{i}"), format!("im_a{i}")])
                .collect(),
            S::EntropySummary { resolution }
            | S::BettiCurve { resolution }
            | S::LifespanCurve { resolution }
            | S::PersistenceSilhouette { resolution, .. } => indexed("t", resolution),
            S::PersistenceLandscape { k, resolution } => (1..=k)
                .flat_map(|l| (0..resolution).map(move |i| format!("l{l}_t{i}")))
                .collect(),
            S::PersistenceImage { resolution, .. } => (0..resolution)
                .flat_map(|r| (0..resolution).map(move |c| format!("px_r{r}_c{c}")))
                .collect(),
            S::TemplateFunction { d, .. } => (0..d)
                .flat_map(|r| (0..d).map(move |c| format!("tent_r{r}_c{c}")))
                .collect(),
            S::AdaptiveTemplateSystem { k, .. } => indexed("ellipse", k),
            S::Atol { b, .. } => indexed("center", b),
        }
    }
}

/// State learned by [`FittedVectorizer::fit`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FittedState<T> {
    None,
    /// Common sampling range for curve methods.
    Range { range: SamplingRange<T> },
    Image { grid: ImageGrid<T> },
    Tents { grid: TentGrid<T> },
    Templates { templates: Vec<EllipseTemplate<T>> },
    Atol { model: AtolModel<T> },
}

/// A method with everything it needs to map one barcode to a fixed-length
/// vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedVectorizer<T> {
    pub spec: VectorizerSpec,
    pub state: FittedState<T>,
}

impl<T: Real> FittedVectorizer<T> {
    /// Learns ranges, grids or ensemble models from `training`, which must
    /// contain finite barcodes only.
    pub fn fit(spec: &VectorizerSpec, training: &[Barcode<T>]) -> Result<Self> {
        use VectorizerSpec as S;
        spec.validate()?;
        if training.iter().any(Barcode::has_essential) {
            return Err(Error::InvalidInput(
                "training barcodes must be finite; apply an essential policy".into(),
            ));
        }
        let state = match *spec {
            S::PersistenceStatistics {}
            | S::AlgebraicFunctions {}
            | S::TropicalCoordinates { .. }
            | S::ComplexPolynomial { .. } => FittedState::None,
            S::EntropySummary { .. }
            | S::BettiCurve { .. }
            | S::LifespanCurve { .. }
            | S::PersistenceLandscape { .. }
            | S::PersistenceSilhouette { .. } => FittedState::Range {
                range: SamplingRange::covering(training).unwrap_or_else(|| {
                    Ok(SamplingRange {
                        lo: T::zero(),
                        hi: T::one(),
                    })
                })?,
            },
            S::PersistenceImage { resolution, sigma } => {
                let sigma = T::of(sigma);
                let grid = if training.iter().all(Barcode::is_empty) {
                    let pad = sigma * T::of(3.0);
                    ImageGrid::new(
                        SamplingRange::new(-pad, T::one() + pad)?,
                        SamplingRange::new(-pad, T::one() + pad)?,
                        resolution,
                        resolution,
                        sigma,
                    )?
                } else {
                    ImageGrid::fit(training, resolution, resolution, sigma)?
                };
                FittedState::Image { grid }
            }
            S::TemplateFunction { d, padding, delta } => FittedState::Tents {
                grid: fit_tent_grid(training, d, T::of(padding), delta.map(T::of))?,
            },
            S::AdaptiveTemplateSystem {
                k,
                coverage_scale,
                seed,
            } => FittedState::Templates {
                templates: fit_adaptive_templates(training, k, T::of(coverage_scale), seed)?,
            },
            S::Atol { b, seed, scale } => FittedState::Atol {
                model: fit_atol(training, b, seed, scale)?,
            },
        };
        Ok(FittedVectorizer {
            spec: spec.clone(),
            state,
        })
    }

    /// A vectorizer that resolves ranges and grids from each barcode it is
    /// applied to. Ensemble methods need [`fit`](Self::fit) and are
    /// rejected.
    pub fn unfitted(spec: &VectorizerSpec) -> Result<Self> {
        spec.validate()?;
        if spec.method().is_ensemble() {
            return Err(Error::ModelRequired(spec.method().to_string()));
        }
        Ok(FittedVectorizer {
            spec: spec.clone(),
            state: FittedState::None,
        })
    }

    pub fn output_len(&self) -> usize {
        self.spec.output_len()
    }

    pub fn validate(&self) -> Result<()> {
        use VectorizerSpec as S;
        self.spec.validate()?;
        match (&self.spec, &self.state) {
            (S::AdaptiveTemplateSystem { k, .. }, FittedState::Templates { templates }) => {
                if templates.len() != *k {
                    return Err(Error::InvalidInput(format!(
                        "model has {} templates, spec asks for {k}",
                        templates.len()
                    )));
                }
                templates.iter().try_for_each(EllipseTemplate::validate)
            }
            (S::Atol { b, .. }, FittedState::Atol { model }) => {
                model.validate()?;
                if model.b() != *b {
                    return Err(Error::InvalidInput(format!(
                        "model has {} centers, spec asks for {b}",
                        model.b()
                    )));
                }
                Ok(())
            }
            (S::AdaptiveTemplateSystem { .. } | S::Atol { .. }, _) => {
                Err(Error::ModelRequired(self.spec.method().to_string()))
            }
            (S::PersistenceImage { .. }, FittedState::Image { grid }) => grid.validate(),
            _ => Ok(()),
        }
    }

    /// Single-barcode range: the stored range, else the barcode's own.
    fn range(&self, b: &Barcode<T>) -> Option<SamplingRange<T>> {
        match self.state {
            FittedState::Range { range } => Some(range),
            _ => SamplingRange::of_barcode(b).ok(),
        }
    }

    /// Sampling grid of curve methods for `b`.
    pub fn grid(&self, b: &Barcode<T>) -> Option<Vec<T>> {
        use VectorizerSpec as S;
        let res = match self.spec {
            S::EntropySummary { resolution }
            | S::BettiCurve { resolution }
            | S::LifespanCurve { resolution }
            | S::PersistenceLandscape { resolution, .. }
            | S::PersistenceSilhouette { resolution, .. } => resolution,
            _ => return None,
        };
        let range = self.range(b).unwrap_or(SamplingRange {
            lo: T::zero(),
            hi: T::one(),
        });
        range.grid(res).ok()
    }

    /// Feature vector of a finite barcode. Methods that are undefined on the
    /// empty barcode yield zeros for it.
    pub fn transform(&self, b: &Barcode<T>) -> Result<Vec<T>> {
        use VectorizerSpec as S;
        if b.has_essential() {
            return Err(Error::InvalidInput(
                "barcode has essential bars; apply an essential policy".into(),
            ));
        }
        let zeros = || vec![T::zero(); self.output_len()];
        let needs_bars = matches!(
            self.spec,
            S::PersistenceStatistics {} | S::EntropySummary { .. } | S::PersistenceSilhouette { .. }
        );
        if b.is_empty() && needs_bars {
            log::warn!("{}: empty barcode filled with zeros", self.spec.method());
            return Ok(zeros());
        }
        let range = self.range(b);
        let values = match (&self.spec, &self.state) {
            (S::PersistenceStatistics {}, _) => persistence_statistics(b)?.to_vec(),
            (S::EntropySummary { resolution }, _) => {
                entropy_summary(b, *resolution, range)?.values
            }
            (S::AlgebraicFunctions {}, _) => algebraic_functions(b).to_vec(),
            (S::TropicalCoordinates { r }, _) => tropical_coordinates(b, *r).to_vec(),
            (S::ComplexPolynomial { transform, n_coeffs }, _) => {
                complex_polynomial(b, *transform, *n_coeffs).to_vec()
            }
            (S::BettiCurve { resolution }, _) => betti_curve(b, *resolution, range)?.values,
            (S::LifespanCurve { resolution }, _) => lifespan_curve(b, *resolution, range)?.values,
            (S::PersistenceLandscape { k, resolution }, _) => {
                landscapes(b, *k, *resolution, range)?.to_vec()
            }
            (S::PersistenceSilhouette { alpha, resolution }, _) => {
                silhouette(b, T::of(*alpha), *resolution, range)?.values
            }
            (S::PersistenceImage { .. }, FittedState::Image { grid }) => {
                persistence_image(b, grid)?
            }
            (S::PersistenceImage { resolution, sigma }, _) => {
                if b.is_empty() {
                    return Ok(zeros());
                }
                let grid = ImageGrid::fit([b], *resolution, *resolution, T::of(*sigma))?;
                persistence_image(b, &grid)?
            }
            (S::TemplateFunction { .. }, FittedState::Tents { grid }) => {
                tent_template_features(b, grid)
            }
            (S::TemplateFunction { d, padding, delta }, _) => {
                if b.is_empty() {
                    return Ok(zeros());
                }
                let grid = fit_tent_grid(
                    std::slice::from_ref(b),
                    *d,
                    T::of(*padding),
                    delta.map(T::of),
                )?;
                tent_template_features(b, &grid)
            }
            (S::AdaptiveTemplateSystem { .. }, FittedState::Templates { templates }) => {
                adaptive_template_features(b, templates)
            }
            (S::Atol { .. }, FittedState::Atol { model }) => atol_features(b, model),
            (S::AdaptiveTemplateSystem { .. } | S::Atol { .. }, _) => {
                return Err(Error::ModelRequired(self.spec.method().to_string()))
            }
        };
        debug_assert_eq!(values.len(), self.output_len());
        Ok(values)
    }

    /// Curve methods only: the transform paired with its sampling grid.
    pub fn transform_curve(&self, b: &Barcode<T>) -> Result<Option<SampledCurve<T>>> {
        let Some(grid) = self.grid(b) else {
            return Ok(None);
        };
        let values = self.transform(b)?;
        Ok(Some(SampledCurve { grid, values }))
    }
}

/// A feature vector with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector<T> {
    pub method: MethodId,
    pub params: serde_json::Value,
    /// Homology dimensions concatenated, in order.
    pub dims: Vec<usize>,
    pub labels: Vec<String>,
    pub values: Vec<T>,
}

impl<T> FeatureVector<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// One fitted vectorizer per homology dimension; outputs are concatenated
/// in `dims` order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedPipeline<T> {
    pub policy: EssentialPolicy<T>,
    pub dims: Vec<usize>,
    pub vectorizers: Vec<FittedVectorizer<T>>,
}

fn dim_barcode<T: Real>(set: &BarcodeSet<T>, dim: usize) -> Barcode<T> {
    set.get(&dim).cloned().unwrap_or_else(|| Barcode::empty(dim))
}

impl<T: Real> FittedPipeline<T> {
    /// Normalizes every training set with `policy`, then fits one vectorizer
    /// per dimension of `dims`.
    pub fn fit(
        spec: &VectorizerSpec,
        policy: EssentialPolicy<T>,
        dims: &[usize],
        training: &[BarcodeSet<T>],
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(invalid("dims", "at least one homology dimension required"));
        }
        let normalized: Vec<BarcodeSet<T>> = training
            .iter()
            .map(|s| normalize_set(s, policy))
            .collect::<Result<_>>()?;
        let vectorizers = dims
            .iter()
            .map(|&d| {
                let per_dim: Vec<Barcode<T>> =
                    normalized.iter().map(|s| dim_barcode(s, d)).collect();
                FittedVectorizer::fit(spec, &per_dim)
            })
            .collect::<Result<_>>()?;
        Ok(FittedPipeline {
            policy,
            dims: dims.to_vec(),
            vectorizers,
        })
    }

    pub fn spec(&self) -> &VectorizerSpec {
        &self.vectorizers[0].spec
    }

    pub fn output_len(&self) -> usize {
        self.vectorizers.iter().map(FittedVectorizer::output_len).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.dims.len() != self.vectorizers.len() {
            return Err(Error::InvalidInput("one vectorizer per dimension required".into()));
        }
        self.vectorizers.iter().try_for_each(FittedVectorizer::validate)
    }

    pub fn labels(&self) -> Vec<String> {
        let multi = self.dims.len() > 1;
        self.dims
            .iter()
            .zip(&self.vectorizers)
            .flat_map(|(d, v)| {
                v.spec.labels().into_iter().map(move |l| {
                    if multi {
                        format!("h{d}_{l}")
                    } else {
                        l
                    }
                })
            })
            .collect()
    }

    pub fn transform(&self, set: &BarcodeSet<T>) -> Result<FeatureVector<T>> {
        let set = normalize_set(set, self.policy)?;
        let mut values = Vec::with_capacity(self.output_len());
        for (&d, v) in self.dims.iter().zip(&self.vectorizers) {
            values.extend(v.transform(&dim_barcode(&set, d))?);
        }
        Ok(FeatureVector {
            method: self.spec().method(),
            params: self.spec().params(),
            dims: self.dims.clone(),
            labels: self.labels(),
            values,
        })
    }
}
