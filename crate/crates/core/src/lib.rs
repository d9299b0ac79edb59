//! Persistent homology barcodes and barcode vectorizations.
//!
//! The crate computes barcodes from point clouds (Vietoris–Rips) and images
//! (cubical complexes), and turns barcodes into fixed-length feature vectors
//! with thirteen vectorization methods grouped as statistical, algebraic,
//! curve, functional and ensemble (fitted) methods. Everything numeric is generic over
//! [`Real`] (`f32` or `f64`); the `*64` aliases below fix the scalar to `f64`.

pub mod barcode;
pub mod catalogue;
pub mod error;
pub mod persistence;
pub mod pipeline;
pub mod sampling;
pub mod scalar;
pub mod vectorize;

pub use barcode::{bottleneck_distance, Barcode, BarcodeSet, EssentialPolicy, Interval};
pub use error::{Error, Result};
pub use persistence::{compute_persistence, FilteredComplex, GrayscaleImage, PointCloud};
pub use pipeline::{FeatureVector, FittedPipeline, FittedVectorizer, MethodId, VectorizerSpec};
pub use sampling::{SampledCurve, SamplingRange};
pub use scalar::Real;

pub type Interval64 = Interval<f64>;
pub type Barcode64 = Barcode<f64>;
pub type BarcodeSet64 = BarcodeSet<f64>;
pub type PointCloud64 = PointCloud<f64>;
pub type GrayscaleImage64 = GrayscaleImage<f64>;
pub type FilteredComplex64 = FilteredComplex<f64>;
pub type SampledCurve64 = SampledCurve<f64>;
pub type FeatureVector64 = FeatureVector<f64>;
pub type FittedVectorizer64 = FittedVectorizer<f64>;
pub type FittedPipeline64 = FittedPipeline<f64>;

pub type Barcode32 = Barcode<f32>;
pub type FeatureVector32 = FeatureVector<f32>;
