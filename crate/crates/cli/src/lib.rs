//! Library side of the `barvec` command-line tool: synthetic datasets,
//! batch vectorization, a k-NN classifier and seeded experiments.

pub mod batch;
pub mod experiment;
pub mod knn;
pub mod synthetic;

use anyhow::Result;
use barvec::persistence::{cubical_complex, rips_complex, CubicalBudget, Direction, RipsBudget};
use barvec::{compute_persistence, BarcodeSet64, GrayscaleImage, PointCloud};

use synthetic::Sample;

/// How raw samples become barcodes.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FiltrationConfig {
    /// Rips scale cutoff; also the clamp value for essential bars.
    pub max_scale: f64,
    /// Largest simplex dimension of the Rips complex.
    pub max_simplex_dim: usize,
    pub direction: Direction,
}

impl Default for FiltrationConfig {
    fn default() -> Self {
        FiltrationConfig {
            max_scale: 2.0,
            max_simplex_dim: 2,
            direction: Direction::UpperStar,
        }
    }
}

pub fn sample_barcodes(sample: &Sample, cfg: &FiltrationConfig) -> Result<BarcodeSet64> {
    let fc = match sample {
        Sample::Points(pts) => rips_complex(
            &PointCloud::new(pts.clone())?,
            cfg.max_scale,
            cfg.max_simplex_dim,
            &RipsBudget::default(),
        )?,
        Sample::Image {
            width,
            height,
            pixels,
        } => cubical_complex(
            &GrayscaleImage::new(*width, *height, pixels.clone())?,
            cfg.direction,
            &CubicalBudget::default(),
        )?,
    };
    Ok(compute_persistence(&fc)?)
}
