//! Seeded synthetic point clouds and images standing in for labeled datasets.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use anyhow::{bail, ensure, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// Blob radius as a fraction of the image side.
const IMAGE_BLOB_RADIUS: f64 = 0.12;
/// Spread of each Gaussian blob in the `clusters` family.
const CLUSTER_SPREAD: f64 = 0.1;
/// Distance between the two circle centers.
const CIRCLE_GAP: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Unit circle, uniform angle, Gaussian radial noise.
    Circle,
    /// Two unit circles with centers `CIRCLE_GAP` apart.
    TwoCircles,
    /// Three Gaussian blobs on an equilateral triangle of side 2.
    Clusters,
    /// Binary image with `blobs` dark disks on a light background.
    NoisyGridImage { blobs: usize },
}

impl Family {
    pub fn is_image(self) -> bool {
        matches!(self, Family::NoisyGridImage { .. })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Circle => f.write_str("circle"),
            Family::TwoCircles => f.write_str("two_circles"),
            Family::Clusters => f.write_str("clusters"),
            Family::NoisyGridImage { blobs } => write!(f, "noisy_grid_image:{blobs}"),
        }
    }
}

impl FromStr for Family {
    type Err = anyhow::Error;

    /// `circle`, `two_circles`, `clusters`, `noisy_grid_image` or
    /// `noisy_grid_image:N` for `N` blobs (default 1).
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let family = match (name, arg) {
            ("circle", None) => Family::Circle,
            ("two_circles", None) => Family::TwoCircles,
            ("clusters", None) => Family::Clusters,
            ("noisy_grid_image", a) => {
                let blobs = match a {
                    Some(a) => a.parse()?,
                    None => 1,
                };
                ensure!(blobs >= 1, "noisy_grid_image needs at least one blob");
                Family::NoisyGridImage { blobs }
            }
            _ => bail!("unknown family `{s}`"),
        };
        Ok(family)
    }
}

/// Parameters of one class of synthetic samples. For image families
/// `points_per_sample` is the side length of the square image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub family: Family,
    pub samples_per_class: usize,
    pub points_per_sample: usize,
    pub noise: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sample {
    Points(Vec<Vec<f64>>),
    /// Row-major intensities, top row first.
    Image {
        width: usize,
        height: usize,
        pixels: Vec<f64>,
    },
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        ensure!(self.samples_per_class > 0, "samples_per_class must be positive");
        ensure!(self.points_per_sample > 0, "points_per_sample must be positive");
        ensure!(
            self.noise.is_finite() && self.noise >= 0.0,
            "noise must be a finite nonnegative number"
        );
        Ok(())
    }
}

/// Samples of the spec's family. `stream` selects an independent random
/// stream, so several classes can share one seed.
pub fn generate_dataset(spec: &SyntheticSpec, stream: u64) -> Result<Vec<Sample>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(stream);
    let noise = Normal::new(0.0, spec.noise)?;
    let n = spec.points_per_sample;
    Ok((0..spec.samples_per_class)
        .map(|_| match spec.family {
            Family::Circle => Sample::Points(circle(&mut rng, &noise, n, [0.0, 0.0])),
            Family::TwoCircles => {
                let mut pts = circle(&mut rng, &noise, n.div_ceil(2), [0.0, 0.0]);
                pts.extend(circle(&mut rng, &noise, n / 2, [CIRCLE_GAP, 0.0]));
                Sample::Points(pts)
            }
            Family::Clusters => Sample::Points(clusters(&mut rng, &noise, n)),
            Family::NoisyGridImage { blobs } => image(&mut rng, &noise, n, blobs),
        })
        .collect())
}

fn circle(rng: &mut ChaCha8Rng, noise: &Normal<f64>, n: usize, center: [f64; 2]) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let theta = rng.random_range(0.0..TAU);
            let r = 1.0 + noise.sample(rng);
            vec![center[0] + r * theta.cos(), center[1] + r * theta.sin()]
        })
        .collect()
}

fn clusters(rng: &mut ChaCha8Rng, noise: &Normal<f64>, n: usize) -> Vec<Vec<f64>> {
    let h = 3f64.sqrt();
    let centers = [[0.0, 0.0], [2.0, 0.0], [1.0, h]];
    let spread = Normal::new(0.0, CLUSTER_SPREAD).expect("positive spread");
    (0..n)
        .map(|i| {
            let c = centers[i % 3];
            (0..2)
                .map(|k| c[k] + spread.sample(rng) + noise.sample(rng))
                .collect()
        })
        .collect()
}

/// Disks of radius `IMAGE_BLOB_RADIUS` (relative to the side) at uniform
/// positions, drawn as 0 on a background of 1, after adding noise to the
/// indicator and thresholding at 1/2.
fn image(rng: &mut ChaCha8Rng, noise: &Normal<f64>, side: usize, blobs: usize) -> Sample {
    let r = IMAGE_BLOB_RADIUS * side as f64;
    let margin = r + 1.0;
    let span = (side as f64 - margin).max(margin + f64::EPSILON);
    let centers: Vec<[f64; 2]> = (0..blobs)
        .map(|_| [rng.random_range(margin..span), rng.random_range(margin..span)])
        .collect();
    let mut pixels = Vec::with_capacity(side * side);
    for y in 0..side {
        for x in 0..side {
            let (px, py) = (x as f64 + 0.5, y as f64 + 0.5);
            let inside = centers
                .iter()
                .any(|c| (px - c[0]).hypot(py - c[1]) <= r);
            let v = if inside { 0.0 } else { 1.0 } + noise.sample(rng);
            pixels.push(if v < 0.5 { 0.0 } else { 1.0 });
        }
    }
    Sample::Image {
        width: side,
        height: side,
        pixels,
    }
}
