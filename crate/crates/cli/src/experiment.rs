//! Seeded classification experiments: synthetic classes, barcodes, one
//! pipeline per method fitted on the training split, k-NN accuracy.

use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use barvec::{BarcodeSet64, EssentialPolicy, FittedPipeline, MethodId, VectorizerSpec};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::knn::{Knn, Standardizer};
use crate::synthetic::{generate_dataset, Family, Sample, SyntheticSpec};
use crate::{sample_barcodes, FiltrationConfig};

/// Random stream used for the train/test split, distinct from every class
/// stream.
const SPLIT_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// One class per family, labelled by position.
    pub classes: Vec<Family>,
    pub samples_per_class: usize,
    pub points_per_sample: usize,
    pub noise: f64,
    pub seed: u64,
    pub methods: Vec<VectorizerSpec>,
    pub split_ratio: f64,
    pub k_nn: usize,
    pub filtration: FiltrationConfig,
    /// Homology dimensions concatenated into each feature vector.
    pub dims: Vec<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            classes: vec![Family::Circle, Family::TwoCircles, Family::Clusters],
            samples_per_class: 100,
            points_per_sample: 50,
            noise: 0.05,
            seed: 0,
            methods: vec![MethodId::PersistenceStatistics.default_spec()],
            split_ratio: 0.7,
            k_nn: 5,
            filtration: FiltrationConfig::default(),
            dims: vec![0, 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: MethodId,
    pub params: serde_json::Value,
    pub features: usize,
    pub accuracy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub policy: EssentialPolicy<f64>,
    pub train_size: usize,
    pub test_size: usize,
    pub results: Vec<MethodResult>,
    /// Seconds spent generating data and computing barcodes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub barcode_seconds: Option<f64>,
}

impl ExperimentReport {
    pub fn result(&self, method: MethodId) -> Option<&MethodResult> {
        self.results.iter().find(|r| r.method == method)
    }
}

/// Labelled barcodes of a synthetic experiment.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub barcodes: Vec<BarcodeSet64>,
    pub labels: Vec<usize>,
    pub policy: EssentialPolicy<f64>,
}

/// Generates every class and computes barcodes in parallel. Point clouds
/// clamp essential bars at the Rips cutoff, images at the largest
/// intensity.
pub fn build_dataset(cfg: &ExperimentConfig) -> Result<Dataset> {
    ensure!(cfg.classes.len() >= 2, "an experiment needs at least two classes");
    let images = cfg.classes.iter().filter(|f| f.is_image()).count();
    ensure!(
        images == 0 || images == cfg.classes.len(),
        "classes must be all point clouds or all images"
    );
    let mut samples: Vec<Sample> = Vec::new();
    let mut labels = Vec::new();
    for (label, &family) in cfg.classes.iter().enumerate() {
        let spec = SyntheticSpec {
            family,
            samples_per_class: cfg.samples_per_class,
            points_per_sample: cfg.points_per_sample,
            noise: cfg.noise,
            seed: cfg.seed,
        };
        let class = generate_dataset(&spec, label as u64)?;
        labels.extend(std::iter::repeat_n(label, class.len()));
        samples.extend(class);
    }
    let clamp = if images > 0 {
        samples
            .iter()
            .flat_map(|s| match s {
                Sample::Image { pixels, .. } => pixels.clone(),
                Sample::Points(_) => Vec::new(),
            })
            .fold(f64::NEG_INFINITY, f64::max)
    } else {
        cfg.filtration.max_scale
    };
    let barcodes = samples
        .par_iter()
        .map(|s| sample_barcodes(s, &cfg.filtration))
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset {
        barcodes,
        labels,
        policy: EssentialPolicy::Clamp(clamp),
    })
}

/// Per-class shuffled split; each class keeps at least one sample on both
/// sides when it has two or more. Returns sorted `(train, test)` indices.
pub fn stratified_split(labels: &[usize], ratio: f64, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(SPLIT_STREAM);
    let mut classes: Vec<usize> = labels.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for c in classes {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == c).collect();
        idx.shuffle(&mut rng);
        let n = idx.len();
        let mut n_train = (ratio * n as f64).round() as usize;
        if n >= 2 {
            n_train = n_train.clamp(1, n - 1);
        } else {
            n_train = n;
        }
        train.extend_from_slice(&idx[..n_train]);
        test.extend_from_slice(&idx[n_train..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

/// Called once per method with the training indices and the exact barcode
/// sets handed to the fit.
pub type FitObserver<'a> = dyn FnMut(&VectorizerSpec, &[usize], &[BarcodeSet64]) + 'a;

pub fn run_experiment(cfg: &ExperimentConfig, timings: bool) -> Result<ExperimentReport> {
    run_experiment_observed(cfg, timings, &mut |_, _, _| {})
}

pub fn run_experiment_observed(
    cfg: &ExperimentConfig,
    timings: bool,
    observer: &mut FitObserver<'_>,
) -> Result<ExperimentReport> {
    ensure!(
        cfg.split_ratio > 0.0 && cfg.split_ratio < 1.0,
        "split_ratio must lie in (0, 1)"
    );
    ensure!(cfg.k_nn >= 1, "k_nn must be positive");
    ensure!(!cfg.methods.is_empty(), "no methods requested");
    let start = Instant::now();
    let data = build_dataset(cfg)?;
    let barcode_seconds = start.elapsed().as_secs_f64();
    let (train, test) = stratified_split(&data.labels, cfg.split_ratio, cfg.seed);
    let results = cfg
        .methods
        .iter()
        .map(|spec| {
            let t = Instant::now();
            let mut r = evaluate_method(cfg, &data, spec, &train, &test, observer)
                .with_context(|| format!("method {} with {}", spec.method(), spec.params()))?;
            r.seconds = timings.then(|| t.elapsed().as_secs_f64());
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport {
        config: cfg.clone(),
        policy: data.policy,
        train_size: train.len(),
        test_size: test.len(),
        results,
        barcode_seconds: timings.then_some(barcode_seconds),
    })
}

/// Fits `spec` on the `train` barcodes, vectorizes everything, and returns
/// the k-NN accuracy on `test`.
pub fn evaluate_method(
    cfg: &ExperimentConfig,
    data: &Dataset,
    spec: &VectorizerSpec,
    train: &[usize],
    test: &[usize],
    observer: &mut FitObserver<'_>,
) -> Result<MethodResult> {
    let train_sets: Vec<BarcodeSet64> = train.iter().map(|&i| data.barcodes[i].clone()).collect();
    observer(spec, train, &train_sets);
    let pipeline = FittedPipeline::fit(spec, data.policy, &cfg.dims, &train_sets)?;
    let width = pipeline.output_len();
    let rows = data
        .barcodes
        .par_iter()
        .map(|set| pipeline.transform(set).map(|fv| fv.values))
        .collect::<barvec::Result<Vec<_>>>()?;
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != width) {
        bail!("sample {i} has {} features, expected {width}", r.len());
    }
    let pick = |ids: &[usize]| -> (Vec<Vec<f64>>, Vec<usize>) {
        ids.iter().map(|&i| (rows[i].clone(), data.labels[i])).unzip()
    };
    let (train_rows, train_labels) = pick(train);
    let (test_rows, test_labels) = pick(test);
    let z = Standardizer::fit(&train_rows);
    let scale = |rs: Vec<Vec<f64>>| rs.iter().map(|r| z.apply(r)).collect::<Vec<_>>();
    let knn = Knn::new(cfg.k_nn, scale(train_rows), train_labels);
    let accuracy = knn.accuracy(&scale(test_rows), &test_labels);
    Ok(MethodResult {
        method: spec.method(),
        params: spec.params(),
        features: width,
        accuracy,
        seconds: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_is_stratified_and_disjoint() {
        let labels: Vec<usize> = (0..30).map(|i| i / 10).collect();
        let (train, test) = stratified_split(&labels, 0.7, 4);
        assert_eq!((train.len(), test.len()), (21, 9));
        for c in 0..3 {
            assert_eq!(train.iter().filter(|&&i| labels[i] == c).count(), 7);
        }
        assert!(train.iter().all(|i| !test.contains(i)));
        assert_eq!(stratified_split(&labels, 0.7, 4), (train, test));
    }
}
