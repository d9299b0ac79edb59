//! Many barcode files through one pipeline into a CSV feature matrix.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use barvec::{BarcodeSet64, EssentialPolicy, FittedPipeline, VectorizerSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub labels: Vec<String>,
    pub names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FeatureMatrix {
    /// Header `sample,<labels>`, then one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (name, row) in self.names.iter().zip(&self.rows) {
            out.push_str(name);
            for v in row {
                write!(out, ",{v}").expect("write to String");
            }
            out.push('\n');
        }
        out
    }
}

/// Vectorizes `sets` with `model`, or with a pipeline fitted on the batch
/// itself, which gives curve and grid methods a common range. Ensemble
/// methods need a model.
pub fn vectorize_batch(
    names: &[String],
    sets: &[BarcodeSet64],
    spec: &VectorizerSpec,
    policy: EssentialPolicy<f64>,
    dims: &[usize],
    model: Option<&FittedPipeline<f64>>,
) -> Result<FeatureMatrix> {
    let fitted;
    let pipeline = match model {
        Some(m) => {
            m.validate()?;
            m
        }
        None => {
            if spec.method().is_ensemble() {
                return Err(barvec::Error::ModelRequired(spec.method().to_string()).into());
            }
            fitted = FittedPipeline::fit(spec, policy, dims, sets)?;
            &fitted
        }
    };
    let mut rows = Vec::with_capacity(sets.len());
    for (name, set) in names.iter().zip(sets) {
        for &d in &pipeline.dims {
            if set.get(&d).is_none_or(|b| b.is_empty()) {
                log::warn!("{name}: empty barcode in dimension {d}, features filled with zeros");
            }
        }
        let fv = pipeline.transform(set)?;
        if fv.len() != pipeline.output_len() {
            bail!("{name}: {} features, expected {}", fv.len(), pipeline.output_len());
        }
        rows.push(fv.values);
    }
    Ok(FeatureMatrix {
        labels: pipeline.labels(),
        names: names.to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use barvec::barcode::parse_barcodes;
    use barvec::MethodId;

    fn sets() -> Vec<BarcodeSet64> {
        ["0,0,1\n0,0.5,2\n1,0.2,0.9\n", "0,0,3\n1,1,2\n", "0,0,1\n0,0.5,2\n1,0.2,0.9\n"]
            .iter()
            .map(|t| parse_barcodes(t).unwrap())
            .collect()
    }

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into()]
    }

    #[test]
    fn betti_curve_shape_and_determinism() {
        let spec = VectorizerSpec::BettiCurve { resolution: 50 };
        let m = vectorize_batch(&names(), &sets(), &spec, EssentialPolicy::Drop, &[0], None).unwrap();
        assert_eq!(m.rows.len(), 3);
        assert!(m.rows.iter().all(|r| r.len() == 50));
        assert_eq!(m.rows[0], m.rows[2]);
        let both = vectorize_batch(&names(), &sets(), &spec, EssentialPolicy::Drop, &[0, 1], None).unwrap();
        assert_eq!(both.rows[0].len(), 100);
        assert_eq!(both.labels.len(), 100);
    }

    #[test]
    fn ensemble_without_model_is_refused() {
        let spec = MethodId::Atol.default_spec();
        let err = vectorize_batch(&names(), &sets(), &spec, EssentialPolicy::Drop, &[0], None).unwrap_err();
        assert!(err.to_string().contains("requires a fitted model"));
    }

    #[test]
    fn csv_layout() {
        let spec = VectorizerSpec::TropicalCoordinates { r: 10 };
        let m = vectorize_batch(&names()[..1], &sets()[..1], &spec, EssentialPolicy::Drop, &[0], None).unwrap();
        let csv = m.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("a,"));
        assert_eq!(lines[0].split(',').count(), 8);
    }
}
