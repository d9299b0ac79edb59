//! Per-coordinate standardization and a Euclidean k-nearest-neighbour
//! classifier.

use std::cmp::Ordering;

/// Z-score transform with means and deviations taken from training rows.
/// Constant coordinates keep deviation 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Standardizer {
    pub fn fit(rows: &[Vec<f64>]) -> Standardizer {
        let width = rows.first().map_or(0, Vec::len);
        let n = rows.len().max(1) as f64;
        let mut mean = vec![0.0; width];
        for r in rows {
            for (m, v) in mean.iter_mut().zip(r) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; width];
        for r in rows {
            for ((s, v), m) in var.iter_mut().zip(r).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let std = var
            .into_iter()
            .map(|s| {
                let d = (s / n).sqrt();
                if d > 0.0 && d.is_finite() {
                    d
                } else {
                    1.0
                }
            })
            .collect();
        Standardizer { mean, std }
    }

    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(&self.mean)
            .zip(&self.std)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[derive(Debug, Clone)]
pub struct Knn {
    k: usize,
    rows: Vec<Vec<f64>>,
    labels: Vec<usize>,
}

impl Knn {
    /// Panics if `k == 0`, there are no rows, or the lengths disagree.
    pub fn new(k: usize, rows: Vec<Vec<f64>>, labels: Vec<usize>) -> Knn {
        assert!(k > 0, "k must be positive");
        assert!(!rows.is_empty(), "no training rows");
        assert_eq!(rows.len(), labels.len());
        Knn { k, rows, labels }
    }

    /// Majority label of the `k` nearest rows; neighbours at equal distance
    /// are taken in training order. A tied vote goes to the label whose
    /// closest neighbour is nearest, then to the smaller label.
    pub fn predict(&self, query: &[f64]) -> usize {
        let mut order: Vec<(f64, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (dist2(r, query), i))
            .collect();
        order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then(a.1.cmp(&b.1)));
        let mut tally: Vec<(usize, usize, usize)> = Vec::new(); // (label, votes, rank of first)
        for (rank, &(_, i)) in order.iter().take(self.k).enumerate() {
            let label = self.labels[i];
            match tally.iter_mut().find(|t| t.0 == label) {
                Some(t) => t.1 += 1,
                None => tally.push((label, 1, rank)),
            }
        }
        tally
            .into_iter()
            .min_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(&b.2)).then(a.0.cmp(&b.0)))
            .map(|t| t.0)
            .expect("k > 0")
    }

    pub fn accuracy(&self, queries: &[Vec<f64>], labels: &[usize]) -> f64 {
        if queries.is_empty() {
            return 0.0;
        }
        let hits = queries
            .iter()
            .zip(labels)
            .filter(|(q, &l)| self.predict(q) == l)
            .count();
        hits as f64 / queries.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardizer_centers_and_scales() {
        let rows = vec![vec![1.0, 5.0], vec![3.0, 5.0]];
        let s = Standardizer::fit(&rows);
        assert_eq!(s.mean, vec![2.0, 5.0]);
        assert_eq!(s.std, vec![1.0, 1.0]);
        assert_eq!(s.apply(&[3.0, 7.0]), vec![1.0, 2.0]);
    }

    #[test]
    fn self_classification_with_k1() {
        let rows = vec![vec![0.0], vec![1.0], vec![5.0], vec![6.0]];
        let labels = vec![0, 0, 1, 1];
        let knn = Knn::new(1, rows.clone(), labels.clone());
        assert_eq!(knn.accuracy(&rows, &labels), 1.0);
    }

    #[test]
    fn tie_goes_to_nearest_label() {
        let knn = Knn::new(2, vec![vec![1.0], vec![-2.0]], vec![7, 3]);
        assert_eq!(knn.predict(&[0.0]), 7);
        let knn = Knn::new(2, vec![vec![1.0], vec![-1.0]], vec![7, 3]);
        assert_eq!(knn.predict(&[0.0]), 7);
    }
}
