//! Exact bottleneck distance between finite barcodes.
//!
//! Both barcodes are expanded by multiplicity and each side is augmented with
//! diagonal projections of the other side, giving a square bipartite graph. The
//! distance is the smallest candidate cost whose threshold graph admits a
//! perfect matching; candidates are the finitely many edge costs, so the search
//! is exact.

use std::collections::VecDeque;

use super::Barcode;
use crate::error::{Error, Result};
use crate::scalar::{cmp, Real};

/// Bottleneck distance between two finite barcodes.
///
/// Unmatched bars are sent to the diagonal at cost `(death - birth) / 2`,
/// matched pairs cost the L∞ distance between their endpoints.
pub fn bottleneck_distance<T: Real>(a: &Barcode<T>, b: &Barcode<T>) -> Result<T> {
    if a.has_essential() || b.has_essential() {
        return Err(Error::InvalidInput(
            "bottleneck distance needs finite barcodes; normalize first".into(),
        ));
    }
    let xs: Vec<(T, T)> = a.expanded().map(|i| (i.birth(), i.death())).collect();
    let ys: Vec<(T, T)> = b.expanded().map(|i| (i.birth(), i.death())).collect();
    let (na, nb) = (xs.len(), ys.len());
    let n = na + nb;
    if n == 0 {
        return Ok(T::zero());
    }

    let half = T::of(0.5);
    let diag = |p: &(T, T)| (p.1 - p.0) * half;
    // Row i < na: bar a_i, row i >= na: diagonal copy of b_{i-na}.
    // Column j < nb: bar b_j, column j >= nb: diagonal copy of a_{j-nb}.
    let cost = |i: usize, j: usize| -> Option<T> {
        match (i < na, j < nb) {
            (true, true) => {
                let (p, q) = (xs[i], ys[j]);
                Some((p.0 - q.0).abs().max((p.1 - q.1).abs()))
            }
            (true, false) => (j - nb == i).then(|| diag(&xs[i])),
            (false, true) => (i - na == j).then(|| diag(&ys[j])),
            (false, false) => Some(T::zero()),
        }
    };

    let mut candidates: Vec<T> = Vec::with_capacity(na * nb + n + 1);
    candidates.push(T::zero());
    for i in 0..na {
        candidates.push(diag(&xs[i]));
        for j in 0..nb {
            candidates.push(cost(i, j).unwrap());
        }
    }
    candidates.extend(ys.iter().map(diag));
    candidates.sort_by(cmp);
    candidates.dedup();

    let feasible = |threshold: T| -> bool {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| matches!(cost(i, j), Some(c) if c <= threshold))
                    .collect()
            })
            .collect();
        hopcroft_karp(&adj, n) == n
    };

    // Matching everything to the diagonal is always possible at the largest
    // candidate, so the upper end is feasible.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo])
}

/// Size of a maximum matching in a bipartite graph with `adj[left] = rights`.
fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> usize {
    const FREE: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_l = vec![FREE; n_left];
    let mut match_r = vec![FREE; n_right];
    let mut dist = vec![0usize; n_left];
    let mut matched = 0;

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return matched;
        }
        let mut it = vec![0usize; n_left];
        for u in 0..n_left {
            if match_l[u] == FREE
                && augment(u, adj, &mut match_l, &mut match_r, &mut dist, &mut it)
            {
                matched += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[u] < adj[u].len() {
        let v = adj[u][it[u]];
        it[u] += 1;
        let w = match_r[v];
        if w == usize::MAX
            || (dist[w] == dist[u] + 1 && augment(w, adj, match_l, match_r, dist, it))
        {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(pairs: &[(f64, f64)]) -> Barcode<f64> {
        Barcode::from_pairs(1, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn single_bar_to_diagonal() {
        assert_eq!(bottleneck_distance(&bc(&[(0.0, 2.0)]), &bc(&[])).unwrap(), 1.0);
    }

    #[test]
    fn identity_is_zero() {
        let b = bc(&[(0.0, 2.0), (0.5, 0.7), (1.0, 4.0)]);
        assert_eq!(bottleneck_distance(&b, &b).unwrap(), 0.0);
    }

    #[test]
    fn shifted_birth() {
        // Matching the pair costs 0.5, sending both to the diagonal costs 1.
        let d = bottleneck_distance(&bc(&[(0.0, 2.0)]), &bc(&[(0.5, 2.0)])).unwrap();
        assert_eq!(d, 0.5);
    }

    #[test]
    fn multiplicity_counts() {
        let a = Barcode::from_entries(0, [(super::super::Interval::new(0.0, 2.0).unwrap(), 2)]);
        let b = bc(&[(0.0, 2.0)]);
        assert_eq!(bottleneck_distance(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn essential_bars_rejected() {
        let a = bc(&[(0.0, f64::INFINITY)]);
        assert!(bottleneck_distance(&a, &a).is_err());
    }

    #[test]
    fn empty_pair() {
        assert_eq!(bottleneck_distance(&bc(&[]), &bc(&[])).unwrap(), 0.0);
    }
}
