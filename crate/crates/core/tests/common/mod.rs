//! Independent reference implementations and random generators shared by the
//! integration and acceptance tests.
#![allow(dead_code)]

use barvec::persistence::{Cell, FilteredComplex};
use barvec::vectorize::{ImageGrid, PolyTransform};
use barvec::{Barcode, BarcodeSet};
use rand::Rng;

pub type Bars = Vec<(f64, f64)>;

/// Bars with endpoints on the 1/16 lattice, so every sum below is exact.
pub fn dyadic_bars(rng: &mut impl Rng, max_bars: usize) -> Bars {
    let n = rng.random_range(0..=max_bars);
    (0..n)
        .map(|_| {
            let p = rng.random_range(0..=48) as f64 / 16.0;
            let l = rng.random_range(0..=32) as f64 / 16.0;
            (p, p + l)
        })
        .collect()
}

pub fn uniform_bars(rng: &mut impl Rng, min_bars: usize, max_bars: usize) -> Bars {
    let n = rng.random_range(min_bars..=max_bars);
    (0..n)
        .map(|_| {
            let p: f64 = rng.random_range(0.0..3.0);
            let l: f64 = rng.random_range(0.0..2.0);
            (p, p + l)
        })
        .collect()
}

pub fn barcode(bars: &[(f64, f64)]) -> Barcode<f64> {
    Barcode::from_pairs(0, bars.iter().copied()).unwrap()
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn diag(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

/// Minimum over every partial matching of the largest matched or diagonal
/// cost.
pub fn brute_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    fn go(i: usize, a: &[(f64, f64)], b: &[(f64, f64)], used: &mut Vec<bool>, acc: f64) -> f64 {
        if i == a.len() {
            let rest = b
                .iter()
                .zip(used.iter())
                .filter(|(_, u)| !**u)
                .map(|(x, _)| diag(*x))
                .fold(acc, f64::max);
            return rest;
        }
        let mut best = go(i + 1, a, b, used, acc.max(diag(a[i])));
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                best = best.min(go(i + 1, a, b, used, acc.max(linf(a[i], b[j]))));
                used[j] = false;
            }
        }
        best
    }
    go(0, a, b, &mut vec![false; b.len()], 0.0)
}

/// `sup { s >= 0 : #{bars ⊇ [t - s, t + s]} >= k }`, or 0 when no `s`
/// qualifies, found by scanning the breakpoints `t - p` and `q - t`.
pub fn landscape_sup(bars: &[(f64, f64)], k: usize, t: f64) -> f64 {
    let count = |s: f64| bars.iter().filter(|&&(p, q)| p <= t - s && t + s <= q).count();
    let mut best: Option<f64> = None;
    let candidates = bars
        .iter()
        .flat_map(|&(p, q)| [t - p, q - t])
        .chain(std::iter::once(0.0));
    for s in candidates {
        if s >= 0.0 && count(s) >= k {
            best = Some(best.map_or(s, |b: f64| b.max(s)));
        }
    }
    best.unwrap_or(0.0)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Tropical coordinates by enumeration of index subsets.
pub fn tropical_brute(bars: &[(f64, f64)], r: u32) -> [f64; 7] {
    if bars.is_empty() {
        return [0.0; 7];
    }
    let r = r as f64;
    let lam: Vec<f64> = bars.iter().map(|&(p, q)| q - p).collect();
    let top = |k: usize| -> f64 {
        let all = subsets(lam.len(), k);
        if all.is_empty() {
            return 0.0;
        }
        all.iter()
            .map(|s| s.iter().fold(0.0, |acc, &i| acc + lam[i]))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let y: Vec<f64> = bars.iter().zip(&lam).map(|(&(p, _), &l)| (r * l).min(p)).collect();
    let m = (0..lam.len())
        .map(|i| y[i] + lam[i])
        .fold(f64::NEG_INFINITY, f64::max);
    [
        top(1),
        top(2),
        top(3),
        top(4),
        lam.iter().sum(),
        y.iter().sum(),
        (0..lam.len()).map(|i| m - (y[i] + lam[i])).sum(),
    ]
}

/// `max |C(X(p, q))|` over the bars, with `C` rebuilt from the monic lead and
/// the interleaved coefficients; also returns `1 + max |coefficient|`.
pub fn polynomial_residual(bars: &[(f64, f64)], transform: PolyTransform, coeffs: &[f64]) -> (f64, f64) {
    let cs: Vec<(f64, f64)> = std::iter::once((1.0, 0.0))
        .chain(coeffs.chunks(2).map(|c| (c[0], c[1])))
        .collect();
    let scale = 1.0 + cs.iter().map(|&(a, b)| a.hypot(b)).fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for &(p, q) in bars {
        let z = transform.apply(p, q);
        let (zr, zi) = (z.re, z.im);
        let (mut ar, mut ai) = (0.0, 0.0);
        for &(cr, ci) in &cs {
            let (nr, ni) = (ar * zr - ai * zi + cr, ar * zi + ai * zr + ci);
            ar = nr;
            ai = ni;
        }
        worst = worst.max(ar.hypot(ai));
    }
    (worst, scale)
}

/// Persistence image by midpoint evaluation of the weighted Gaussian sum,
/// times pixel area.
pub fn image_midpoint(bars: &[(f64, f64)], grid: &ImageGrid<f64>) -> Vec<f64> {
    let lmax = bars.iter().map(|&(p, q)| q - p).fold(0.0, f64::max);
    let dx = (grid.x_range.hi - grid.x_range.lo) / grid.nx as f64;
    let dy = (grid.y_range.hi - grid.y_range.lo) / grid.ny as f64;
    let s2 = grid.sigma * grid.sigma;
    let mut out = vec![0.0; grid.nx * grid.ny];
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let x = grid.x_range.lo + (i as f64 + 0.5) * dx;
            let y = grid.y_range.lo + (j as f64 + 0.5) * dy;
            let mut v = 0.0;
            for &(p, q) in bars {
                let l = q - p;
                let w = if lmax > 0.0 { (l / lmax).clamp(0.0, 1.0) } else { 0.0 };
                let d2 = (x - p).powi(2) + (y - l).powi(2);
                v += w * (-d2 / (2.0 * s2)).exp() / (2.0 * std::f64::consts::PI * s2);
            }
            out[j * grid.nx + i] = v * dx * dy;
        }
    }
    out
}

/// Euler characteristic of the barcodes against the cell counts at every
/// sweep key.
pub fn euler_check(fc: &FilteredComplex<f64>, bars: &BarcodeSet<f64>) -> Result<(), String> {
    let mut keys: Vec<f64> = fc.cells.iter().map(|c| fc.key(c.filtration)).collect();
    keys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    keys.dedup();
    for t in keys {
        let cells: i64 = fc
            .cells
            .iter()
            .filter(|c| fc.key(c.filtration) <= t)
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum();
        let alive: i64 = bars
            .iter()
            .map(|(d, b)| {
                let n: usize = b
                    .entries()
                    .iter()
                    .filter(|(iv, _)| iv.alive_at(t))
                    .map(|(_, m)| *m)
                    .sum();
                if d % 2 == 0 {
                    n as i64
                } else {
                    -(n as i64)
                }
            })
            .sum();
        if cells != alive {
            return Err(format!("at t={t}: cells give {cells}, barcodes give {alive}"));
        }
    }
    Ok(())
}

/// Random point cloud in the unit square.
pub fn random_points(rng: &mut impl Rng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dim).map(|_| rng.random_range(0.0..1.0)).collect())
        .collect()
}

/// Random image with small integer intensities, so ties are frequent.
pub fn random_image(rng: &mut impl Rng, w: usize, h: usize) -> Vec<f64> {
    (0..w * h).map(|_| rng.random_range(0..6) as f64).collect()
}

/// Random valid complex: each new cell is a vertex or an edge/triangle over
/// earlier cells, entering no earlier than its faces.
pub fn random_simplicial(rng: &mut impl Rng, n_vertices: usize) -> FilteredComplex<f64> {
    let mut cells: Vec<Cell<f64>> = (0..n_vertices)
        .map(|_| Cell {
            dim: 0,
            filtration: rng.random_range(0..4) as f64,
            boundary: vec![],
        })
        .collect();
    let mut edges = std::collections::BTreeMap::new();
    for a in 0..n_vertices {
        for b in a + 1..n_vertices {
            if rng.random_bool(0.6) {
                let f = cells[a].filtration.max(cells[b].filtration) + rng.random_range(0..3) as f64;
                edges.insert((a, b), cells.len());
                cells.push(Cell {
                    dim: 1,
                    filtration: f,
                    boundary: vec![a, b],
                });
            }
        }
    }
    for a in 0..n_vertices {
        for b in a + 1..n_vertices {
            for c in b + 1..n_vertices {
                if let (Some(&e1), Some(&e2), Some(&e3)) =
                    (edges.get(&(a, b)), edges.get(&(a, c)), edges.get(&(b, c)))
                {
                    if rng.random_bool(0.5) {
                        let f = [e1, e2, e3]
                            .iter()
                            .map(|&e| cells[e].filtration)
                            .fold(0.0, f64::max)
                            + rng.random_range(0..2) as f64;
                        let mut bd = vec![e1, e2, e3];
                        bd.sort_unstable();
                        cells.push(Cell {
                            dim: 2,
                            filtration: f,
                            boundary: bd,
                        });
                    }
                }
            }
        }
    }
    FilteredComplex::new(cells)
}
