mod common;

use barvec::persistence::{
    cubical_complex, reduce, rips_complex, Cell, CubicalBudget, Direction, FilteredComplex,
    RipsBudget,
};
use barvec::{bottleneck_distance, compute_persistence, EssentialPolicy, GrayscaleImage, PointCloud};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rips(points: Vec<Vec<f64>>, scale: f64) -> FilteredComplex<f64> {
    rips_complex(&PointCloud::new(points).unwrap(), scale, 2, &RipsBudget::default()).unwrap()
}

fn check_counts(fc: &FilteredComplex<f64>) -> Result<(), TestCaseError> {
    let pairing = reduce(fc).unwrap();
    let bars = compute_persistence(fc).unwrap();
    let intervals: usize = bars.values().map(|b| b.len()).sum();
    prop_assert_eq!(2 * pairing.pairs.len() + pairing.essential.len(), fc.len());
    prop_assert_eq!(intervals, fc.len() - pairing.pairs.len());
    let mut deaths: Vec<usize> = pairing.pairs.iter().map(|p| p.1).collect();
    deaths.sort_unstable();
    deaths.dedup();
    prop_assert_eq!(deaths.len(), pairing.pairs.len());
    Ok(())
}

fn components(fc: &FilteredComplex<f64>) -> usize {
    let mut parent: Vec<usize> = (0..fc.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for c in fc.cells.iter().filter(|c| c.dim == 1) {
        let (a, b) = (find(&mut parent, c.boundary[0]), find(&mut parent, c.boundary[1]));
        parent[a] = b;
    }
    (0..fc.len())
        .filter(|&i| fc.cells[i].dim == 0 && find(&mut parent, i) == i)
        .count()
}

/// Same complex with its cells listed in a random order.
fn shuffled(fc: &FilteredComplex<f64>, rng: &mut ChaCha8Rng) -> FilteredComplex<f64> {
    let mut perm: Vec<usize> = (0..fc.len()).collect();
    perm.shuffle(rng);
    let mut new_of_old = vec![0; fc.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_of_old[old] = new;
    }
    let cells = perm
        .iter()
        .map(|&old| {
            let c = &fc.cells[old];
            let mut boundary: Vec<usize> = c.boundary.iter().map(|&f| new_of_old[f]).collect();
            boundary.sort_unstable();
            Cell {
                dim: c.dim,
                filtration: c.filtration,
                boundary,
            }
        })
        .collect();
    FilteredComplex {
        cells,
        order: fc.order,
    }
}

#[test]
fn unit_square_exact() {
    let fc = rips(
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]],
        2.0,
    );
    let bars = compute_persistence(&fc).unwrap();
    let h1 = bars[&1].normalize(EssentialPolicy::Drop).unwrap();
    assert_eq!(h1.entries().len(), 1);
    let (iv, m) = h1.entries()[0];
    assert_eq!((iv.birth(), iv.death(), m), (1.0, 2f64.sqrt(), 1));
}

#[test]
fn equilateral_triangle_has_no_loop() {
    let h = 3f64.sqrt() / 2.0;
    let fc = rips(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]], 2.0);
    let bars = compute_persistence(&fc).unwrap();
    assert!(bars[&1].normalize(EssentialPolicy::Drop).unwrap().is_empty());
}

#[test]
fn euler_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..60 {
        let fc = match i % 3 {
            0 => random_simplicial(&mut rng, 7),
            1 => rips(random_points(&mut rng, 12, 2), 0.6),
            _ => {
                let img = GrayscaleImage::new(5, 4, random_image(&mut rng, 5, 4)).unwrap();
                let dir = if i % 2 == 0 { Direction::UpperStar } else { Direction::LowerStar };
                cubical_complex(&img, dir, &CubicalBudget::default()).unwrap()
            }
        };
        let bars = compute_persistence(&fc).unwrap();
        euler_check(&fc, &bars).unwrap_or_else(|e| panic!("complex {i}: {e}"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pair_counts(seed in any::<u64>(), kind in 0u8..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fc = match kind {
            0 => random_simplicial(&mut rng, 6),
            1 => rips(random_points(&mut rng, 10, 3), 0.7),
            _ => {
                let img = GrayscaleImage::new(4, 4, random_image(&mut rng, 4, 4)).unwrap();
                cubical_complex(&img, Direction::UpperStar, &CubicalBudget::default()).unwrap()
            }
        };
        check_counts(&fc)?;
        let bars = compute_persistence(&fc).unwrap();
        let essential_h0 = bars[&0].entries().iter().filter(|(iv, _)| iv.is_essential()).map(|(_, m)| m).sum::<usize>();
        prop_assert_eq!(essential_h0, components(&fc));
    }

    #[test]
    fn reorder_invariance(seed in any::<u64>(), kind in 0u8..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fc = match kind {
            0 => random_simplicial(&mut rng, 6),
            1 => {
                let img = GrayscaleImage::new(4, 3, random_image(&mut rng, 4, 3)).unwrap();
                cubical_complex(&img, Direction::LowerStar, &CubicalBudget::default()).unwrap()
            }
            _ => {
                // Lattice points give many equal distances.
                let pts = (0..9).map(|_| vec![rng.random_range(0..3) as f64, rng.random_range(0..3) as f64]).collect::<Vec<_>>();
                let mut pts = pts;
                pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
                pts.dedup();
                rips(pts, 2.0)
            }
        };
        let a = compute_persistence(&fc).unwrap();
        let b = compute_persistence(&shuffled(&fc, &mut rng)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rips_stability(seed in any::<u64>(), delta in 0.0f64..0.05) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = random_points(&mut rng, 10, 2);
        let moved: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| p.iter().map(|x| x + rng.random_range(-delta..=delta)).collect())
            .collect();
        let (pa, pb) = (PointCloud::new(pts).unwrap(), PointCloud::new(moved).unwrap());
        let (da, db) = (pa.distance_matrix(), pb.distance_matrix());
        let eps = da.iter().flatten().zip(db.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let budget = RipsBudget::default();
        let ba = compute_persistence(&rips_complex(&pa, 10.0, 2, &budget).unwrap()).unwrap();
        let bb = compute_persistence(&rips_complex(&pb, 10.0, 2, &budget).unwrap()).unwrap();
        for d in [0, 1] {
            let x = ba[&d].normalize(EssentialPolicy::Drop).unwrap();
            let y = bb[&d].normalize(EssentialPolicy::Drop).unwrap();
            let dist = bottleneck_distance(&x, &y).unwrap();
            prop_assert!(dist <= eps + 1e-9, "dim {}: {} > {}", d, dist, eps);
        }
    }
}
