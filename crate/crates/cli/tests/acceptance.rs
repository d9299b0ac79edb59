//! Acceptance gate: one line per criterion, nonzero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use barvec::persistence::{cubical_complex, rips_complex, CubicalBudget, Direction, RipsBudget};
use barvec::sampling::SamplingRange;
use barvec::vectorize::{
    algebraic_functions, atol_features, complex_polynomial, landscapes, persistence_image,
    persistent_entropy, tropical_coordinates, AtolModel, AtolScale, ImageGrid, PolyTransform,
};
use barvec::{
    bottleneck_distance, compute_persistence, Barcode, EssentialPolicy, GrayscaleImage, MethodId,
    PointCloud,
};
use barvec_cli::experiment::ExperimentReport;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 256;
/// Lowest accuracy of the frozen synthetic experiment.
const FROZEN_ACCURACY: f64 = 1.0;

struct Gate {
    failed: usize,
}

impl Gate {
    fn check(&mut self, name: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                self.failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn real_bars(rng: &mut ChaCha8Rng, max: usize) -> Bars {
    uniform_bars(rng, 0, max)
}

fn oracle_suites() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    for case in 0..CASES {
        let bars = dyadic_bars(&mut rng, 20);
        let k = rng.random_range(1..=6);
        let t = rng.random_range(-8..=90) as f64 / 16.0;
        let l = landscapes(&barcode(&bars), k, 2, Some(SamplingRange::new(t, t + 1.0).unwrap())).unwrap();
        for level in 1..=k {
            let (got, want) = (l.levels[level - 1][0], landscape_sup(&bars, level, t));
            ensure(got == want, || format!("landscape case {case} level {level} at {t}: {got} vs {want}"))?;
        }
    }

    let mut worst_bottleneck = 0.0f64;
    for case in 0..CASES {
        let (a, b) = (real_bars(&mut rng, 5), real_bars(&mut rng, 5));
        let fast = bottleneck_distance(&barcode(&a), &barcode(&b)).unwrap();
        let err = (fast - brute_bottleneck(&a, &b)).abs();
        worst_bottleneck = worst_bottleneck.max(err);
        ensure(err <= 1e-12, || format!("bottleneck case {case}: error {err:e}"))?;
    }

    for case in 0..CASES {
        let bars = dyadic_bars(&mut rng, 8);
        let r = [1, 10, 50, 250, 500, 800][rng.random_range(0..6)];
        let (got, want) = (tropical_coordinates(&barcode(&bars), r), tropical_brute(&bars, r));
        ensure(got == want, || format!("tropical case {case}: {got:?} vs {want:?}"))?;
    }

    let mut worst_residual = 0.0f64;
    for case in 0..CASES {
        let bars = real_bars(&mut rng, 8);
        let transform = [PolyTransform::R, PolyTransform::S, PolyTransform::T][case % 3];
        let c = complex_polynomial(&barcode(&bars), transform, bars.len().max(1));
        let (res, scale) = polynomial_residual(&bars, transform, &c.to_vec()[..2 * bars.len()]);
        let rel = res / scale;
        worst_residual = worst_residual.max(rel);
        ensure(rel < 1e-9, || format!("polynomial case {case}: residual {res:e} at scale {scale:e}"))?;
    }

    let mut worst_mass = 0.0f64;
    let mut image_cases = 0;
    while image_cases < CASES {
        let bars = real_bars(&mut rng, 10);
        if !bars.iter().any(|(p, q)| q > p) {
            continue;
        }
        image_cases += 1;
        let sigma = rng.random_range(0.05..1.0);
        let n = rng.random_range(5..40);
        let pad = 6.0 * sigma;
        let range = |vals: Vec<f64>| {
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            SamplingRange::new(lo - pad, hi + pad).unwrap()
        };
        let grid = ImageGrid::new(
            range(bars.iter().map(|b| b.0).collect()),
            range(bars.iter().map(|b| b.1 - b.0).collect()),
            n,
            n,
            sigma,
        )
        .unwrap();
        let total: f64 = persistence_image(&barcode(&bars), &grid).unwrap().iter().sum();
        let lmax = bars.iter().map(|(p, q)| q - p).fold(0.0, f64::max);
        let expected: f64 = bars.iter().map(|(p, q)| ((q - p) / lmax).min(1.0)).sum();
        let rel = (total - expected).abs() / expected;
        worst_mass = worst_mass.max(rel);
        ensure(rel <= 1e-4, || format!("image case {image_cases}: relative mass error {rel:e}"))?;
    }

    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "5 suites x {CASES} cases in {secs:.2} s; worst bottleneck error {worst_bottleneck:.1e}, \
         polynomial residual/scale {worst_residual:.1e}, image mass {worst_mass:.1e}"
    ))
}

fn hand_persistence() -> Result<String, String> {
    let square = PointCloud::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
    let fc = rips_complex(&square, 2.0, 2, &RipsBudget::default()).unwrap();
    let h1 = compute_persistence(&fc).unwrap()[&1].normalize(EssentialPolicy::Drop).unwrap();
    let bars: Vec<(f64, f64, usize)> = h1.entries().iter().map(|(iv, m)| (iv.birth(), iv.death(), *m)).collect();
    ensure(bars == vec![(1.0, 2f64.sqrt(), 1)], || format!("unit square H1 = {bars:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut cells = 0;
    for i in 0..100 {
        let fc = match i % 4 {
            0 => random_simplicial(&mut rng, 8),
            1 => {
                let pts = random_points(&mut rng, 14, 2);
                rips_complex(&PointCloud::new(pts).unwrap(), 0.7, 2, &RipsBudget::default()).unwrap()
            }
            k => {
                let img = GrayscaleImage::new(6, 5, random_image(&mut rng, 6, 5)).unwrap();
                let dir = if k == 2 { Direction::UpperStar } else { Direction::LowerStar };
                cubical_complex(&img, dir, &CubicalBudget::default()).unwrap()
            }
        };
        cells += fc.len();
        euler_check(&fc, &compute_persistence(&fc).unwrap()).map_err(|e| format!("complex {i}: {e}"))?;
    }
    Ok(format!("unit square H1 = {{[1, sqrt 2]}}; Euler characteristic holds on 100 complexes ({cells} cells)"))
}

fn closed_forms() -> Result<String, String> {
    let close = |name: &str, got: f64, want: f64| {
        ensure((got - want).abs() <= 1e-12, || format!("{name}: {got} vs {want}"))
    };
    let two = Barcode::from_pairs(0, [(0.0, 1.0), (2.0, 3.0)]).unwrap();
    close("entropy of two equal bars", persistent_entropy(&two).unwrap(), 2f64.ln())?;
    for n in [1usize, 3, 7, 50, 1000] {
        let b = Barcode::from_pairs(0, (0..n).map(|i| (i as f64, i as f64 + 0.5))).unwrap();
        close(&format!("entropy of {n} equal bars"), persistent_entropy(&b).unwrap(), (n as f64).ln())?;
    }
    let alg = algebraic_functions(&Barcode::from_pairs(0, [(0.0, 1.0), (1.0, 3.0)]).unwrap());
    for (i, (g, w)) in alg.iter().zip([2.0, 2.0, 16.0, 4.0, 2.0]).enumerate() {
        close(&format!("algebraic f{}", i + 1), *g, w)?;
    }
    let model = AtolModel::new(vec![[0.0, 0.0], [0.0, 2.0]], AtolScale::Max).unwrap();
    let f = atol_features(&Barcode::from_pairs(0, [(0.0, 2.0)]).unwrap(), &model);
    close("atol first center", f[0], (-2f64).exp())?;
    close("atol second center", f[1], 1.0)?;
    Ok(format!(
        "ln 2, ln N for N in {{1,3,7,50,1000}}, algebraic {alg:?}, atol ({:.6}, {})",
        f[0], f[1]
    ))
}

fn stability() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let range = SamplingRange::new(-0.5, 5.5).unwrap();
    let mut worst_gap_ratio = 0.0f64;
    for case in 0..200 {
        let (a, b) = (uniform_bars(&mut rng, 0, 10), uniform_bars(&mut rng, 0, 10));
        let (ba, bb) = (barcode(&a), barcode(&b));
        let la = landscapes(&ba, 1, 301, Some(range)).unwrap();
        let lb = landscapes(&bb, 1, 301, Some(range)).unwrap();
        let gap = la.levels[0].iter().zip(&lb.levels[0]).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let d = bottleneck_distance(&ba, &bb).unwrap();
        ensure(gap <= d + 1e-9, || format!("landscape pair {case}: gap {gap} > bottleneck {d}"))?;
        if d > 0.0 {
            worst_gap_ratio = worst_gap_ratio.max(gap / d);
        }
    }

    for case in 0..200 {
        let eps: f64 = rng.random_range(0.0..0.1);
        let bars: Bars = (0..rng.random_range(1..=10))
            .map(|_| {
                let p: f64 = rng.random_range(0.0..3.0);
                (p, p + 2.0 * eps + rng.random_range(0.0..2.0))
            })
            .collect();
        let moved: Bars = bars
            .iter()
            .map(|&(p, q)| (p + rng.random_range(-eps..=eps), q + rng.random_range(-eps..=eps)))
            .collect();
        let d = bottleneck_distance(&barcode(&bars), &barcode(&moved)).unwrap();
        ensure(d <= eps + 1e-9, || format!("barcode perturbation {case}: {d} > {eps}"))?;
    }

    let budget = RipsBudget::default();
    for case in 0..50 {
        let delta: f64 = rng.random_range(0.0..0.05);
        let pts = random_points(&mut rng, 12, 2);
        let moved: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| p.iter().map(|x| x + rng.random_range(-delta..=delta)).collect())
            .collect();
        let (pa, pb) = (PointCloud::new(pts).unwrap(), PointCloud::new(moved).unwrap());
        let (da, db) = (pa.distance_matrix(), pb.distance_matrix());
        let eps = da.iter().flatten().zip(db.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let ba = compute_persistence(&rips_complex(&pa, 10.0, 2, &budget).unwrap()).unwrap();
        let bb = compute_persistence(&rips_complex(&pb, 10.0, 2, &budget).unwrap()).unwrap();
        for dim in [0, 1] {
            let x = ba[&dim].normalize(EssentialPolicy::Drop).unwrap();
            let y = bb[&dim].normalize(EssentialPolicy::Drop).unwrap();
            let d = bottleneck_distance(&x, &y).unwrap();
            ensure(d <= eps + 1e-9, || format!("point cloud {case} H{dim}: {d} > {eps}"))?;
        }
    }
    Ok(format!(
        "200 landscape pairs (max gap/bottleneck {worst_gap_ratio:.3}), 200 barcode and 50 point-cloud perturbations within eps + 1e-9"
    ))
}

fn bench_once(out: &std::path::Path) -> Result<f64, String> {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_barvec"))
        .args(["bench", "--methods", "all", "--seed", "0", "-o"])
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || format!("bench exited with {status}"))?;
    Ok(start.elapsed().as_secs_f64())
}

fn bench_runs() -> (Result<String, String>, Result<String, String>) {
    let dir = tempfile::tempdir().expect("temp dir");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let first = bench_once(&a);
    let classification = first.clone().and_then(|secs| {
        let text = std::fs::read_to_string(&a).map_err(|e| e.to_string())?;
        let report: ExperimentReport = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let acc = report
            .result(MethodId::PersistenceStatistics)
            .ok_or("no persistence_statistics result")?
            .accuracy;
        ensure(acc >= 0.90, || format!("accuracy {acc} < 0.90"))?;
        ensure(acc >= FROZEN_ACCURACY, || format!("accuracy {acc} below frozen {FROZEN_ACCURACY}"))?;
        ensure(secs < 300.0, || format!("took {secs:.1} s"))?;
        Ok(format!(
            "persistence statistics + 5-NN accuracy {acc:.4} on {} test samples (frozen {FROZEN_ACCURACY}); full 13-method run {secs:.1} s",
            report.test_size
        ))
    });
    let determinism = first.and_then(|_| {
        bench_once(&b)?;
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        ensure(x == y, || "reports differ".into())?;
        Ok(format!("two bench runs with seed 0 gave identical {}-byte reports", x.len()))
    });
    (classification, determinism)
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: 0 };
    gate.check("oracle suites", oracle_suites());
    gate.check("hand-derived persistence", hand_persistence());
    gate.check("closed-form values", closed_forms());
    gate.check("stability", stability());
    let (classification, determinism) = bench_runs();
    gate.check("synthetic classification", classification);
    gate.check("bench determinism", determinism);
    if gate.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", gate.failed);
        ExitCode::FAILURE
    }
}
