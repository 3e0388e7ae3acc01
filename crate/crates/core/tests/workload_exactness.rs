//! Filtered workloads must be indistinguishable from unfiltered ones:
//! 1-NN answers, range queries, and DBSCAN labels.

mod common;

use bglb::bounds::BoundKind;
use bglb::dbscan::{dbscan, range_query, DbscanParams, EpsSpec};
use bglb::dp::elastic_distance;
use bglb::measures::{MeasureKind, MeasureSpec};
use bglb::search::{evaluate_tlb, nn_search, run_1nn_benchmark, Cascade};
use bglb::series::{TimeSeries, Window};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn naive_nn(
    spec: &MeasureSpec,
    train: &[TimeSeries],
    query: &TimeSeries,
    w: Window,
) -> (usize, f64) {
    let mut best = (0usize, f64::INFINITY);
    for (i, c) in train.iter().enumerate() {
        let d = elastic_distance(spec, c, query, w).unwrap().distance;
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

fn cascades_for(kind: MeasureKind) -> Vec<Cascade> {
    let mut out = vec![
        Cascade::unfiltered(),
        Cascade::new(vec![BoundKind::Glb]),
        Cascade::new(vec![BoundKind::Bglb]),
    ];
    if kind == MeasureKind::Dtw {
        out.push(Cascade::new(vec![BoundKind::KimFL, BoundKind::Bglb]));
        out.push(Cascade::new(vec![
            BoundKind::Kim,
            BoundKind::Keogh,
            BoundKind::Bglb,
        ]));
    }
    if BoundKind::Dbglb.supports(kind) {
        out.push(Cascade::new(vec![BoundKind::Dbglb]));
    }
    out
}

#[test]
fn nn_search_equals_naive_scan_for_every_cascade() {
    let mut rng = ChaCha8Rng::seed_from_u64(1201);
    for spec in common::default_specs() {
        for _ in 0..25 {
            let len = rng.gen_range(4..14);
            let train = common::random_dataset(&mut rng, 24, len, 3);
            let queries = common::random_dataset(&mut rng, 6, len, 3);
            let w = Window::Absolute(rng.gen_range(0..3));
            for cascade in cascades_for(spec.kind()) {
                for q in &queries {
                    let (idx, dist, stats) = nn_search(&spec, &train, q, w, &cascade).unwrap();
                    let (nidx, ndist) = naive_nn(&spec, &train, q, w);
                    assert_eq!(idx, nidx, "{:?} cascade {}", spec.kind(), cascade.label());
                    assert!((dist - ndist).abs() <= 1e-9 * ndist.abs().max(1.0));
                    assert_eq!(
                        stats.pruned() + stats.exact_dp_calls,
                        stats.candidates,
                        "stats conservation"
                    );
                }
            }
        }
    }
}

/// Adding stages changes only the stats, never the answers; a tighter bound
/// never needs more DP calls.
#[test]
fn cascade_monotonicity_and_dp_call_dominance() {
    let mut rng = ChaCha8Rng::seed_from_u64(1202);
    for spec in common::default_specs() {
        for _ in 0..10 {
            let len = rng.gen_range(6..14);
            let train = common::random_dataset(&mut rng, 40, len, 3);
            let queries = common::random_dataset(&mut rng, 8, len, 3);
            let w = Window::Absolute(1);
            let glb_c = Cascade::new(vec![BoundKind::Glb]);
            let bglb_c = Cascade::new(vec![BoundKind::Bglb]);
            let mut glb_calls = 0usize;
            let mut bglb_calls = 0usize;
            for q in &queries {
                let (ig, dg, sg) = nn_search(&spec, &train, q, w, &glb_c).unwrap();
                let (ib, db, sb) = nn_search(&spec, &train, q, w, &bglb_c).unwrap();
                assert_eq!(ig, ib);
                assert_eq!(dg, db);
                glb_calls += sg.exact_dp_calls;
                bglb_calls += sb.exact_dp_calls;
            }
            assert!(
                bglb_calls <= glb_calls,
                "{:?}: tighter bound needed more DP calls ({bglb_calls} > {glb_calls})",
                spec.kind()
            );
        }
    }
}

#[test]
fn benchmark_rows_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(1203);
    let spec = MeasureSpec::with_defaults(MeasureKind::Erp);
    let train = common::random_dataset(&mut rng, 30, 10, 3);
    let test = common::random_dataset(&mut rng, 10, 10, 3);
    let cascades = [
        Cascade::new(vec![BoundKind::Glb]),
        Cascade::new(vec![BoundKind::Bglb]),
    ];
    let rows = run_1nn_benchmark(&spec, &train, &test, Window::Absolute(1), &cascades).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].cascade, "none");
    assert_eq!(rows[0].speedup, 1.0);
    assert_eq!(rows[0].dp_calls, 300);
    // identical accuracy for every cascade (exact filtering)
    for r in &rows {
        assert_eq!(r.accuracy, rows[0].accuracy);
        assert_eq!(r.pruned + r.dp_calls, r.candidates);
    }
    // dominance: the augmented bound prunes at least as much
    assert!(rows[2].dp_calls <= rows[1].dp_calls);
}

#[test]
fn tlb_dominance_and_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(1204);
    for spec in common::default_specs() {
        let len = 10;
        let train = common::random_dataset(&mut rng, 12, len, 2);
        let test = common::random_dataset(&mut rng, 6, len, 2);
        let w = Window::Absolute(1);
        let t_glb = evaluate_tlb(&spec, &train, &test, w, BoundKind::Glb).unwrap();
        let t_bglb = evaluate_tlb(&spec, &train, &test, w, BoundKind::Bglb).unwrap();
        assert!((0.0..=1.0 + 1e-12).contains(&t_glb));
        assert!((0.0..=1.0 + 1e-12).contains(&t_bglb));
        assert!(
            t_bglb >= t_glb - 1e-12,
            "{:?}: tlb(bglb) {t_bglb} < tlb(glb) {t_glb}",
            spec.kind()
        );
    }
}

#[test]
fn range_queries_and_dbscan_are_exact_under_filtering() {
    let mut rng = ChaCha8Rng::seed_from_u64(1205);
    for spec in common::default_specs() {
        for round in 0..6 {
            let len = rng.gen_range(5..10);
            let data = common::random_dataset(&mut rng, 18, len, 3);
            let w = Window::Absolute(1);
            // pick an eps around the median of a few sampled distances
            let mut sample = Vec::new();
            for i in 0..6 {
                for j in (i + 1)..6 {
                    sample.push(
                        elastic_distance(&spec, &data[i], &data[j], w).unwrap().distance,
                    );
                }
            }
            sample.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let eps = sample[sample.len() / 2].max(1e-3);

            let kinds = if BoundKind::Dbglb.supports(spec.kind()) {
                vec![BoundKind::Glb, BoundKind::Bglb, BoundKind::Dbglb]
            } else {
                vec![BoundKind::Glb, BoundKind::Bglb]
            };
            for center in 0..data.len() {
                let (truth, _) =
                    range_query(&spec, &data, center, eps, w, BoundKind::None).unwrap();
                for &k in &kinds {
                    let (got, _) = range_query(&spec, &data, center, eps, w, k).unwrap();
                    assert_eq!(got, truth, "{:?} {k:?} center {center}", spec.kind());
                }
            }

            let params = DbscanParams {
                eps: EpsSpec::Fixed(eps),
                min_pts: 1 + round % 4,
            };
            let truth = dbscan(&spec, &data, &params, w, BoundKind::None, 5).unwrap();
            for &k in &kinds {
                let got = dbscan(&spec, &data, &params, w, k, 5).unwrap();
                assert_eq!(got.labels, truth.labels, "{:?} {k:?}", spec.kind());
                assert_eq!(got.core, truth.core);
                assert!(
                    got.stats.exact_dp_calls <= truth.stats.exact_dp_calls,
                    "filtering increased DP calls"
                );
            }

            // tighter bound, no more DP calls
            let g = dbscan(&spec, &data, &params, w, BoundKind::Glb, 5).unwrap();
            let b = dbscan(&spec, &data, &params, w, BoundKind::Bglb, 5).unwrap();
            assert!(b.stats.exact_dp_calls <= g.stats.exact_dp_calls);
        }
    }
}
