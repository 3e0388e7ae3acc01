//! Banded engine vs the independent full-matrix reference implementation.

mod common;

use bglb::dp::elastic_distance;
use bglb::series::Window;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[test]
fn banded_dp_matches_full_matrix_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for spec in common::default_specs() {
        for trial in 0..800 {
            let (x, q, radius) = common::random_pair(&mut rng, 12, trial);
            let got = elastic_distance(&spec, &x, &q, Window::Absolute(radius)).unwrap();
            let want = common::reference_distance(&spec, &x, &q, radius);
            assert!(
                (got.distance - want).abs() <= 1e-9 * want.abs().max(1.0),
                "{:?} radius={radius}: {} vs reference {}\nx={:?}\nq={:?}",
                spec.kind(),
                got.distance,
                want,
                x.values(),
                q.values()
            );
        }
    }
}

#[test]
fn wide_band_equals_unbanded_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(502);
    for spec in common::default_specs() {
        for _ in 0..200 {
            let n = rng.gen_range(2..10);
            let m = rng.gen_range(2..10);
            let x = common::random_series(&mut rng, n);
            let q = common::random_series(&mut rng, m);
            // any radius >= max(n, m) behaves as unbanded
            let got = elastic_distance(&spec, &x, &q, Window::Absolute(n.max(m) + 3)).unwrap();
            let want = common::reference_distance(&spec, &x, &q, n.max(m));
            assert!((got.distance - want).abs() <= 1e-9 * want.abs().max(1.0));
        }
    }
}
