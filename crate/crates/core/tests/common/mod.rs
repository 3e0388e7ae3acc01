//! Shared test oracles: independent full-matrix reference DPs for every
//! measure, an exhaustive edge-cover enumerator, and randomized pair
//! generators. Everything here is written directly from the measure
//! definitions, deliberately sharing no code with the library's banded
//! engine.

#![allow(dead_code)]

use bglb::measures::{MeasureKind, MeasureSpec};
use bglb::series::TimeSeries;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const INF: f64 = f64::INFINITY;

fn in_band(i: usize, j: usize, radius: usize) -> bool {
    i.abs_diff(j) <= radius
}

/// Full-matrix reference distance. O(n*m) memory, no rolling rows, no early
/// abandoning; banding by masking cells.
pub fn reference_distance(spec: &MeasureSpec, x: &TimeSeries, q: &TimeSeries, radius: usize) -> f64 {
    let p = *spec.params();
    let (xs, qs) = (x.values(), q.values());
    let (n, m) = (xs.len(), qs.len());
    assert!(radius >= n.abs_diff(m));
    match spec.kind() {
        MeasureKind::Lcss => {
            // similarity matrix over the band; virtual zero boundary
            let mut s = vec![vec![f64::NEG_INFINITY; m + 1]; n + 1];
            for r in s[0].iter_mut() {
                *r = 0.0;
            }
            for row in s.iter_mut() {
                row[0] = 0.0;
            }
            for i in 1..=n {
                for j in 1..=m {
                    if !in_band(i, j, radius) {
                        continue;
                    }
                    let mij = if (xs[i - 1] - qs[j - 1]).abs() <= p.epsilon {
                        1.0
                    } else {
                        0.0
                    };
                    s[i][j] = (s[i - 1][j - 1] + mij).max(s[i - 1][j]).max(s[i][j - 1]);
                }
            }
            1.0 - s[n][m] / n.min(m) as f64
        }
        kind => {
            let two = |a: f64| a * a;
            let pad = |v: &[f64], k: usize| if k == 0 { 0.0 } else { v[k - 1] };
            // virtual boundary values
            let (vrow, vcol): (Box<dyn Fn(usize) -> f64>, Box<dyn Fn(usize) -> f64>) = match kind {
                MeasureKind::Erp => (
                    Box::new(move |j: usize| qs[..j].iter().map(|v| two(v - p.g)).sum()),
                    Box::new(move |i: usize| xs[..i].iter().map(|v| two(v - p.g)).sum()),
                ),
                MeasureKind::Edr => (
                    Box::new(|j: usize| j as f64),
                    Box::new(|i: usize| i as f64),
                ),
                MeasureKind::Swale => (
                    Box::new(move |j: usize| j as f64 * p.p),
                    Box::new(move |i: usize| i as f64 * p.p),
                ),
                _ => (Box::new(|_| INF), Box::new(|_| INF)),
            };
            let diag = |i: usize, j: usize| -> f64 {
                let (a, b) = (xs[i - 1], qs[j - 1]);
                match kind {
                    MeasureKind::Dtw | MeasureKind::Erp => two(a - b),
                    MeasureKind::Msm => (a - b).abs(),
                    MeasureKind::Twed => {
                        (a - b).abs() + (pad(xs, i - 1) - pad(qs, j - 1)).abs() + 2.0 * p.nu
                    }
                    MeasureKind::Edr => {
                        if (a - b).abs() <= p.epsilon {
                            0.0
                        } else {
                            1.0
                        }
                    }
                    MeasureKind::Swale => {
                        if (a - b).abs() <= p.epsilon {
                            p.r
                        } else {
                            p.p
                        }
                    }
                    MeasureKind::Lcss => unreachable!(),
                }
            };
            let msm_c = |mid: f64, prev: f64, other: f64| {
                if (prev <= mid && mid <= other) || (prev >= mid && mid >= other) {
                    p.c
                } else {
                    p.c + (mid - prev).abs().min((mid - other).abs())
                }
            };
            let vert = |i: usize, j: usize| -> f64 {
                match kind {
                    MeasureKind::Dtw => two(xs[i - 1] - qs[j - 1]),
                    MeasureKind::Erp => two(xs[i - 1] - p.g),
                    MeasureKind::Msm => {
                        if i < 2 {
                            INF
                        } else {
                            msm_c(xs[i - 1], xs[i - 2], qs[j - 1])
                        }
                    }
                    MeasureKind::Twed => {
                        (xs[i - 1] - pad(xs, i - 1)).abs() + p.nu + p.lambda
                    }
                    MeasureKind::Edr => 1.0,
                    MeasureKind::Swale => p.p,
                    MeasureKind::Lcss => unreachable!(),
                }
            };
            let horiz = |i: usize, j: usize| -> f64 {
                match kind {
                    MeasureKind::Dtw => two(xs[i - 1] - qs[j - 1]),
                    MeasureKind::Erp => two(qs[j - 1] - p.g),
                    MeasureKind::Msm => {
                        if j < 2 {
                            INF
                        } else {
                            msm_c(qs[j - 1], qs[j - 2], xs[i - 1])
                        }
                    }
                    MeasureKind::Twed => {
                        (qs[j - 1] - pad(qs, j - 1)).abs() + p.nu + p.lambda
                    }
                    MeasureKind::Edr => 1.0,
                    MeasureKind::Swale => p.p,
                    MeasureKind::Lcss => unreachable!(),
                }
            };

            let mut d = vec![vec![INF; m + 1]; n + 1];
            d[0][0] = 0.0;
            for j in 1..=m {
                d[0][j] = vrow(j);
            }
            for i in 1..=n {
                d[i][0] = vcol(i);
            }
            for i in 1..=n {
                for j in 1..=m {
                    if !in_band(i, j, radius) {
                        continue;
                    }
                    d[i][j] = (d[i - 1][j - 1] + diag(i, j))
                        .min(d[i - 1][j] + vert(i, j))
                        .min(d[i][j - 1] + horiz(i, j));
                }
            }
            let raw = d[n][m];
            if kind == MeasureKind::Dtw {
                raw.sqrt()
            } else {
                raw
            }
        }
    }
}

/// Exhaustive minimum edge cover over all subsets of cross edges; uncovered
/// vertices take their self-loops (the optimal completion for a fixed cross
/// subset). Only usable for small cross-edge counts.
pub fn exhaustive_min_cover(
    n: usize,
    m: usize,
    cross: &[(usize, usize, f64)],
    self_u: &[f64],
    self_v: &[f64],
) -> f64 {
    let e = cross.len();
    assert!(e <= 20, "too many cross edges for exhaustive enumeration");
    let mut best = INF;
    for subset in 0u32..(1u32 << e) {
        let mut w = 0.0;
        let mut cu = 0u32;
        let mut cv = 0u32;
        for (k, &(i, j, wt)) in cross.iter().enumerate() {
            if subset >> k & 1 == 1 {
                w += wt;
                cu |= 1 << i;
                cv |= 1 << j;
            }
        }
        for (i, &s) in self_u.iter().enumerate().take(n) {
            if cu >> i & 1 == 0 {
                w += s;
            }
        }
        for (j, &s) in self_v.iter().enumerate().take(m) {
            if cv >> j & 1 == 0 {
                w += s;
            }
        }
        best = best.min(w);
    }
    best
}

/// Random series whose values mix a coarse 0.1 grid (to exercise epsilon
/// ties) with continuous noise and random walks.
pub fn random_series(rng: &mut ChaCha8Rng, len: usize) -> TimeSeries {
    let style = rng.gen_range(0..3);
    let vals: Vec<f64> = match style {
        0 => (0..len).map(|_| rng.gen_range(-10..=10) as f64 * 0.1).collect(),
        1 => (0..len).map(|_| rng.gen_range(-2.0..2.0)).collect(),
        _ => {
            let mut acc = rng.gen_range(-1.0..1.0);
            (0..len)
                .map(|_| {
                    acc += rng.gen_range(-0.4..0.4);
                    acc
                })
                .collect()
        }
    };
    TimeSeries::new(vals).unwrap()
}

/// Random (x, q, radius) with lengths in [2, max_len], radius cycling over
/// {0, 1, 2, full} and always feasible.
pub fn random_pair(
    rng: &mut ChaCha8Rng,
    max_len: usize,
    trial: usize,
) -> (TimeSeries, TimeSeries, usize) {
    let n = rng.gen_range(2..=max_len);
    let (m, radius) = match trial % 4 {
        0 => (n, 0),
        k @ (1 | 2) => {
            let lo = n.saturating_sub(k).max(2);
            let hi = (n + k).min(max_len);
            (rng.gen_range(lo..=hi), k)
        }
        _ => {
            let m = rng.gen_range(2..=max_len);
            (m, n.max(m))
        }
    };
    (random_series(rng, n), random_series(rng, m), radius)
}

/// Labeled random dataset: `classes` archetype walks plus per-series noise,
/// all of length `len`.
pub fn random_dataset(
    rng: &mut ChaCha8Rng,
    count: usize,
    len: usize,
    classes: usize,
) -> Vec<TimeSeries> {
    let archetypes: Vec<Vec<f64>> = (0..classes)
        .map(|_| {
            let mut acc = rng.gen_range(-2.0..2.0);
            (0..len)
                .map(|_| {
                    acc += rng.gen_range(-0.5..0.5);
                    acc
                })
                .collect()
        })
        .collect();
    (0..count)
        .map(|i| {
            let c = i % classes;
            let vals = archetypes[c]
                .iter()
                .map(|v| v + rng.gen_range(-0.25..0.25))
                .collect();
            TimeSeries::with_label(vals, c as i64).unwrap()
        })
        .collect()
}

pub fn default_specs() -> Vec<MeasureSpec> {
    MeasureKind::ALL
        .iter()
        .map(|&k| MeasureSpec::with_defaults(k))
        .collect()
}
