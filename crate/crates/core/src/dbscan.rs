//! Exact DBSCAN over elastic distances with lower-bound-filtered range
//! queries.
//!
//! A bound above the query radius certifies the exact distance is above it
//! too, so filtered neighborhoods are identical to unfiltered ones and the
//! clustering is exact. Scan order, frontier expansion, and cluster ids are
//! all deterministic: index order decides everything.

use std::collections::VecDeque;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{lower_bound, BoundKind};
use crate::dp::{elastic_distance, elastic_distance_ea};
use crate::error::{Error, Result};
use crate::measures::MeasureSpec;
use crate::series::{TimeSeries, Window};

/// Query radius: fixed, or resolved from a sampled distance quantile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsSpec {
    Fixed(f64),
    /// Quantile (in (0, 1)) of the exact distances of up to 500 sampled pairs.
    Percentile(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbscanParams {
    pub eps: EpsSpec,
    pub min_pts: usize,
}

impl DbscanParams {
    pub fn fixed(eps: f64) -> Self {
        Self {
            eps: EpsSpec::Fixed(eps),
            min_pts: 5,
        }
    }

    pub fn percentile(p: f64) -> Self {
        Self {
            eps: EpsSpec::Percentile(p),
            min_pts: 5,
        }
    }
}

/// Label of a series after clustering: cluster id (0-based) or noise (-1).
pub const NOISE: i64 = -1;

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub labels: Vec<i64>,
    pub core: Vec<bool>,
    /// The radius actually used (resolved from the percentile if requested).
    pub eps: f64,
    pub stats: RangeStats,
}

impl Clustering {
    pub fn clusters(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| (m + 1).max(0)) as usize
    }
}

/// Work counters over all range queries of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RangeStats {
    pub queries: usize,
    pub candidates: usize,
    pub pruned: usize,
    pub exact_dp_calls: usize,
}

/// Exact radius query: indices of all series within `eps` of the center,
/// ascending. Candidates whose bound exceeds `eps` are skipped without DP.
pub fn range_query(
    spec: &MeasureSpec,
    data: &[TimeSeries],
    center: usize,
    eps: f64,
    window: Window,
    kind: BoundKind,
) -> Result<(Vec<usize>, RangeStats)> {
    if center >= data.len() {
        return Err(Error::IndexOutOfRange {
            index: center,
            len: data.len(),
        });
    }
    if !(eps > 0.0) {
        return Err(Error::Degenerate(format!("eps {eps} must be > 0")));
    }
    let q = &data[center];
    let mut out = Vec::new();
    let mut stats = RangeStats {
        queries: 1,
        candidates: data.len(),
        ..Default::default()
    };
    for (i, cand) in data.iter().enumerate() {
        let lb = lower_bound(kind, spec, cand, q, window, eps)?;
        if lb.early_stopped || lb.value > eps {
            stats.pruned += 1;
            continue;
        }
        stats.exact_dp_calls += 1;
        let d = elastic_distance_ea(spec, cand, q, window, eps)?;
        if !d.abandoned && d.distance <= eps {
            out.push(i);
        }
    }
    Ok((out, stats))
}

/// Exact DBSCAN. `seed` drives the pair sampling when `eps` is given as a
/// percentile; fixed-eps runs ignore it.
pub fn dbscan(
    spec: &MeasureSpec,
    data: &[TimeSeries],
    params: &DbscanParams,
    window: Window,
    kind: BoundKind,
    seed: u64,
) -> Result<Clustering> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if params.min_pts < 1 {
        return Err(Error::Degenerate("min_pts must be >= 1".into()));
    }
    let eps = resolve_eps(spec, data, params.eps, window, seed)?;

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Unvisited,
        Noise,
        Cluster(i64),
    }
    let n = data.len();
    let mut state = vec![State::Unvisited; n];
    let mut core = vec![false; n];
    let mut stats = RangeStats::default();
    let mut next_cluster: i64 = 0;

    for i in 0..n {
        if state[i] != State::Unvisited {
            continue;
        }
        let (neighbors, st) = range_query(spec, data, i, eps, window, kind)?;
        merge(&mut stats, st);
        if neighbors.len() < params.min_pts {
            state[i] = State::Noise;
            continue;
        }
        let id = next_cluster;
        next_cluster += 1;
        state[i] = State::Cluster(id);
        core[i] = true;
        let mut frontier: VecDeque<usize> = neighbors.into_iter().collect();
        while let Some(j) = frontier.pop_front() {
            match state[j] {
                State::Cluster(_) => continue,
                State::Noise => {
                    // border point: reachable but not core
                    state[j] = State::Cluster(id);
                }
                State::Unvisited => {
                    state[j] = State::Cluster(id);
                    let (nb, st) = range_query(spec, data, j, eps, window, kind)?;
                    merge(&mut stats, st);
                    if nb.len() >= params.min_pts {
                        core[j] = true;
                        frontier.extend(nb);
                    }
                }
            }
        }
    }

    let labels = state
        .into_iter()
        .map(|s| match s {
            State::Cluster(id) => id,
            _ => NOISE,
        })
        .collect();
    Ok(Clustering {
        labels,
        core,
        eps,
        stats,
    })
}

fn merge(acc: &mut RangeStats, other: RangeStats) {
    acc.queries += other.queries;
    acc.candidates += other.candidates;
    acc.pruned += other.pruned;
    acc.exact_dp_calls += other.exact_dp_calls;
}

/// Resolve the query radius. Percentile mode samples up to 500 distinct
/// pairs with one seeded generator, computes their exact distances, and
/// takes the requested quantile; a non-positive result (e.g. a constant
/// dataset) is an error.
fn resolve_eps(
    spec: &MeasureSpec,
    data: &[TimeSeries],
    eps: EpsSpec,
    window: Window,
    seed: u64,
) -> Result<f64> {
    match eps {
        EpsSpec::Fixed(e) => {
            if !(e > 0.0) || !e.is_finite() {
                return Err(Error::Degenerate(format!("eps {e} must be positive")));
            }
            Ok(e)
        }
        EpsSpec::Percentile(p) => {
            if !(0.0 < p && p < 1.0) {
                return Err(Error::Degenerate(format!(
                    "eps percentile {p} must lie in (0, 1)"
                )));
            }
            let n = data.len();
            if n < 2 {
                return Err(Error::Degenerate(
                    "cannot sample pair distances from fewer than 2 series".into(),
                ));
            }
            let total = n * (n - 1) / 2;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut dists = Vec::new();
            if total <= 500 {
                for i in 0..n {
                    for j in (i + 1)..n {
                        dists.push(elastic_distance(spec, &data[i], &data[j], window)?.distance);
                    }
                }
            } else {
                for _ in 0..500 {
                    let i = rng.gen_range(0..n);
                    let j = loop {
                        let j = rng.gen_range(0..n);
                        if j != i {
                            break j;
                        }
                    };
                    dists.push(elastic_distance(spec, &data[i], &data[j], window)?.distance);
                }
            }
            dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let idx = ((dists.len() as f64 * p).ceil() as usize)
                .saturating_sub(1)
                .min(dists.len() - 1);
            let eps = dists[idx];
            if !(eps > 0.0) {
                return Err(Error::Degenerate(format!(
                    "resolved eps {eps} is not positive (constant dataset?)"
                )));
            }
            Ok(eps)
        }
    }
}
