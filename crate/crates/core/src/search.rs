//! Exact lower-bound-filtered 1-NN search and the tightness evaluator.
//!
//! The pipeline is the classic filter cascade: for each candidate, cheap
//! bounds run first with the best-so-far distance as cutoff; only candidates
//! whose bound stays below the best-so-far reach the exact DP (optionally
//! early-abandoning). Because every bound is admissible, the returned
//! neighbor is identical to a naive full scan; only the amount of work
//! changes, which the stats record.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bounds::{lower_bound, BoundKind};
use crate::dp::{elastic_distance, elastic_distance_ea};
use crate::error::{Error, Result};
use crate::measures::{MeasureKind, MeasureSpec};
use crate::series::{TimeSeries, Window};

/// Work counters of one or more searches. Counts are exact and deterministic;
/// only `wall_time` varies between runs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchStats {
    pub queries: usize,
    pub candidates: usize,
    /// Candidates discarded by each cascade stage, in stage order.
    pub pruned_by_stage: Vec<usize>,
    pub exact_dp_calls: usize,
    pub wall_time: Duration,
}

impl SearchStats {
    pub fn pruned(&self) -> usize {
        self.pruned_by_stage.iter().sum()
    }

    /// Fraction of candidates discarded before any exact DP.
    pub fn pruning_ratio(&self) -> f64 {
        if self.candidates == 0 {
            0.0
        } else {
            self.pruned() as f64 / self.candidates as f64
        }
    }

    pub fn merge(&mut self, other: &SearchStats) {
        self.queries += other.queries;
        self.candidates += other.candidates;
        if self.pruned_by_stage.len() < other.pruned_by_stage.len() {
            self.pruned_by_stage.resize(other.pruned_by_stage.len(), 0);
        }
        for (a, b) in self.pruned_by_stage.iter_mut().zip(&other.pruned_by_stage) {
            *a += b;
        }
        self.exact_dp_calls += other.exact_dp_calls;
        self.wall_time += other.wall_time;
    }
}

/// An ordered list of bound stages followed by the exact distance.
#[derive(Debug, Clone, PartialEq)]
pub struct Cascade {
    pub stages: Vec<BoundKind>,
    /// Run the final exact stage with early abandoning at the best-so-far.
    pub early_abandon_dp: bool,
}

impl Cascade {
    pub fn new(stages: Vec<BoundKind>) -> Self {
        // BoundKind::None stages are no-ops; drop them
        let stages = stages
            .into_iter()
            .filter(|k| *k != BoundKind::None)
            .collect();
        Self {
            stages,
            early_abandon_dp: true,
        }
    }

    /// No bound stages: the naive exact scan.
    pub fn unfiltered() -> Self {
        Self {
            stages: Vec::new(),
            early_abandon_dp: false,
        }
    }

    /// The standard cascade per measure: [KimFL, Bglb] for DTW (a constant
    /// stage in front of the linear one), [Bglb] otherwise.
    pub fn default_for(kind: MeasureKind) -> Self {
        if kind == MeasureKind::Dtw {
            Cascade::new(vec![BoundKind::KimFL, BoundKind::Bglb])
        } else {
            Cascade::new(vec![BoundKind::Bglb])
        }
    }

    /// Parse a comma-separated stage list, e.g. "kimfl,bglb" or "none".
    pub fn parse(s: &str) -> Result<Self> {
        let stages = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(BoundKind::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Cascade::new(stages))
    }

    pub fn validate(&self, kind: MeasureKind) -> Result<()> {
        for stage in &self.stages {
            if !stage.supports(kind) {
                return Err(Error::UnsupportedBound {
                    bound: stage.name().into(),
                    measure: kind.name().into(),
                });
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        if self.stages.is_empty() {
            "none".into()
        } else {
            self.stages
                .iter()
                .map(|s| s.name())
                .collect::<Vec<_>>()
                .join("+")
        }
    }
}

/// Exact 1-NN of `query` in `train`: identical to a naive scan, ties broken
/// by the lowest index. Returns (index, distance, stats).
pub fn nn_search(
    spec: &MeasureSpec,
    train: &[TimeSeries],
    query: &TimeSeries,
    window: Window,
    cascade: &Cascade,
) -> Result<(usize, f64, SearchStats)> {
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    cascade.validate(spec.kind())?;
    let start = Instant::now();

    let mut stats = SearchStats {
        queries: 1,
        candidates: train.len(),
        pruned_by_stage: vec![0; cascade.stages.len()],
        ..Default::default()
    };
    let mut bsf = f64::INFINITY;
    let mut best = 0usize;
    'candidates: for (idx, cand) in train.iter().enumerate() {
        for (si, kind) in cascade.stages.iter().enumerate() {
            let lb = lower_bound(*kind, spec, cand, query, window, bsf)?;
            if lb.early_stopped || lb.value >= bsf {
                stats.pruned_by_stage[si] += 1;
                continue 'candidates;
            }
        }
        stats.exact_dp_calls += 1;
        let d = if cascade.early_abandon_dp {
            elastic_distance_ea(spec, cand, query, window, bsf)?
        } else {
            elastic_distance(spec, cand, query, window)?
        };
        if !d.abandoned && d.distance < bsf {
            bsf = d.distance;
            best = idx;
        }
    }
    stats.wall_time = start.elapsed();
    Ok((best, bsf, stats))
}

/// Run `nn_search` for every query in parallel, merging stats in query order.
pub fn nn_search_batch(
    spec: &MeasureSpec,
    train: &[TimeSeries],
    queries: &[TimeSeries],
    window: Window,
    cascade: &Cascade,
) -> Result<(Vec<(usize, f64)>, SearchStats)> {
    let start = Instant::now();
    let per_query: Vec<(usize, f64, SearchStats)> = queries
        .par_iter()
        .map(|q| nn_search(spec, train, q, window, cascade))
        .collect::<Result<_>>()?;
    let mut stats = SearchStats::default();
    let mut results = Vec::with_capacity(per_query.len());
    for (idx, dist, s) in per_query {
        stats.merge(&s);
        results.push((idx, dist));
    }
    // report end-to-end wall time rather than summed per-query time
    stats.wall_time = start.elapsed();
    Ok((results, stats))
}

/// Tightness statistics of a bound over all train x test pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlbStats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Pairs contributing to the mean (zero-distance pairs are excluded).
    pub pairs: usize,
}

/// Mean ratio of a symmetrized bound to the exact distance over all pairs.
pub fn evaluate_tlb(
    spec: &MeasureSpec,
    train: &[TimeSeries],
    test: &[TimeSeries],
    window: Window,
    kind: BoundKind,
) -> Result<f64> {
    tlb_stats(spec, train, test, window, kind).map(|s| s.mean)
}

pub fn tlb_stats(
    spec: &MeasureSpec,
    train: &[TimeSeries],
    test: &[TimeSeries],
    window: Window,
    kind: BoundKind,
) -> Result<TlbStats> {
    if !kind.supports(spec.kind()) {
        return Err(Error::UnsupportedBound {
            bound: kind.name().into(),
            measure: spec.kind().name().into(),
        });
    }
    tlb_stats_with(train, test, |x, q| {
        Ok(lower_bound(kind, spec, x, q, window, f64::INFINITY)?.value)
    }, |x, q| Ok(elastic_distance(spec, x, q, window)?.distance))
}

/// Shared TLB core, generic over the bound evaluator so tests can plug in an
/// oracle (e.g. the exact distance itself).
pub fn tlb_stats_with<B, E>(
    train: &[TimeSeries],
    test: &[TimeSeries],
    bound: B,
    exact: E,
) -> Result<TlbStats>
where
    B: Fn(&TimeSeries, &TimeSeries) -> Result<f64> + Sync,
    E: Fn(&TimeSeries, &TimeSeries) -> Result<f64> + Sync,
{
    if train.is_empty() || test.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let ratios: Vec<Option<f64>> = test
        .par_iter()
        .map(|q| {
            let mut local = Vec::with_capacity(train.len());
            for x in train {
                let d = exact(x, q)?;
                if d > 0.0 {
                    local.push(Some(bound(x, q)? / d));
                } else {
                    local.push(None);
                }
            }
            Ok(local)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let kept: Vec<f64> = ratios.into_iter().flatten().collect();
    if kept.is_empty() {
        return Err(Error::Degenerate(
            "all pairs have zero exact distance".into(),
        ));
    }
    let mean = kept.iter().sum::<f64>() / kept.len() as f64;
    let min = kept.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = kept.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(TlbStats {
        mean,
        min,
        max,
        pairs: kept.len(),
    })
}

/// One cascade's benchmark outcome.
#[derive(Debug, Clone)]
pub struct NnBenchRow {
    pub cascade: String,
    pub queries: usize,
    pub candidates: usize,
    pub pruned: usize,
    pub dp_calls: usize,
    pub pruning_ratio: f64,
    pub wall_ms: f64,
    /// Baseline wall time divided by this cascade's wall time.
    pub speedup: f64,
    /// 1-NN classification accuracy over the labeled queries.
    pub accuracy: f64,
}

/// Benchmark a set of cascades against the unfiltered baseline. Every
/// cascade must return the same (index, distance) answers as the baseline;
/// a mismatch is a hard error.
pub fn run_1nn_benchmark(
    spec: &MeasureSpec,
    train: &[TimeSeries],
    test: &[TimeSeries],
    window: Window,
    cascades: &[Cascade],
) -> Result<Vec<NnBenchRow>> {
    if train.is_empty() || test.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let baseline = Cascade::unfiltered();
    let (base_answers, base_stats) = nn_search_batch(spec, train, test, window, &baseline)?;
    let base_wall = base_stats.wall_time.as_secs_f64();
    let accuracy = classification_accuracy(train, test, &base_answers);

    let mut rows = vec![NnBenchRow {
        cascade: baseline.label(),
        queries: base_stats.queries,
        candidates: base_stats.candidates,
        pruned: 0,
        dp_calls: base_stats.exact_dp_calls,
        pruning_ratio: 0.0,
        wall_ms: base_wall * 1e3,
        speedup: 1.0,
        accuracy,
    }];

    for cascade in cascades {
        if cascade.stages.is_empty() {
            continue; // the baseline row already covers it
        }
        let (answers, stats) = nn_search_batch(spec, train, test, window, cascade)?;
        for (qi, (a, b)) in answers.iter().zip(&base_answers).enumerate() {
            if a.0 != b.0 || (a.1 - b.1).abs() > 1e-9 * b.1.abs().max(1.0) {
                return Err(Error::Degenerate(format!(
                    "cascade '{}' disagrees with the exact baseline on query {qi}: \
                     got ({}, {}), expected ({}, {})",
                    cascade.label(),
                    a.0,
                    a.1,
                    b.0,
                    b.1
                )));
            }
        }
        rows.push(NnBenchRow {
            cascade: cascade.label(),
            queries: stats.queries,
            candidates: stats.candidates,
            pruned: stats.pruned(),
            dp_calls: stats.exact_dp_calls,
            pruning_ratio: stats.pruning_ratio(),
            wall_ms: stats.wall_time.as_secs_f64() * 1e3,
            speedup: base_wall / stats.wall_time.as_secs_f64().max(1e-12),
            accuracy: classification_accuracy(train, test, &answers),
        });
    }
    Ok(rows)
}

fn classification_accuracy(
    train: &[TimeSeries],
    test: &[TimeSeries],
    answers: &[(usize, f64)],
) -> f64 {
    let mut labeled = 0usize;
    let mut correct = 0usize;
    for (q, (idx, _)) in test.iter().zip(answers) {
        if let (Some(truth), Some(pred)) = (q.label(), train[*idx].label()) {
            labeled += 1;
            if truth == pred {
                correct += 1;
            }
        }
    }
    if labeled == 0 {
        f64::NAN
    } else {
        correct as f64 / labeled as f64
    }
}
