//! Desk-scale verification substrate.
//!
//! The induced graph of a series pair is bipartite with self-loops: cross
//! edges inside the warping band carry matching costs, self-loops carry
//! deletion costs. Two facts are made executable here:
//!
//!   1. the minimum-weight edge cover of the graph lower-bounds the raw
//!      alignment cost, and
//!   2. any vertex weighting feasible for the dual of the cover LP sums to
//!      at most the cover weight.
//!
//! `verify_bound_chain` checks the whole chain `sum of duals <= cover weight
//! <= raw cost` for one pair; `verify_sweep` drives it over randomized pairs.
//! The solver reduces edge cover to minimum-weight matching over subsets of
//! the smaller side, which is exact and fast enough below ~24 vertices.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{bglb_dual_weights, BoundaryMode};
use crate::dp::elastic_distance;
use crate::error::{Error, Result};
use crate::measures::{MeasureKind, MeasureSpec};
use crate::series::{TimeSeries, Window};

/// Largest graph the exact cover solver accepts.
pub const COVER_SIZE_LIMIT: usize = 24;

/// Bipartite graph with self-loops and nonnegative weights.
#[derive(Debug, Clone)]
pub struct InducedGraph {
    pub n: usize,
    pub m: usize,
    pub radius: usize,
    /// (i, j, matching cost) for every pair with |i - j| <= radius.
    pub cross: Vec<(usize, usize, f64)>,
    /// Deletion cost of each element of X.
    pub self_u: Vec<f64>,
    /// Deletion cost of each element of Q.
    pub self_v: Vec<f64>,
}

/// One edge of a cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverEdge {
    Cross(usize, usize),
    SelfU(usize),
    SelfV(usize),
}

/// Build the induced graph of a pair under a measure.
pub fn build_graph(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
) -> Result<InducedGraph> {
    let (n, m) = (x.len(), q.len());
    let radius = window.resolve(n, m)?;
    let mut cross = Vec::new();
    for i in 0..n {
        let lo = i.saturating_sub(radius);
        if lo >= m {
            continue;
        }
        let hi = i.saturating_add(radius).min(m - 1);
        for j in lo..=hi {
            cross.push((i, j, spec.match_cost(x, i, q, j)));
        }
    }
    let self_u: Vec<f64> = (0..n).map(|i| spec.delete_cost(x, i, q, radius)).collect();
    let self_v: Vec<f64> = (0..m).map(|j| spec.delete_cost(q, j, x, radius)).collect();
    for w in cross
        .iter()
        .map(|&(_, _, w)| w)
        .chain(self_u.iter().copied())
        .chain(self_v.iter().copied())
    {
        if w < 0.0 {
            return Err(Error::InvalidParams(format!(
                "negative edge weight {w} in induced graph"
            )));
        }
    }
    Ok(InducedGraph {
        n,
        m,
        radius,
        cross,
        self_u,
        self_v,
    })
}

/// Exact minimum-weight edge cover.
///
/// Reduction: with `s(v)` the cheapest edge incident to each vertex, the
/// optimum equals `sum_v s(v)` plus the minimum over matchings of the summed
/// reduced costs `w(u,v) - s(u) - s(v)` (only negative ones can help). The
/// matching is solved by subset DP over the smaller side.
pub fn min_edge_cover(g: &InducedGraph) -> Result<(f64, Vec<CoverEdge>)> {
    let (n, m) = (g.n, g.m);
    if n + m > COVER_SIZE_LIMIT {
        return Err(Error::GraphTooLarge {
            vertices: n + m,
            limit: COVER_SIZE_LIMIT,
        });
    }

    // cheapest incident edge per vertex
    let mut s_u: Vec<(f64, CoverEdge)> = g
        .self_u
        .iter()
        .enumerate()
        .map(|(i, &w)| (w, CoverEdge::SelfU(i)))
        .collect();
    let mut s_v: Vec<(f64, CoverEdge)> = g
        .self_v
        .iter()
        .enumerate()
        .map(|(j, &w)| (w, CoverEdge::SelfV(j)))
        .collect();
    for &(i, j, w) in &g.cross {
        if w < s_u[i].0 {
            s_u[i] = (w, CoverEdge::Cross(i, j));
        }
        if w < s_v[j].0 {
            s_v[j] = (w, CoverEdge::Cross(i, j));
        }
    }

    // matching over reduced costs; small side gets the bitmask
    let u_is_small = n <= m;
    let small = n.min(m);
    let big = n.max(m);
    // adj[big vertex] -> (small vertex, reduced cost), negative only
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); big];
    for &(i, j, w) in &g.cross {
        let rc = w - s_u[i].0 - s_v[j].0;
        if rc < 0.0 {
            let (b, s) = if u_is_small { (j, i) } else { (i, j) };
            adj[b].push((s, rc));
        }
    }

    // dp[k][mask]: cheapest reduced-cost sum matching big vertices < k into a
    // subset of `mask`; unused mask bits are free, so the full mask is optimal.
    let masks = 1usize << small;
    let mut layers: Vec<Vec<f64>> = Vec::with_capacity(big + 1);
    layers.push(vec![0.0; masks]);
    for edges in &adj {
        let prev = layers.last().unwrap();
        let mut next = prev.clone();
        if !edges.is_empty() {
            for (mask, slot) in next.iter_mut().enumerate() {
                for &(sj, rc) in edges {
                    let bit = 1usize << sj;
                    if mask & bit != 0 {
                        let cand = prev[mask ^ bit] + rc;
                        if cand < *slot {
                            *slot = cand;
                        }
                    }
                }
            }
        }
        layers.push(next);
    }

    // walk the layers back, matching a big vertex whenever skipping it does
    // not reproduce the layer value
    let mut matched_small = vec![false; small];
    let mut matched_big = vec![false; big];
    let mut edges = Vec::new();
    let mut mask = masks - 1;
    for k in (0..big).rev() {
        let cur = layers[k + 1][mask];
        if cur == layers[k][mask] {
            continue;
        }
        let (sj, _) = adj[k]
            .iter()
            .find(|&&(sj, rc)| {
                let bit = 1usize << sj;
                mask & bit != 0 && layers[k][mask ^ bit] + rc == cur
            })
            .expect("dp layer value must be reachable");
        matched_big[k] = true;
        matched_small[*sj] = true;
        let (i, j) = if u_is_small { (*sj, k) } else { (k, *sj) };
        edges.push(CoverEdge::Cross(i, j));
        mask ^= 1usize << sj;
    }

    for i in 0..n {
        let covered = if u_is_small {
            matched_small[i]
        } else {
            matched_big[i]
        };
        if !covered {
            edges.push(s_u[i].1);
        }
    }
    for j in 0..m {
        let covered = if u_is_small {
            matched_big[j]
        } else {
            matched_small[j]
        };
        if !covered {
            edges.push(s_v[j].1);
        }
    }
    edges.sort_by_key(edge_key);
    edges.dedup();
    let weight = edges.iter().map(|e| edge_weight(g, e)).sum::<f64>();
    Ok((weight, edges))
}

fn edge_key(e: &CoverEdge) -> (u8, usize, usize) {
    match *e {
        CoverEdge::Cross(i, j) => (0, i, j),
        CoverEdge::SelfU(i) => (1, i, 0),
        CoverEdge::SelfV(j) => (2, j, 0),
    }
}

fn edge_weight(g: &InducedGraph, e: &CoverEdge) -> f64 {
    match *e {
        CoverEdge::Cross(i, j) => g
            .cross
            .iter()
            .find(|&&(a, b, _)| a == i && b == j)
            .map(|&(_, _, w)| w)
            .unwrap(),
        CoverEdge::SelfU(i) => g.self_u[i],
        CoverEdge::SelfV(j) => g.self_v[j],
    }
}

/// Whether an edge set covers every vertex of the graph.
pub fn is_cover(g: &InducedGraph, edges: &[CoverEdge]) -> bool {
    let mut cu = vec![false; g.n];
    let mut cv = vec![false; g.m];
    for e in edges {
        match *e {
            CoverEdge::Cross(i, j) => {
                cu[i] = true;
                cv[j] = true;
            }
            CoverEdge::SelfU(i) => cu[i] = true,
            CoverEdge::SelfV(j) => cv[j] = true,
        }
    }
    cu.into_iter().all(|c| c) && cv.into_iter().all(|c| c)
}

fn leq(a: f64, b: f64) -> bool {
    a <= b + 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Check the dual LP constraints: every weight within `[0, self-loop]` and
/// every cross edge at least the sum of its endpoints' weights, all within
/// tolerance 1e-9.
pub fn check_dual_feasible(g: &InducedGraph, d_u: &[f64], d_v: &[f64]) -> Result<bool> {
    if d_u.len() != g.n {
        return Err(Error::WeightLengthMismatch {
            got: d_u.len(),
            expected: g.n,
        });
    }
    if d_v.len() != g.m {
        return Err(Error::WeightLengthMismatch {
            got: d_v.len(),
            expected: g.m,
        });
    }
    for (d, w) in d_u.iter().zip(&g.self_u).chain(d_v.iter().zip(&g.self_v)) {
        if *d < -1e-9 || !leq(*d, *w) {
            return Ok(false);
        }
    }
    for &(i, j, w) in &g.cross {
        if !leq(d_u[i] + d_v[j], w) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One pair's theorem chain, reported in the cover-cost domain.
#[derive(Debug, Clone)]
pub struct ChainReport {
    /// Larger of the two directions' dual weight sums (boundary-free mode).
    pub dual_sum: f64,
    /// Exact minimum edge cover weight.
    pub cover_weight: f64,
    /// Exact raw cost expressed in the cover domain (LCSS converts its
    /// matched-pair count s to the cost n + m - 2s of the optimal alignment).
    pub rac_cover: f64,
    /// Exact distance, for the transform-domain check.
    pub distance: f64,
    /// Dual feasibility of both directions' weights.
    pub dual_feasible: bool,
    /// First violated link, if any.
    pub violation: Option<String>,
}

impl ChainReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Verify `sum of duals <= cover weight <= raw cost` plus dual feasibility
/// for one pair, using the boundary-free weight construction so that every
/// vertex weight is a plain dual variable.
pub fn verify_bound_chain(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
) -> Result<ChainReport> {
    let g = build_graph(spec, x, q, window)?;
    let w = bglb_dual_weights(spec, x, q, window, BoundaryMode::None)?;
    let feas1 = check_dual_feasible(&g, &w.base_x, &w.aug_q)?;
    let feas2 = check_dual_feasible(&g, &w.aug_x, &w.base_q)?;
    let sum1: f64 = w.base_x.iter().chain(&w.aug_q).sum();
    let sum2: f64 = w.base_q.iter().chain(&w.aug_x).sum();
    let dual_sum = sum1.max(sum2);
    let (cover_weight, cover) = min_edge_cover(&g)?;
    debug_assert!(is_cover(&g, &cover));
    let exact = elastic_distance(spec, x, q, window)?;
    let rac_cover = if spec.kind() == MeasureKind::Lcss {
        (x.len() + q.len()) as f64 - 2.0 * exact.raw
    } else {
        exact.raw
    };

    let violation = if !(feas1 && feas2) {
        Some("dual feasibility".into())
    } else if !leq(dual_sum, cover_weight) {
        Some(format!("dual sum {dual_sum} > cover weight {cover_weight}"))
    } else if !leq(cover_weight, rac_cover) {
        Some(format!("cover weight {cover_weight} > raw cost {rac_cover}"))
    } else if !leq(
        spec.lb_trans(cover_weight, x.len(), q.len()),
        exact.distance,
    ) {
        Some("transformed cover exceeds exact distance".into())
    } else {
        None
    };
    Ok(ChainReport {
        dual_sum,
        cover_weight,
        rac_cover,
        distance: exact.distance,
        dual_feasible: feas1 && feas2,
        violation,
    })
}

/// Configuration of the randomized chain sweep.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Pairs per measure.
    pub trials: usize,
    pub seed: u64,
    /// Cap on n + m (cover solver is exponential in the smaller side).
    pub max_total_len: usize,
    pub measures: Vec<MeasureKind>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 42,
            max_total_len: 20,
            measures: MeasureKind::ALL.to_vec(),
        }
    }
}

/// Per-measure sweep outcome.
#[derive(Debug, Clone)]
pub struct VerifyRow {
    pub measure: MeasureKind,
    pub trials: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

/// Run the theorem chain over randomized pairs for each measure.
/// Returns one row per measure; zero violations everywhere means the sweep
/// passed.
pub fn verify_sweep(config: &VerifyConfig) -> Result<Vec<VerifyRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    for &kind in &config.measures {
        let spec = MeasureSpec::with_defaults(kind);
        let mut violations = 0usize;
        let mut first = None;
        for t in 0..config.trials {
            let (x, q, radius) = random_pair(&mut rng, config.max_total_len, t);
            let report = verify_bound_chain(&spec, &x, &q, Window::Absolute(radius))?;
            if !report.ok() {
                violations += 1;
                if first.is_none() {
                    first = report.violation.clone();
                }
            }
        }
        rows.push(VerifyRow {
            measure: kind,
            trials: config.trials,
            violations,
            first_violation: first,
        });
    }
    Ok(rows)
}

/// Random pair with n + m <= cap, feasible radius cycling over {0, 1, 2, full}.
/// Values mix a coarse grid (exercising tolerance ties) with continuous noise.
pub fn random_pair(rng: &mut ChaCha8Rng, cap: usize, trial: usize) -> (TimeSeries, TimeSeries, usize) {
    let max_len = (cap / 2).max(1);
    let n = rng.gen_range(1..=max_len);
    let (m, radius) = match trial % 4 {
        0 => (n, 0),
        1 => {
            let m = rng.gen_range(n.saturating_sub(1).max(1)..=(n + 1).min(max_len));
            (m, 1)
        }
        2 => {
            let m = rng.gen_range(n.saturating_sub(2).max(1)..=(n + 2).min(max_len));
            (m, 2)
        }
        _ => {
            let m = rng.gen_range(1..=max_len);
            (m, n.max(m))
        }
    };
    let mut gen = |len: usize| {
        let grid = rng.gen_bool(0.5);
        let vals: Vec<f64> = (0..len)
            .map(|_| {
                if grid {
                    rng.gen_range(-10..=10) as f64 * 0.1
                } else {
                    rng.gen_range(-2.0..2.0)
                }
            })
            .collect();
        TimeSeries::new(vals).unwrap()
    };
    (gen(n), gen(m), radius)
}
