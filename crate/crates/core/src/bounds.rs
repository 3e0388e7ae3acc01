//! Lower bounds on elastic distances.
//!
//! The central construction assigns each series element a nonnegative vertex
//! weight on the induced bipartite graph such that the weights are feasible
//! for the dual of the minimum-weight edge cover LP: every cross edge (i, j)
//! in the warping band satisfies `d_u[i] + d_v[j] <= M(x_i, q_j)` and every
//! weight is capped by its deletion cost. The weight sum is then a certified
//! lower bound on the raw alignment cost.
//!
//! Three terms are accumulated per direction:
//!   * boundary: mandatory corner payments of the banded DP,
//!   * base: clipped matching cost of each out-of-envelope element,
//!   * augmentation: the opposing side's residual demand after discounting
//!     the windowed maximum of the base weights (the weight envelope).
//!
//! `bglb` computes both argument orders in three interleaved passes with
//! early-stopping checkpoints after every accumulation step; `glb` keeps only
//! boundary + base; `dbglb` produces the same value as `bglb` for the
//! bounded-cost measures using a streaming deque over the base weights
//! instead of materialized weight envelopes.

use std::collections::VecDeque;

use crate::envelope::{build_envelope, windowed_max_range, Envelope};
use crate::error::{Error, Result};
use crate::measures::{MeasureKind, MeasureSpec};
use crate::series::{TimeSeries, Window};

/// Available lower-bound algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// First/last element gap; constant time; DTW only.
    KimFL,
    /// First/last plus global min/max features; DTW only.
    Kim,
    /// Envelope clip distance; DTW only.
    Keogh,
    /// Boundary + base assignment.
    Glb,
    /// Boundary + base + augmentation assignment.
    Bglb,
    /// `Bglb` computed by the streaming sweep (bounded-cost measures).
    Dbglb,
    /// Always 0; disables pruning.
    None,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::KimFL => "kimfl",
            BoundKind::Kim => "kim",
            BoundKind::Keogh => "keogh",
            BoundKind::Glb => "glb",
            BoundKind::Bglb => "bglb",
            BoundKind::Dbglb => "dbglb",
            BoundKind::None => "none",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kimfl" => Ok(BoundKind::KimFL),
            "kim" => Ok(BoundKind::Kim),
            "keogh" => Ok(BoundKind::Keogh),
            "glb" => Ok(BoundKind::Glb),
            "bglb" => Ok(BoundKind::Bglb),
            "dbglb" => Ok(BoundKind::Dbglb),
            "none" => Ok(BoundKind::None),
            other => Err(Error::InvalidParams(format!("unknown bound '{other}'"))),
        }
    }

    /// Whether this bound is defined for the measure.
    pub fn supports(&self, kind: MeasureKind) -> bool {
        match self {
            BoundKind::KimFL | BoundKind::Kim | BoundKind::Keogh => kind == MeasureKind::Dtw,
            BoundKind::Dbglb => matches!(
                kind,
                MeasureKind::Twed | MeasureKind::Lcss | MeasureKind::Edr | MeasureKind::Swale
            ),
            _ => true,
        }
    }
}

/// Handling of the first/last elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    /// Corner payments charged separately; base/augmentation restricted to
    /// interior indices.
    Glb,
    /// No boundary term; base/augmentation run over the full index range.
    None,
}

/// A lower-bound value with its raw-domain component breakdown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    /// Distance-domain bound; `+inf` sentinel when early-stopped.
    pub value: f64,
    /// Boundary term (raw domain).
    pub bdy: f64,
    /// Base term of the winning direction (raw domain).
    pub base: f64,
    /// Augmentation term of the winning direction (raw domain).
    pub aug: f64,
    /// (base, aug) of the losing direction, when both were computed.
    pub alt: Option<(f64, f64)>,
    /// True when a partial sum already exceeded the cutoff.
    pub early_stopped: bool,
}

impl BoundResult {
    fn stopped(bdy: f64, base: f64, aug: f64) -> Self {
        BoundResult {
            value: f64::INFINITY,
            bdy,
            base,
            aug,
            alt: None,
            early_stopped: true,
        }
    }

    fn zero() -> Self {
        BoundResult {
            value: 0.0,
            bdy: 0.0,
            base: 0.0,
            aug: 0.0,
            alt: None,
            early_stopped: false,
        }
    }
}

/// Vertex weights produced by one `bglb` evaluation, both directions.
/// Direction 1 puts base weights on X and augmentation weights on Q;
/// direction 2 is the swap.
#[derive(Debug, Clone)]
pub struct DualWeights {
    pub base_x: Vec<f64>,
    pub aug_q: Vec<f64>,
    pub base_q: Vec<f64>,
    pub aug_x: Vec<f64>,
}

/// Base assignment weight: cheapest way to cover an out-of-envelope element,
/// either matching it against its clipped envelope bound or deleting it.
pub fn delta(spec: &MeasureSpec, x: f64, b: f64, del_cost: f64) -> f64 {
    spec.match_env(x, b).min(del_cost)
}

/// Augmentation assignment weight: the matching demand left after
/// discounting the largest base weight reachable within the window.
pub fn gamma(spec: &MeasureSpec, q: f64, b: f64, del_cost: f64, u_delta: f64) -> f64 {
    (spec.match_env(q, b) - u_delta).max(0.0).min(del_cost)
}

/// Deletion cost as used inside the bound passes. For DTW the clipped
/// matching cost of an out-of-envelope element never exceeds the windowed
/// deletion minimum, so the O(radius) scan is skipped.
#[inline]
fn pass_del(spec: &MeasureSpec, s: &TimeSeries, i: usize, other: &TimeSeries, radius: usize) -> f64 {
    if spec.kind() == MeasureKind::Dtw {
        f64::INFINITY
    } else {
        spec.delete_cost(s, i, other, radius)
    }
}

/// Index range carrying vertex weights under the given mode.
fn weight_range(mode: BoundaryMode, len: usize) -> std::ops::Range<usize> {
    match mode {
        BoundaryMode::None => 0..len,
        BoundaryMode::Glb => 1..len.saturating_sub(1),
    }
}

fn boundary_term(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    radius: usize,
    mode: BoundaryMode,
) -> f64 {
    match mode {
        BoundaryMode::None => 0.0,
        BoundaryMode::Glb => spec.first_corner(x, q, radius) + spec.last_corner(x, q, radius),
    }
}

/// Clip a value against an envelope entry; `None` when inside.
#[inline]
fn clip_outside(v: f64, upper: f64, lower: f64) -> Option<f64> {
    if v > upper {
        Some(upper)
    } else if v < lower {
        Some(lower)
    } else {
        None
    }
}

/// Boundary + base + augmentation bound, symmetrized over both argument
/// orders in three passes:
///   1. base weights of X against Q's envelopes,
///   2. augmentation of Q (discounted by the pass-1 weight envelope) fused
///      with the base weights of Q against X's envelopes,
///   3. augmentation of X discounted by the pass-2 weight envelope.
/// Each accumulation is followed by an early-stopping check against the
/// cutoff; `+inf` disables them. The returned value never exceeds the exact
/// elastic distance.
pub fn bglb(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
    cutoff: f64,
    mode: BoundaryMode,
) -> Result<BoundResult> {
    Ok(bglb_passes(spec, x, q, window, cutoff, mode, false)?.0)
}

/// The vertex weights underlying `bglb` (no early stopping), for
/// dual-feasibility verification.
pub fn bglb_dual_weights(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
    mode: BoundaryMode,
) -> Result<DualWeights> {
    let (_, w) = bglb_passes(spec, x, q, window, f64::INFINITY, mode, false)?;
    Ok(w)
}

fn bglb_passes(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
    cutoff: f64,
    mode: BoundaryMode,
    streaming: bool,
) -> Result<(BoundResult, DualWeights)> {
    let (n, m) = (x.len(), q.len());
    let radius = window.resolve(n, m)?;
    let rc = spec.lb_cutoff_raw(cutoff, n, m);
    let bdy = boundary_term(spec, x, q, radius, mode);

    let env_q = build_envelope(q.values(), radius)?;
    let env_x = build_envelope(x.values(), radius)?;
    let xr = weight_range(mode, n);
    let qr = weight_range(mode, m);

    let mut base_x = vec![0.0; n];
    let mut aug_q = vec![0.0; m];
    let mut base_q = vec![0.0; m];
    let mut aug_x = vec![0.0; n];

    macro_rules! stop {
        ($base:expr, $aug:expr) => {
            return Ok((
                BoundResult::stopped(bdy, $base, $aug),
                DualWeights {
                    base_x,
                    aug_q,
                    base_q,
                    aug_x,
                },
            ))
        };
    }

    // pass 1: base weights of X vs Q's envelopes
    let mut base1 = 0.0;
    for i in xr.clone() {
        let (u, l) = env_q.clamped(i);
        if let Some(b) = clip_outside(x[i], u, l) {
            let w = delta(spec, x[i], b, pass_del(spec, x, i, q, radius));
            base_x[i] = w;
            base1 += w;
            if bdy + base1 > rc {
                stop!(base1, 0.0);
            }
        }
    }

    // pass 2: augmentation of Q against the pass-1 weight envelope, fused
    // with the base weights of Q vs X's envelopes
    let mut ud1 = WeightMax::new(&base_x, &xr, radius, streaming, m);
    let mut aug1 = 0.0;
    let mut base2 = 0.0;
    for j in qr.clone() {
        let (u, l) = env_x.clamped(j);
        if let Some(b) = clip_outside(q[j], u, l) {
            let del = pass_del(spec, q, j, x, radius);
            let d = delta(spec, q[j], b, del);
            let g = gamma(spec, q[j], b, del, ud1.max_at(j));
            base_q[j] = d;
            aug_q[j] = g;
            base2 += d;
            aug1 += g;
            if bdy + base1 + aug1 > rc || bdy + base2 > rc {
                drop(ud1);
                stop!(base1.max(base2), aug1);
            }
        }
    }
    drop(ud1);

    // pass 3: augmentation of X against the pass-2 weight envelope
    let mut ud2 = WeightMax::new(&base_q, &qr, radius, streaming, n);
    let mut aug2 = 0.0;
    for i in xr.clone() {
        let (u, l) = env_q.clamped(i);
        if let Some(b) = clip_outside(x[i], u, l) {
            let g = gamma(
                spec,
                x[i],
                b,
                pass_del(spec, x, i, q, radius),
                ud2.max_at(i),
            );
            aug_x[i] = g;
            aug2 += g;
            if bdy + base2 + aug2 > rc {
                drop(ud2);
                stop!(base2, aug2);
            }
        }
    }
    drop(ud2);

    let (base, aug, alt) = if base1 + aug1 >= base2 + aug2 {
        (base1, aug1, (base2, aug2))
    } else {
        (base2, aug2, (base1, aug1))
    };
    let result = BoundResult {
        value: spec.lb_trans(bdy + base + aug, n, m),
        bdy,
        base,
        aug,
        alt: Some(alt),
        early_stopped: false,
    };
    Ok((
        result,
        DualWeights {
            base_x,
            aug_q,
            base_q,
            aug_x,
        },
    ))
}

/// Windowed maximum over a weight slice, either precomputed (deque envelope
/// over the whole range) or streamed one query position at a time with a
/// monotonic deque advanced by two pointers. Query positions must ascend in
/// streaming mode. Out-of-range window ends clamp to the nearest weight.
enum WeightMax<'a> {
    Table(Vec<f64>),
    Stream {
        src: &'a [f64],
        lo: usize,
        hi: usize,
        radius: usize,
        deque: VecDeque<usize>,
        next: usize,
    },
    Empty,
}

impl<'a> WeightMax<'a> {
    fn new(
        src: &'a [f64],
        range: &std::ops::Range<usize>,
        radius: usize,
        streaming: bool,
        out_len: usize,
    ) -> Self {
        if range.is_empty() {
            return WeightMax::Empty;
        }
        let (lo, hi) = (range.start, range.end - 1);
        if streaming {
            WeightMax::Stream {
                src,
                lo,
                hi,
                radius,
                deque: VecDeque::new(),
                next: lo,
            }
        } else {
            WeightMax::Table(windowed_max_range(src, radius, out_len, lo, hi))
        }
    }

    fn max_at(&mut self, j: usize) -> f64 {
        match self {
            WeightMax::Empty => 0.0,
            WeightMax::Table(t) => t[j],
            WeightMax::Stream {
                src,
                lo,
                hi,
                radius,
                deque,
                next,
            } => {
                let add_to = j.saturating_add(*radius).clamp(*lo, *hi);
                while *next <= add_to {
                    while let Some(&back) = deque.back() {
                        if src[*next] >= src[back] {
                            deque.pop_back();
                        } else {
                            break;
                        }
                    }
                    deque.push_back(*next);
                    *next += 1;
                }
                let drop_below = j.saturating_sub(*radius).clamp(*lo, *hi);
                while let Some(&front) = deque.front() {
                    if front < drop_below {
                        deque.pop_front();
                    } else {
                        break;
                    }
                }
                src[deque.front().copied().unwrap()]
            }
        }
    }
}

/// Boundary + base bound (no augmentation), symmetrized over both argument
/// orders. Early-stops as soon as either direction's partial sum exceeds the
/// cutoff, since the maximum over directions can only be larger.
pub fn glb(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
    cutoff: f64,
    mode: BoundaryMode,
) -> Result<BoundResult> {
    let (n, m) = (x.len(), q.len());
    let radius = window.resolve(n, m)?;
    let rc = spec.lb_cutoff_raw(cutoff, n, m);
    let bdy = boundary_term(spec, x, q, radius, mode);
    let env_q = build_envelope(q.values(), radius)?;
    let env_x = build_envelope(x.values(), radius)?;

    let mut sums = [0.0_f64; 2];
    for (dir, (s, env, other)) in [(x, &env_q, q), (q, &env_x, x)].into_iter().enumerate() {
        let mut acc = 0.0;
        for i in weight_range(mode, s.len()) {
            let (u, l) = env.clamped(i);
            if let Some(b) = clip_outside(s[i], u, l) {
                acc += delta(spec, s[i], b, pass_del(spec, s, i, other, radius));
                if bdy + acc > rc {
                    return Ok(BoundResult::stopped(bdy, acc, 0.0));
                }
            }
        }
        sums[dir] = acc;
    }
    let (base, alt) = if sums[0] >= sums[1] {
        (sums[0], sums[1])
    } else {
        (sums[1], sums[0])
    };
    Ok(BoundResult {
        value: spec.lb_trans(bdy + base, n, m),
        bdy,
        base,
        aug: 0.0,
        alt: Some((alt, 0.0)),
        early_stopped: false,
    })
}

/// Streaming-sweep variant of `bglb` for the bounded-cost measures
/// (TWED, LCSS, EDR, SWALE). The augmentation passes consume the base
/// weights left to right through a two-pointer deque window instead of
/// materializing weight envelopes; the bound value is identical to `bglb`.
pub fn dbglb(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
    cutoff: f64,
    mode: BoundaryMode,
) -> Result<BoundResult> {
    if !BoundKind::Dbglb.supports(spec.kind()) {
        return Err(Error::UnsupportedBound {
            bound: "dbglb".into(),
            measure: spec.kind().name().into(),
        });
    }
    Ok(bglb_passes(spec, x, q, window, cutoff, mode, true)?.0)
}

/// max(|x_1 - q_1|, |x_n - q_m|); constant time; valid for DTW.
pub fn lb_kim_fl(x: &TimeSeries, q: &TimeSeries) -> f64 {
    let a = (x[0] - q[0]).abs();
    let b = (x[x.len() - 1] - q[q.len() - 1]).abs();
    a.max(b)
}

/// First/last/min/max feature bound; valid for DTW.
pub fn lb_kim(x: &TimeSeries, q: &TimeSeries) -> f64 {
    let fold = |s: &TimeSeries, f: fn(f64, f64) -> f64, init: f64| {
        s.values().iter().copied().fold(init, f)
    };
    let dmax = (fold(x, f64::max, f64::NEG_INFINITY) - fold(q, f64::max, f64::NEG_INFINITY)).abs();
    let dmin = (fold(x, f64::min, f64::INFINITY) - fold(q, f64::min, f64::INFINITY)).abs();
    lb_kim_fl(x, q).max(dmax).max(dmin)
}

/// Envelope clip bound for DTW: sqrt of the summed squared distances from
/// each element of `x` to the other series' envelope band.
pub fn lb_keogh(x: &TimeSeries, env_q: &Envelope) -> f64 {
    lb_keogh_sq(x, env_q, f64::INFINITY).map_or(f64::INFINITY, f64::sqrt)
}

/// Squared-domain accumulation with early exit; `None` when the partial sum
/// already exceeds `cutoff_sq`.
fn lb_keogh_sq(x: &TimeSeries, env_q: &Envelope, cutoff_sq: f64) -> Option<f64> {
    let mut acc = 0.0;
    for i in 0..x.len() {
        let (u, l) = env_q.clamped(i);
        if let Some(b) = clip_outside(x[i], u, l) {
            let d = x[i] - b;
            acc += d * d;
            if acc > cutoff_sq {
                return None;
            }
        }
    }
    Some(acc)
}

/// Uniform dispatch over the bound kinds. `BoundKind::None` returns 0, which
/// is admissible for every measure. DTW-only and bounded-cost-only kinds
/// reject incompatible measures.
pub fn lower_bound(
    kind: BoundKind,
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
    cutoff: f64,
) -> Result<BoundResult> {
    if !kind.supports(spec.kind()) {
        return Err(Error::UnsupportedBound {
            bound: kind.name().into(),
            measure: spec.kind().name().into(),
        });
    }
    match kind {
        BoundKind::None => Ok(BoundResult::zero()),
        BoundKind::KimFL => Ok(scalar_result(lb_kim_fl(x, q), cutoff)),
        BoundKind::Kim => Ok(scalar_result(lb_kim(x, q), cutoff)),
        BoundKind::Keogh => {
            let radius = window.resolve(x.len(), q.len())?;
            let cut_sq = if cutoff == f64::INFINITY {
                f64::INFINITY
            } else {
                cutoff.max(0.0).powi(2)
            };
            // symmetrized: max over both argument orders
            let env_q = build_envelope(q.values(), radius)?;
            let a = lb_keogh_sq(x, &env_q, cut_sq);
            let env_x = build_envelope(x.values(), radius)?;
            let b = lb_keogh_sq(q, &env_x, cut_sq);
            match (a, b) {
                (Some(a), Some(b)) => {
                    let raw = a.max(b);
                    Ok(BoundResult {
                        value: raw.sqrt(),
                        bdy: 0.0,
                        base: raw,
                        aug: 0.0,
                        alt: Some((a.min(b), 0.0)),
                        early_stopped: false,
                    })
                }
                _ => Ok(BoundResult::stopped(0.0, a.or(b).unwrap_or(0.0), 0.0)),
            }
        }
        BoundKind::Glb => glb(spec, x, q, window, cutoff, BoundaryMode::Glb),
        BoundKind::Bglb => bglb(spec, x, q, window, cutoff, BoundaryMode::Glb),
        BoundKind::Dbglb => dbglb(spec, x, q, window, cutoff, BoundaryMode::Glb),
    }
}

fn scalar_result(value: f64, cutoff: f64) -> BoundResult {
    if value > cutoff {
        return BoundResult::stopped(0.0, value * value, 0.0);
    }
    BoundResult {
        value,
        bdy: 0.0,
        base: value * value,
        aug: 0.0,
        alt: None,
        early_stopped: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureParams;

    fn ts(vals: &[f64]) -> TimeSeries {
        TimeSeries::new(vals.to_vec()).unwrap()
    }

    fn erp_g1() -> MeasureSpec {
        MeasureSpec::new(
            MeasureKind::Erp,
            MeasureParams {
                g: 1.0,
                ..Default::default()
            },
        )
        .unwrap()
    }

    fn ref_pair() -> (TimeSeries, TimeSeries) {
        (
            ts(&[5.0, 2.0, 3.0, 7.0, 4.0]),
            ts(&[2.0, 3.0, 4.0, 5.0, 10.0]),
        )
    }

    #[test]
    fn delta_reference_values() {
        let spec = erp_g1();
        assert_eq!(delta(&spec, 5.0, 3.0, 16.0), 4.0);
        assert_eq!(delta(&spec, 4.0, 5.0, 9.0), 1.0);
    }

    #[test]
    fn gamma_reference_values() {
        let spec = erp_g1();
        assert_eq!(gamma(&spec, 10.0, 7.0, 81.0, 1.0), 8.0);
        assert_eq!(gamma(&spec, 2.0, 4.0, 1.0, 0.0), 1.0);
        // weight envelope at least the matching demand: clamps to zero
        assert_eq!(gamma(&spec, 10.0, 7.0, 81.0, 9.0), 0.0);
        assert_eq!(gamma(&spec, 10.0, 7.0, 81.0, 50.0), 0.0);
    }

    #[test]
    fn bglb_reference_pair_components() {
        let (x, q) = ref_pair();
        let r = bglb(
            &erp_g1(),
            &x,
            &q,
            Window::Absolute(1),
            f64::INFINITY,
            BoundaryMode::None,
        )
        .unwrap();
        assert!(!r.early_stopped);
        assert_eq!(r.value, 13.0);
        assert_eq!(r.bdy, 0.0);
        // direction 1: base 5, aug 8; direction 2: base 9, aug 4
        let (b, a) = (r.base, r.aug);
        let (b2, a2) = r.alt.unwrap();
        let mut dirs = [(b, a), (b2, a2)];
        dirs.sort_by(|p, r| p.0.partial_cmp(&r.0).unwrap());
        assert_eq!(dirs[0], (5.0, 8.0));
        assert_eq!(dirs[1], (9.0, 4.0));
    }

    #[test]
    fn glb_reference_pair_value() {
        let (x, q) = ref_pair();
        let r = glb(
            &erp_g1(),
            &x,
            &q,
            Window::Absolute(1),
            f64::INFINITY,
            BoundaryMode::None,
        )
        .unwrap();
        assert_eq!(r.value, 9.0);
        assert_eq!(r.base, 9.0);
        assert_eq!(r.alt, Some((5.0, 0.0)));
    }

    #[test]
    fn dual_weights_of_reference_pair() {
        let (x, q) = ref_pair();
        let w = bglb_dual_weights(&erp_g1(), &x, &q, Window::Absolute(1), BoundaryMode::None)
            .unwrap();
        assert_eq!(w.base_x, vec![4.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(w.aug_q, vec![0.0, 0.0, 0.0, 0.0, 8.0]);
        assert_eq!(w.base_q, vec![0.0, 0.0, 0.0, 0.0, 9.0]);
        assert_eq!(w.aug_x, vec![4.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn identical_series_have_zero_bound() {
        for kind in [
            MeasureKind::Dtw,
            MeasureKind::Erp,
            MeasureKind::Msm,
            MeasureKind::Edr,
            MeasureKind::Lcss,
        ] {
            let spec = MeasureSpec::with_defaults(kind);
            let x = ts(&[0.3, -1.2, 0.8, 2.0]);
            for mode in [BoundaryMode::Glb, BoundaryMode::None] {
                let r = bglb(&spec, &x, &x, Window::Absolute(1), f64::INFINITY, mode).unwrap();
                assert_eq!(r.value, 0.0, "{kind:?} {mode:?}");
                assert_eq!((r.base, r.aug), (0.0, 0.0));
            }
        }
    }

    #[test]
    fn dbglb_matches_bglb_value() {
        let spec = MeasureSpec::with_defaults(MeasureKind::Edr);
        let x = ts(&[0.9, -0.4, 0.3, 1.8, -2.0, 0.1]);
        let q = ts(&[-0.2, 0.25, 1.1, -0.8, 0.0]);
        for mode in [BoundaryMode::Glb, BoundaryMode::None] {
            let a = bglb(&spec, &x, &q, Window::Absolute(2), f64::INFINITY, mode).unwrap();
            let b = dbglb(&spec, &x, &q, Window::Absolute(2), f64::INFINITY, mode).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn dbglb_rejects_unsupported_measures() {
        let spec = MeasureSpec::with_defaults(MeasureKind::Dtw);
        let x = ts(&[0.0, 1.0]);
        assert!(dbglb(&spec, &x, &x, Window::FULL, f64::INFINITY, BoundaryMode::Glb).is_err());
    }

    #[test]
    fn kim_family() {
        let x = ts(&[0.0, 5.0]);
        let q = ts(&[6.0, 2.0]);
        assert_eq!(lb_kim_fl(&x, &q), 6.0);
        assert_eq!(lb_kim_fl(&x, &x), 0.0);
        assert!(lb_kim(&x, &q) >= lb_kim_fl(&x, &q));
    }

    #[test]
    fn keogh_on_constant_other_series() {
        let x = ts(&[1.0, 4.0, 2.0]);
        let q = ts(&[3.0, 3.0, 3.0]);
        let env = build_envelope(q.values(), 10).unwrap();
        // band degenerates to [3, 3]: clip distances 2, 1, 1
        let expected = (4.0_f64 + 1.0 + 1.0).sqrt();
        assert!((lb_keogh(&x, &env) - expected).abs() < 1e-12);
        let env_self = build_envelope(x.values(), 2).unwrap();
        assert_eq!(lb_keogh(&x, &env_self), 0.0);
    }

    #[test]
    fn dispatch_reference_values_and_compatibility() {
        let (x, q) = ref_pair();
        let spec = erp_g1();
        let none = lower_bound(BoundKind::None, &spec, &x, &q, Window::Absolute(1), f64::INFINITY)
            .unwrap();
        assert_eq!(none.value, 0.0);
        assert!(lower_bound(
            BoundKind::Keogh,
            &spec,
            &x,
            &q,
            Window::Absolute(1),
            f64::INFINITY
        )
        .is_err());
        assert!(lower_bound(
            BoundKind::Dbglb,
            &spec,
            &x,
            &q,
            Window::Absolute(1),
            f64::INFINITY
        )
        .is_err());
    }

    #[test]
    fn early_stop_returns_infinity_sentinel() {
        let (x, q) = ref_pair();
        let r = bglb(
            &erp_g1(),
            &x,
            &q,
            Window::Absolute(1),
            0.5,
            BoundaryMode::None,
        )
        .unwrap();
        assert!(r.early_stopped);
        assert_eq!(r.value, f64::INFINITY);
    }
}
