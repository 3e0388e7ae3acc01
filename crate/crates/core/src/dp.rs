//! Exact elastic distances via banded dynamic programming.
//!
//! All seven measures share one recurrence shape: a cost matrix over the two
//! series, restricted to the Sakoe-Chiba band `|i - j| <= radius`, with
//! per-measure diagonal (match), vertical (consume x_i), and horizontal
//! (consume q_j) step costs plus a measure-specific boundary.
//!
//! DTW, MSM, and TWED anchor every path at cell (1,1); the edit-style
//! measures (ERP, EDR, SWALE) start from a virtual zero row/column whose
//! entries accumulate deletion costs, matching their original definitions.
//! LCSS maximizes matched pairs instead of minimizing cost and is handled by
//! a dedicated routine.
//!
//! Storage is two rolling rows; the full matrix is never materialized.

use crate::error::Result;
use crate::measures::{MeasureKind, MeasureSpec};
use crate::series::{TimeSeries, Window};

/// Outcome of one exact distance computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DPResult {
    /// Raw accumulated value at (n, m): cost for the distance-accumulating
    /// measures, matched-pair count for LCSS. `+inf` when abandoned.
    pub raw: f64,
    /// Final distance (post-transform). `+inf` when abandoned.
    pub distance: f64,
    /// True when early abandoning proved the distance exceeds the cutoff.
    pub abandoned: bool,
}

/// Exact elastic distance restricted to the band of the given window.
pub fn elastic_distance(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
) -> Result<DPResult> {
    elastic_distance_ea(spec, x, q, window, f64::INFINITY)
}

/// Exact elastic distance with row-minimum early abandoning: if every
/// reachable cell of some row already exceeds the cutoff (in the distance
/// domain), the final distance provably does too and the computation stops.
pub fn elastic_distance_ea(
    spec: &MeasureSpec,
    x: &TimeSeries,
    q: &TimeSeries,
    window: Window,
    cutoff: f64,
) -> Result<DPResult> {
    let (n, m) = (x.len(), q.len());
    let radius = window.resolve(n, m)?;
    let (xs, qs) = (x.values(), q.values());
    let p = *spec.params();

    let raw = match spec.kind() {
        MeasureKind::Lcss => {
            return Ok(lcss_distance(xs, qs, radius, p.epsilon, cutoff));
        }
        MeasureKind::Dtw => run_min_dp(
            &DtwCosts { x: xs, q: qs },
            n,
            m,
            radius,
            cutoff,
            spec.kind() == MeasureKind::Dtw,
        ),
        MeasureKind::Erp => {
            let prefix = |s: &[f64]| {
                let mut acc = 0.0;
                let mut out = Vec::with_capacity(s.len() + 1);
                out.push(0.0);
                for v in s {
                    acc += (v - p.g) * (v - p.g);
                    out.push(acc);
                }
                out
            };
            run_min_dp(
                &ErpCosts {
                    x: xs,
                    q: qs,
                    g: p.g,
                    gap_x: prefix(xs),
                    gap_q: prefix(qs),
                },
                n,
                m,
                radius,
                cutoff,
            spec.kind() == MeasureKind::Dtw,
            )
        }
        MeasureKind::Msm => run_min_dp(
            &MsmCosts { x: xs, q: qs, c: p.c },
            n,
            m,
            radius,
            cutoff,
            spec.kind() == MeasureKind::Dtw,
        ),
        MeasureKind::Twed => run_min_dp(
            &TwedCosts {
                x: xs,
                q: qs,
                nu: p.nu,
                lambda: p.lambda,
            },
            n,
            m,
            radius,
            cutoff,
            spec.kind() == MeasureKind::Dtw,
        ),
        MeasureKind::Edr => run_min_dp(
            &EdrCosts {
                x: xs,
                q: qs,
                eps: p.epsilon,
            },
            n,
            m,
            radius,
            cutoff,
            spec.kind() == MeasureKind::Dtw,
        ),
        MeasureKind::Swale => run_min_dp(
            &SwaleCosts {
                x: xs,
                q: qs,
                eps: p.epsilon,
                p: p.p,
                r: p.r,
            },
            n,
            m,
            radius,
            cutoff,
            spec.kind() == MeasureKind::Dtw,
        ),
    };

    Ok(match raw {
        Some(raw) => DPResult {
            raw,
            distance: spec.trans(raw, n, m),
            abandoned: false,
        },
        None => DPResult {
            raw: f64::INFINITY,
            distance: f64::INFINITY,
            abandoned: true,
        },
    })
}


/// Per-measure step costs for the min-DP engine. Indices are 1-based matrix
/// coordinates; index 0 addresses the virtual boundary.
trait DpCosts {
    /// Value of virtual cell (0, j): cumulative cost of deleting q_1..q_j
    /// before any of x is consumed. `+inf` for the anchored measures.
    fn virtual_row(&self, j: usize) -> f64;
    fn virtual_col(&self, i: usize) -> f64;
    fn diag(&self, i: usize, j: usize) -> f64;
    fn vert(&self, i: usize, j: usize) -> f64;
    fn horiz(&self, i: usize, j: usize) -> f64;
}

/// Banded min-plus DP with two rolling rows. Returns `None` when abandoned:
/// every path must cross each row, so once the minimum over a row's reachable
/// cells (including the virtual column) exceeds the cutoff, the final value
/// does as well. The comparison happens in the distance domain (a square
/// root for DTW) to avoid rounding drift against caller-supplied cutoffs.
fn run_min_dp<C: DpCosts>(
    costs: &C,
    n: usize,
    m: usize,
    radius: usize,
    cutoff: f64,
    sqrt_domain: bool,
) -> Option<f64> {
    let mut prev: Vec<f64> = Vec::with_capacity(m + 1);
    prev.push(0.0);
    for j in 1..=m {
        prev.push(costs.virtual_row(j));
    }
    let mut curr = vec![f64::INFINITY; m + 1];

    for i in 1..=n {
        curr.fill(f64::INFINITY);
        curr[0] = costs.virtual_col(i);
        let lo = i.saturating_sub(radius).max(1);
        let hi = i.saturating_add(radius).min(m);
        let mut row_min = curr[0];
        for j in lo..=hi {
            let best = (prev[j - 1] + costs.diag(i, j))
                .min(prev[j] + costs.vert(i, j))
                .min(curr[j - 1] + costs.horiz(i, j));
            curr[j] = best;
            row_min = row_min.min(best);
        }
        if cutoff < f64::INFINITY {
            let row_dist = if sqrt_domain { row_min.sqrt() } else { row_min };
            if row_dist > cutoff {
                return None;
            }
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    Some(prev[m])
}

/// Banded LCSS: maximize matched pairs over the band, virtual boundary of
/// zeros, out-of-band cells unreachable. A diagonal step without a match is
/// admitted (skipping both elements), which keeps narrow bands connected.
fn lcss_distance(x: &[f64], q: &[f64], radius: usize, eps: f64, cutoff: f64) -> DPResult {
    let (n, m) = (x.len(), q.len());
    let min_nm = n.min(m) as f64;
    let mut prev = vec![0.0_f64; m + 1];
    let mut curr = vec![f64::NEG_INFINITY; m + 1];
    for i in 1..=n {
        curr.fill(f64::NEG_INFINITY);
        curr[0] = 0.0;
        let lo = i.saturating_sub(radius).max(1);
        let hi = i.saturating_add(radius).min(m);
        let mut row_max = 0.0_f64; // virtual column: no q consumed yet
        for j in lo..=hi {
            let mij = if (x[i - 1] - q[j - 1]).abs() <= eps {
                1.0
            } else {
                0.0
            };
            let best = (prev[j - 1] + mij).max(prev[j]).max(curr[j - 1]);
            curr[j] = best;
            row_max = row_max.max(best);
        }
        // At most one more match per remaining row, so the distance can end
        // no lower than this; at the last row it equals the final distance.
        if cutoff < f64::INFINITY {
            let best_possible = 1.0 - (row_max + (n - i) as f64) / min_nm;
            if best_possible > cutoff {
                return DPResult {
                    raw: f64::INFINITY,
                    distance: f64::INFINITY,
                    abandoned: true,
                };
            }
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    let sim = prev[m];
    DPResult {
        raw: sim,
        distance: 1.0 - sim / min_nm,
        abandoned: false,
    }
}

struct DtwCosts<'a> {
    x: &'a [f64],
    q: &'a [f64],
}

impl DpCosts for DtwCosts<'_> {
    fn virtual_row(&self, _j: usize) -> f64 {
        f64::INFINITY
    }
    fn virtual_col(&self, _i: usize) -> f64 {
        f64::INFINITY
    }
    fn diag(&self, i: usize, j: usize) -> f64 {
        let d = self.x[i - 1] - self.q[j - 1];
        d * d
    }
    fn vert(&self, i: usize, j: usize) -> f64 {
        self.diag(i, j)
    }
    fn horiz(&self, i: usize, j: usize) -> f64 {
        self.diag(i, j)
    }
}

struct ErpCosts<'a> {
    x: &'a [f64],
    q: &'a [f64],
    g: f64,
    gap_x: Vec<f64>,
    gap_q: Vec<f64>,
}

impl DpCosts for ErpCosts<'_> {
    fn virtual_row(&self, j: usize) -> f64 {
        self.gap_q[j]
    }
    fn virtual_col(&self, i: usize) -> f64 {
        self.gap_x[i]
    }
    fn diag(&self, i: usize, j: usize) -> f64 {
        let d = self.x[i - 1] - self.q[j - 1];
        d * d
    }
    fn vert(&self, i: usize, _j: usize) -> f64 {
        let d = self.x[i - 1] - self.g;
        d * d
    }
    fn horiz(&self, _i: usize, j: usize) -> f64 {
        let d = self.q[j - 1] - self.g;
        d * d
    }
}

/// Split/merge cost: `c` when `mid` lies between its predecessor and the
/// opposing element, otherwise `c` plus the distance to the nearer of the two.
fn msm_c(mid: f64, prev: f64, other: f64, c: f64) -> f64 {
    if (prev <= mid && mid <= other) || (prev >= mid && mid >= other) {
        c
    } else {
        c + (mid - prev).abs().min((mid - other).abs())
    }
}

struct MsmCosts<'a> {
    x: &'a [f64],
    q: &'a [f64],
    c: f64,
}

impl DpCosts for MsmCosts<'_> {
    fn virtual_row(&self, _j: usize) -> f64 {
        f64::INFINITY
    }
    fn virtual_col(&self, _i: usize) -> f64 {
        f64::INFINITY
    }
    fn diag(&self, i: usize, j: usize) -> f64 {
        (self.x[i - 1] - self.q[j - 1]).abs()
    }
    fn vert(&self, i: usize, j: usize) -> f64 {
        // no predecessor at i = 1; the cell is unreachable from above anyway
        if i < 2 {
            f64::INFINITY
        } else {
            msm_c(self.x[i - 1], self.x[i - 2], self.q[j - 1], self.c)
        }
    }
    fn horiz(&self, i: usize, j: usize) -> f64 {
        if j < 2 {
            f64::INFINITY
        } else {
            msm_c(self.q[j - 1], self.q[j - 2], self.x[i - 1], self.c)
        }
    }
}

struct TwedCosts<'a> {
    x: &'a [f64],
    q: &'a [f64],
    nu: f64,
    lambda: f64,
}

impl TwedCosts<'_> {
    /// 1-based lookup with the zero-padding convention s_0 = 0.
    fn at(s: &[f64], k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            s[k - 1]
        }
    }
}

impl DpCosts for TwedCosts<'_> {
    fn virtual_row(&self, _j: usize) -> f64 {
        f64::INFINITY
    }
    fn virtual_col(&self, _i: usize) -> f64 {
        f64::INFINITY
    }
    fn diag(&self, i: usize, j: usize) -> f64 {
        (self.x[i - 1] - self.q[j - 1]).abs()
            + (Self::at(self.x, i - 1) - Self::at(self.q, j - 1)).abs()
            + 2.0 * self.nu
    }
    fn vert(&self, i: usize, _j: usize) -> f64 {
        (self.x[i - 1] - Self::at(self.x, i - 1)).abs() + self.nu + self.lambda
    }
    fn horiz(&self, _i: usize, j: usize) -> f64 {
        (self.q[j - 1] - Self::at(self.q, j - 1)).abs() + self.nu + self.lambda
    }
}

struct EdrCosts<'a> {
    x: &'a [f64],
    q: &'a [f64],
    eps: f64,
}

impl DpCosts for EdrCosts<'_> {
    fn virtual_row(&self, j: usize) -> f64 {
        j as f64
    }
    fn virtual_col(&self, i: usize) -> f64 {
        i as f64
    }
    fn diag(&self, i: usize, j: usize) -> f64 {
        if (self.x[i - 1] - self.q[j - 1]).abs() <= self.eps {
            0.0
        } else {
            1.0
        }
    }
    fn vert(&self, _i: usize, _j: usize) -> f64 {
        1.0
    }
    fn horiz(&self, _i: usize, _j: usize) -> f64 {
        1.0
    }
}

struct SwaleCosts<'a> {
    x: &'a [f64],
    q: &'a [f64],
    eps: f64,
    p: f64,
    r: f64,
}

impl DpCosts for SwaleCosts<'_> {
    fn virtual_row(&self, j: usize) -> f64 {
        j as f64 * self.p
    }
    fn virtual_col(&self, i: usize) -> f64 {
        i as f64 * self.p
    }
    fn diag(&self, i: usize, j: usize) -> f64 {
        if (self.x[i - 1] - self.q[j - 1]).abs() <= self.eps {
            self.r
        } else {
            self.p
        }
    }
    fn vert(&self, _i: usize, _j: usize) -> f64 {
        self.p
    }
    fn horiz(&self, _i: usize, _j: usize) -> f64 {
        self.p
    }
}
