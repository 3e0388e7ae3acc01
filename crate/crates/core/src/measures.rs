//! Measure parameterization and the matching / deletion cost functions shared
//! by the exact dynamic programs, the lower bounds, and the induced graph.
//!
//! Seven measures are supported. Six are distance-accumulating; LCSS
//! accumulates similarity (matched pairs) and converts to a distance through
//! its final transform. The lower-bound machinery always works in the
//! distance-oriented cost domain (unit mismatch/deletion costs for LCSS) and
//! maps back through [`MeasureSpec::lb_trans`].

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// The supported elastic similarity measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    Dtw,
    Erp,
    Msm,
    Twed,
    Lcss,
    Edr,
    Swale,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 7] = [
        MeasureKind::Dtw,
        MeasureKind::Erp,
        MeasureKind::Msm,
        MeasureKind::Twed,
        MeasureKind::Lcss,
        MeasureKind::Edr,
        MeasureKind::Swale,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MeasureKind::Dtw => "dtw",
            MeasureKind::Erp => "erp",
            MeasureKind::Msm => "msm",
            MeasureKind::Twed => "twed",
            MeasureKind::Lcss => "lcss",
            MeasureKind::Edr => "edr",
            MeasureKind::Swale => "swale",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dtw" => Ok(MeasureKind::Dtw),
            "erp" => Ok(MeasureKind::Erp),
            "msm" => Ok(MeasureKind::Msm),
            "twed" => Ok(MeasureKind::Twed),
            "lcss" => Ok(MeasureKind::Lcss),
            "edr" => Ok(MeasureKind::Edr),
            "swale" => Ok(MeasureKind::Swale),
            other => Err(Error::InvalidParams(format!("unknown measure '{other}'"))),
        }
    }

}

/// Per-measure parameters. Unused fields are ignored by the selected measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureParams {
    /// ERP gap reference value.
    pub g: f64,
    /// MSM split/merge cost (>= 0).
    pub c: f64,
    /// TWED timestamp penalty (>= 0).
    pub nu: f64,
    /// TWED stiffness (>= 0).
    pub lambda: f64,
    /// LCSS/EDR/SWALE match tolerance (>= 0).
    pub epsilon: f64,
    /// SWALE mismatch/gap penalty (>= 0).
    pub p: f64,
    /// SWALE match reward (0 <= r <= p keeps all edge weights nonnegative).
    pub r: f64,
}

impl Default for MeasureParams {
    /// The standard parameterization: g=0, c=0.5, nu=1e-4, lambda=1,
    /// epsilon per measure (0.2 LCSS/SWALE, 0.1 EDR), p=5, r=1.
    fn default() -> Self {
        Self {
            g: 0.0,
            c: 0.5,
            nu: 1e-4,
            lambda: 1.0,
            epsilon: 0.2,
            p: 5.0,
            r: 1.0,
        }
    }
}

impl MeasureParams {
    /// The default epsilon differs per measure; this applies it for a kind.
    pub fn defaults_for(kind: MeasureKind) -> Self {
        let mut p = Self::default();
        if kind == MeasureKind::Edr {
            p.epsilon = 0.1;
        }
        p
    }
}

/// A validated (measure, parameters) pair: the single dispatch point for all
/// cost evaluation, transforms, and boundary terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSpec {
    kind: MeasureKind,
    params: MeasureParams,
}

impl MeasureSpec {
    /// Validate the parameterization. All cost-generating parameters must be
    /// finite and produce nonnegative matching and deletion costs.
    pub fn new(kind: MeasureKind, params: MeasureParams) -> Result<Self> {
        let all = [
            ("g", params.g),
            ("c", params.c),
            ("nu", params.nu),
            ("lambda", params.lambda),
            ("epsilon", params.epsilon),
            ("p", params.p),
            ("r", params.r),
        ];
        for (name, v) in all {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
            }
        }
        for (name, v) in [
            ("c", params.c),
            ("nu", params.nu),
            ("lambda", params.lambda),
            ("epsilon", params.epsilon),
            ("p", params.p),
            ("r", params.r),
        ] {
            if v < 0.0 {
                return Err(Error::InvalidParams(format!("{name} = {v} must be >= 0")));
            }
        }
        if params.r > params.p {
            return Err(Error::InvalidParams(format!(
                "r = {} must not exceed p = {} (negative edge weights otherwise)",
                params.r, params.p
            )));
        }
        Ok(Self { kind, params })
    }

    pub fn with_defaults(kind: MeasureKind) -> Self {
        // Defaults always validate.
        Self::new(kind, MeasureParams::defaults_for(kind)).unwrap()
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn params(&self) -> &MeasureParams {
        &self.params
    }

    /// Matching cost M(x_i, q_j) with full series context (TWED reads the
    /// predecessor samples; index 0 uses the zero-padding convention x_0 = 0).
    /// Indices are 0-based.
    pub fn match_cost(&self, x: &TimeSeries, i: usize, q: &TimeSeries, j: usize) -> f64 {
        debug_assert!(i < x.len() && j < q.len());
        let (a, b) = (x[i], q[j]);
        match self.kind {
            MeasureKind::Dtw | MeasureKind::Erp => (a - b) * (a - b),
            MeasureKind::Msm => (a - b).abs(),
            MeasureKind::Twed => {
                let ap = if i == 0 { 0.0 } else { x[i - 1] };
                let bp = if j == 0 { 0.0 } else { q[j - 1] };
                // Unit-spaced timestamps: both |t_i - t_{i-1}| terms are 1.
                (a - b).abs() + (ap - bp).abs() + 2.0 * self.params.nu
            }
            MeasureKind::Lcss | MeasureKind::Edr => {
                if (a - b).abs() <= self.params.epsilon {
                    0.0
                } else {
                    1.0
                }
            }
            MeasureKind::Swale => {
                if (a - b).abs() <= self.params.epsilon {
                    self.params.r
                } else {
                    self.params.p
                }
            }
        }
    }

    /// Matching cost against a scalar envelope bound. For TWED the
    /// neighbor-difference term is unknown at bound time and is floored at
    /// zero, which keeps the value a lower bound on every in-window M.
    pub(crate) fn match_env(&self, a: f64, b: f64) -> f64 {
        match self.kind {
            MeasureKind::Dtw | MeasureKind::Erp => (a - b) * (a - b),
            MeasureKind::Msm => (a - b).abs(),
            MeasureKind::Twed => (a - b).abs() + 2.0 * self.params.nu,
            MeasureKind::Lcss | MeasureKind::Edr => {
                if (a - b).abs() <= self.params.epsilon {
                    0.0
                } else {
                    1.0
                }
            }
            MeasureKind::Swale => {
                if (a - b).abs() <= self.params.epsilon {
                    self.params.r
                } else {
                    self.params.p
                }
            }
        }
    }

    /// Generalized deletion cost D(x_i): the least cost any alignment can pay
    /// to consume x_i without matching it. For DTW this is the windowed
    /// minimum of the matching cost against the other series.
    pub fn delete_cost(
        &self,
        x: &TimeSeries,
        i: usize,
        other: &TimeSeries,
        radius: usize,
    ) -> f64 {
        debug_assert!(i < x.len());
        let v = x[i];
        match self.kind {
            MeasureKind::Dtw => {
                let lo = i.saturating_sub(radius);
                let hi = (i.saturating_add(radius)).min(other.len() - 1);
                let lo = lo.min(hi);
                other.values()[lo..=hi]
                    .iter()
                    .map(|q| (v - q) * (v - q))
                    .fold(f64::INFINITY, f64::min)
            }
            MeasureKind::Erp => {
                let d = v - self.params.g;
                d * d
            }
            MeasureKind::Msm => self.params.c,
            MeasureKind::Twed => {
                let prev = if i == 0 { 0.0 } else { x[i - 1] };
                (v - prev).abs() + self.params.nu + self.params.lambda
            }
            MeasureKind::Lcss | MeasureKind::Edr => 1.0,
            MeasureKind::Swale => self.params.p,
        }
    }

    /// Final transform applied to the raw DP value RAC(n, m).
    pub fn trans(&self, raw: f64, n: usize, m: usize) -> f64 {
        match self.kind {
            MeasureKind::Dtw => raw.sqrt(),
            MeasureKind::Lcss => 1.0 - raw / n.min(m) as f64,
            _ => raw,
        }
    }

    /// Transform from the lower-bound cost domain (edge-cover weights) to the
    /// distance domain. Identical to `trans` except for LCSS: a cover of cost
    /// C certifies at most (n + m - C) / 2 matched pairs, hence a distance of
    /// at least 1 - (n + m - C) / (2 min(n, m)), clamped at zero.
    pub fn lb_trans(&self, raw: f64, n: usize, m: usize) -> f64 {
        match self.kind {
            MeasureKind::Dtw => raw.sqrt(),
            MeasureKind::Lcss => {
                let v = 1.0 - (n as f64 + m as f64 - raw) / (2.0 * n.min(m) as f64);
                v.max(0.0)
            }
            _ => raw,
        }
    }

    /// Smallest cost-domain sum whose `lb_trans` image exceeds `cutoff`:
    /// a partial sum strictly above this threshold certifies a bound above
    /// the cutoff. `+inf` disables early stopping.
    pub(crate) fn lb_cutoff_raw(&self, cutoff: f64, n: usize, m: usize) -> f64 {
        if cutoff == f64::INFINITY {
            return f64::INFINITY;
        }
        if cutoff < 0.0 {
            return f64::NEG_INFINITY;
        }
        match self.kind {
            MeasureKind::Dtw => cutoff * cutoff,
            MeasureKind::Lcss => {
                (n as f64 + m as f64) - 2.0 * n.min(m) as f64 * (1.0 - cutoff)
            }
            _ => cutoff,
        }
    }

    /// Mandatory corner payment of the final DP cell (n, m): every banded
    /// path's last step matches or deletes x_n or q_m.
    pub(crate) fn last_corner(&self, x: &TimeSeries, q: &TimeSeries, radius: usize) -> f64 {
        let (n, m) = (x.len(), q.len());
        if n == 1 && m == 1 {
            return 0.0; // coincides with the first corner
        }
        self.match_cost(x, n - 1, q, m - 1)
            .min(self.delete_cost(x, n - 1, q, radius))
            .min(self.delete_cost(q, m - 1, x, radius))
    }

    /// Mandatory payment covering x_1 / q_1. Anchored measures pay their
    /// exact initial DP cell; edit-style measures may bypass (1,1), but every
    /// path's first step still costs min{M(x_1,q_1), D(x_1), D(q_1)}.
    pub(crate) fn first_corner(&self, x: &TimeSeries, q: &TimeSeries, radius: usize) -> f64 {
        match self.kind {
            MeasureKind::Dtw | MeasureKind::Msm | MeasureKind::Twed => self.match_cost(x, 0, q, 0),
            _ => self
                .match_cost(x, 0, q, 0)
                .min(self.delete_cost(x, 0, q, radius))
                .min(self.delete_cost(q, 0, x, radius)),
        }
    }
}
