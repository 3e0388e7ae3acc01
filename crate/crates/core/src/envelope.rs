//! Windowed upper/lower envelopes via monotonic deques.
//!
//! `upper[i]` / `lower[i]` are the max / min of the source over the index
//! window `[i - radius, i + radius]`, with out-of-range positions clamped to
//! the nearest valid index. Everything runs in O(len) total.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Windowed upper and lower bound sequences for a series.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub radius: usize,
}

impl Envelope {
    /// Envelope value at `i`, clamping the index into range. Used when
    /// indexing the envelope of a shorter series from a longer one.
    #[inline]
    pub fn clamped(&self, i: usize) -> (f64, f64) {
        let k = i.min(self.upper.len() - 1);
        (self.upper[k], self.lower[k])
    }
}

/// Build the windowed max/min envelope of `values` under the given radius.
pub fn build_envelope(values: &[f64], radius: usize) -> Result<Envelope> {
    if values.is_empty() {
        return Err(Error::InvalidSeries("cannot build envelope of empty input".into()));
    }
    Ok(Envelope {
        upper: sliding_extreme(values, radius, values.len(), 0, values.len() - 1, true),
        lower: sliding_extreme(values, radius, values.len(), 0, values.len() - 1, false),
        radius,
    })
}

/// Windowed maximum of a nonnegative weight sequence, same clamping rules as
/// [`build_envelope`]. Used for the weight envelope in the augmentation pass.
pub fn weight_upper_envelope(weights: &[f64], radius: usize) -> Vec<f64> {
    if weights.is_empty() {
        return Vec::new();
    }
    sliding_extreme(weights, radius, weights.len(), 0, weights.len() - 1, true)
}

/// Windowed max of `src[src_lo ..= src_hi]` evaluated at out positions
/// `0..out_len`; the window `[j - radius, j + radius]` is clamped into the
/// source range. Returns zeros when the source range is empty.
pub(crate) fn windowed_max_range(
    src: &[f64],
    radius: usize,
    out_len: usize,
    src_lo: usize,
    src_hi: usize,
) -> Vec<f64> {
    if src_lo > src_hi || src.is_empty() {
        return vec![0.0; out_len];
    }
    sliding_extreme(src, radius, out_len, src_lo, src_hi, true)
}

/// Monotonic-deque sliding extreme. The deque holds indices into `src` with
/// values strictly decreasing (max) or increasing (min) from front to back;
/// the front is always the extreme of the current clamped window.
fn sliding_extreme(
    src: &[f64],
    radius: usize,
    out_len: usize,
    src_lo: usize,
    src_hi: usize,
    max: bool,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(out_len);
    let mut deque: VecDeque<usize> = VecDeque::new();
    let mut next = src_lo;
    let better = |a: f64, b: f64| if max { a >= b } else { a <= b };
    for j in 0..out_len {
        let hi = j.saturating_add(radius).clamp(src_lo, src_hi);
        while next <= hi {
            while let Some(&back) = deque.back() {
                if better(src[next], src[back]) {
                    deque.pop_back();
                } else {
                    break;
                }
            }
            deque.push_back(next);
            next += 1;
        }
        let lo = j.saturating_sub(radius).clamp(src_lo, src_hi);
        while let Some(&front) = deque.front() {
            if front < lo {
                deque.pop_front();
            } else {
                break;
            }
        }
        out.push(src[*deque.front().expect("window never empty")]);
    }
    out
}
