use crate::error::{Error, Result};

/// An immutable, finite, nonempty sequence of real values with an optional
/// integer class label. Timestamps are implicit: the i-th sample sits at t = i.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    label: Option<i64>,
}

impl TimeSeries {
    /// Build a series, rejecting empty input and non-finite values.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSeries("length must be >= 1".into()));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "non-finite value {} at position {pos}",
                values[pos]
            )));
        }
        Ok(Self {
            values,
            label: None,
        })
    }

    pub fn with_label(values: Vec<f64>, label: i64) -> Result<Self> {
        let mut s = Self::new(values)?;
        s.label = Some(label);
        Ok(s)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: length >= 1
    }

    pub fn label(&self) -> Option<i64> {
        self.label
    }

    /// Z-normalize in place: (v - mean) / std. A constant series maps to all zeros.
    pub fn znormalize(&mut self) {
        let n = self.values.len() as f64;
        let mean = self.values.iter().sum::<f64>() / n;
        let var = self.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let std = var.sqrt();
        for v in &mut self.values {
            *v = if std > 0.0 { (*v - mean) / std } else { 0.0 };
        }
    }
}

impl std::ops::Index<usize> for TimeSeries {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Sakoe-Chiba warping radius, given either as an absolute cell count or as a
/// fraction of the series length (rounded half away from zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    Absolute(usize),
    Fraction(f64),
}

impl Window {
    /// A window wide enough to never constrain any pair.
    pub const FULL: Window = Window::Absolute(usize::MAX);

    /// Resolve to a concrete radius for a pair of lengths and validate that the
    /// band admits at least one path (radius >= |n - m|).
    pub fn resolve(&self, n: usize, m: usize) -> Result<usize> {
        let radius = match *self {
            Window::Absolute(r) => r,
            Window::Fraction(f) => {
                if !(0.0..=1.0).contains(&f) {
                    return Err(Error::InvalidParams(format!(
                        "window fraction {f} outside [0, 1]"
                    )));
                }
                (f * n.max(m) as f64).round() as usize
            }
        };
        let gap = n.abs_diff(m);
        if radius < gap {
            return Err(Error::InfeasibleWindow { radius, gap });
        }
        Ok(radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_nonfinite() {
        assert!(TimeSeries::new(vec![]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(TimeSeries::new(vec![0.0]).is_ok());
    }

    #[test]
    fn window_fraction_rounds_half_away_from_zero() {
        // round(0.05 * 50) = round(2.5) = 3
        assert_eq!(Window::Fraction(0.05).resolve(50, 50).unwrap(), 3);
        assert_eq!(Window::Fraction(0.05).resolve(100, 100).unwrap(), 5);
        assert_eq!(Window::Fraction(0.0).resolve(4, 4).unwrap(), 0);
    }

    #[test]
    fn window_infeasible_when_radius_below_length_gap() {
        assert!(matches!(
            Window::Absolute(1).resolve(3, 8),
            Err(Error::InfeasibleWindow { radius: 1, gap: 5 })
        ));
        assert_eq!(Window::Absolute(5).resolve(3, 8).unwrap(), 5);
        assert_eq!(Window::FULL.resolve(3, 8).unwrap(), usize::MAX);
    }

    #[test]
    fn znormalize_constant_series_is_zero() {
        let mut s = TimeSeries::new(vec![3.0, 3.0, 3.0]).unwrap();
        s.znormalize();
        assert_eq!(s.values(), &[0.0, 0.0, 0.0]);
    }
}
