//! Sampling grids for scans and tables.

use serde::Serialize;

use crate::error::{Error, Result};

/// Mixed grid on `(0, x_max]`: half the points at the midpoints of equal
/// cells, half log-spaced from `1e-3` to `x_max`, merged and sorted.
pub fn mixed_grid(points: usize, x_max: f64) -> Vec<f64> {
    let linear = points / 2;
    let log = points - linear;
    let mut xs: Vec<f64> = (0..linear)
        .map(|i| x_max * (i as f64 + 0.5) / linear as f64)
        .collect();
    let (l0, l1) = (1e-3f64.log10(), x_max.log10());
    xs.extend((0..log).map(|i| {
        let t = if log > 1 {
            i as f64 / (log - 1) as f64
        } else {
            1.0
        };
        10f64.powf(l0 + t * (l1 - l0)).min(x_max)
    }));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// Evenly stepped grid `min, min + step, …` up to `max` (inclusive, with a
/// small allowance for accumulated rounding). Values are snapped to twelve
/// significant digits so `0.1 + 2·0.1` prints as `0.3`.
pub fn step_grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let x = min + i as f64 * step;
            format!("{x:.11e}").parse().unwrap_or(x)
        })
        .collect()
}

/// Log-spaced grid of tail probabilities, both endpoints included.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaGrid {
    pub alpha_min: f64,
    pub alpha_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_per_decade: Option<usize>,
    pub points: usize,
}

impl AlphaGrid {
    /// `points_per_decade` points per factor of ten, so the point count is
    /// `round(decades · points_per_decade) + 1`.
    pub fn per_decade(alpha_min: f64, alpha_max: f64, points_per_decade: usize) -> Result<Self> {
        Self::check(alpha_min, alpha_max)?;
        if points_per_decade == 0 {
            return Err(Error::Config("points per decade must be at least 1".into()));
        }
        let decades = (alpha_max / alpha_min).log10();
        let points = (decades * points_per_decade as f64).round() as usize + 1;
        Ok(Self {
            alpha_min,
            alpha_max,
            points_per_decade: Some(points_per_decade),
            points,
        })
    }

    /// Exactly `points` log-spaced points.
    pub fn with_points(alpha_min: f64, alpha_max: f64, points: usize) -> Result<Self> {
        Self::check(alpha_min, alpha_max)?;
        if points == 0 || (points == 1) != (alpha_min == alpha_max) {
            return Err(Error::Config(format!(
                "{points} grid points cannot span [{alpha_min}, {alpha_max}]"
            )));
        }
        Ok(Self {
            alpha_min,
            alpha_max,
            points_per_decade: None,
            points,
        })
    }

    fn check(alpha_min: f64, alpha_max: f64) -> Result<()> {
        if !(alpha_min > 0.0 && alpha_min <= alpha_max && alpha_max.is_finite()) {
            return Err(Error::Config(format!(
                "alpha range [{alpha_min}, {alpha_max}] must satisfy 0 < min <= max"
            )));
        }
        Ok(())
    }

    /// Grid values in increasing order; the endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        if self.points <= 1 {
            return vec![self.alpha_min];
        }
        let (l0, l1) = (self.alpha_min.log10(), self.alpha_max.log10());
        let last = self.points - 1;
        (0..self.points)
            .map(|i| match i {
                0 => self.alpha_min,
                i if i == last => self.alpha_max,
                i => 10f64.powf(l0 + (l1 - l0) * i as f64 / last as f64),
            })
            .collect()
    }
}
