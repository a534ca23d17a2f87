//! Shape-preserving cubic interpolation.
//!
//! Profile tables (axis elevation and section radius versus horizontal
//! position) are interpolated with the Fritsch–Carlson monotone cubic: it is
//! C^1, reproduces linear data exactly, and never overshoots, so monotone
//! sample tables yield monotone interpolants. The analytic derivative of the
//! interpolant backs all profile slopes.

use crate::error::{Error, Result};

/// Monotone piecewise-cubic Hermite interpolant on strictly increasing knots.
#[derive(Debug, Clone)]
pub(crate) struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Knot derivatives chosen so each cubic piece preserves monotonicity.
    slope: Vec<f64>,
}

impl MonotoneCubic {
    /// Build the interpolant. Requires at least two knots with strictly
    /// increasing, finite abscissae.
    pub(crate) fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidProfile {
                index: 0,
                reason: format!("{} abscissae but {} ordinates", x.len(), y.len()),
            });
        }
        if x.len() < 2 {
            return Err(Error::InvalidProfile {
                index: 0,
                reason: "need at least two samples".to_string(),
            });
        }
        for (i, pair) in x.windows(2).enumerate() {
            if !(pair[1] > pair[0]) {
                return Err(Error::InvalidProfile {
                    index: i + 1,
                    reason: format!("abscissa {:+.6e} does not increase past {:+.6e}", pair[1], pair[0]),
                });
            }
        }
        for (i, &v) in x.iter().chain(y.iter()).enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidProfile {
                    index: i % x.len(),
                    reason: "non-finite sample".to_string(),
                });
            }
        }

        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|p| p[1] - p[0]).collect();
        let secant: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

        let mut slope = vec![0.0; n];
        if n == 2 {
            slope[0] = secant[0];
            slope[1] = secant[0];
        } else {
            for i in 1..n - 1 {
                if secant[i - 1] * secant[i] > 0.0 {
                    // Weighted harmonic mean of the neighbouring secants.
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    slope[i] = (w1 + w2) / (w1 / secant[i - 1] + w2 / secant[i]);
                }
            }
            slope[0] = edge_slope(h[0], h[1], secant[0], secant[1]);
            slope[n - 1] = edge_slope(h[n - 2], h[n - 3], secant[n - 2], secant[n - 3]);
        }

        Ok(MonotoneCubic { x: x.to_vec(), y: y.to_vec(), slope })
    }

    /// First knot abscissa.
    pub(crate) fn x_min(&self) -> f64 {
        self.x[0]
    }

    /// Last knot abscissa.
    pub(crate) fn x_max(&self) -> f64 {
        *self.x.last().unwrap()
    }

    fn segment(&self, t: f64) -> usize {
        // Index of the piece whose [x_i, x_{i+1}] contains t (clamped).
        let n = self.x.len();
        self.x[1..n - 1].partition_point(|&k| k <= t)
    }

    /// Interpolated value; queries beyond the knot range are clamped.
    pub(crate) fn value(&self, t: f64) -> f64 {
        let t = t.clamp(self.x[0], *self.x.last().unwrap());
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let s = t - self.x[i];
        let sec = (self.y[i + 1] - self.y[i]) / h;
        let c2 = (3.0 * sec - 2.0 * self.slope[i] - self.slope[i + 1]) / h;
        let c3 = (self.slope[i] + self.slope[i + 1] - 2.0 * sec) / (h * h);
        self.y[i] + s * (self.slope[i] + s * (c2 + s * c3))
    }

    /// Analytic derivative of the interpolant (clamped like `value`).
    pub(crate) fn derivative(&self, t: f64) -> f64 {
        let t = t.clamp(self.x[0], *self.x.last().unwrap());
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let s = t - self.x[i];
        let sec = (self.y[i + 1] - self.y[i]) / h;
        let c2 = (3.0 * sec - 2.0 * self.slope[i] - self.slope[i + 1]) / h;
        let c3 = (self.slope[i] + self.slope[i + 1] - 2.0 * sec) / (h * h);
        self.slope[i] + s * (2.0 * c2 + 3.0 * s * c3)
    }
}

/// One-sided three-point end slope with the usual monotonicity clamps.
fn edge_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if s0 * s1 <= 0.0 && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}
