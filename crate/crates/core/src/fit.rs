//! Least-squares line fits in log-log coordinates.

use crate::error::{Error, Result};

/// Straight-line fit `log y = slope * log x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    /// Natural log of the fitted constant.
    pub log_constant: f64,
    pub points_used: usize,
}

impl LogLogFit {
    pub fn constant(&self) -> f64 {
        self.log_constant.exp()
    }

    /// Value of the fitted power law `c * x^slope`.
    pub fn eval(&self, x: f64) -> f64 {
        (self.log_constant + self.slope * x.ln()).exp()
    }
}

/// Ordinary least squares through `(ln x, ln |y|)`. Points need `x > 0` and `y != 0`.
pub fn fit_log_log(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            available: points.len(),
        });
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| (x.ln(), y.abs().ln()))
        .collect();
    let count = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / count;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(lx, ly) in &logs {
        sxx += (lx - mean_x) * (lx - mean_x);
        sxy += (lx - mean_x) * (ly - mean_y);
    }
    if sxx == 0.0 || !sxy.is_finite() {
        return Err(Error::Precondition(
            "log-log fit needs at least two distinct finite abscissae".into(),
        ));
    }
    let slope = sxy / sxx;
    Ok(LogLogFit {
        slope,
        log_constant: mean_y - slope * mean_x,
        points_used: logs.len(),
    })
}

/// Least-squares constant for a power law with the slope held fixed.
pub fn fit_fixed_slope(points: &[(f64, f64)], slope: f64) -> Result<LogLogFit> {
    if points.is_empty() {
        return Err(Error::InsufficientData {
            needed: 1,
            available: 0,
        });
    }
    let log_constant = points
        .iter()
        .map(|&(x, y)| y.abs().ln() - slope * x.ln())
        .sum::<f64>()
        / points.len() as f64;
    if !log_constant.is_finite() {
        return Err(Error::Precondition(
            "fixed-slope fit needs x > 0 and y != 0".into(),
        ));
    }
    Ok(LogLogFit {
        slope,
        log_constant,
        points_used: points.len(),
    })
}
