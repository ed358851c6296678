//! Chebyshev polynomials of the first kind and truncated Chebyshev series.
//!
//! Series use the halved-first-term convention throughout:
//! `f(x) = a_0 / 2 + sum_{m >= 1} a_m T_m(x)`.

use crate::dct;
use crate::error::{domain, Error, Result};
use crate::fit::fit_log_log;

/// Degrees up to this are evaluated with the three-term recurrence.
pub const RECURRENCE_MAX_DEGREE: u64 = 64;

/// Even indices per window when extracting the coefficient envelope.
pub const ENVELOPE_WINDOW: usize = 16;

/// Coefficients below this fraction of the largest one are treated as noise.
pub const COEFF_NOISE_FRACTION: f64 = 1e-15;

/// `T_m(x)` for `|x| <= 1`.
pub fn eval_cheb_t(m: u64, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return domain(format!("T_m(x) needs |x| <= 1, got x = {x}"));
    }
    Ok(cheb_t(m, x))
}

/// `T_m(x)` without the domain check. Values outside `[-1, 1]` are clamped.
pub(crate) fn cheb_t(m: u64, x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    if m <= RECURRENCE_MAX_DEGREE {
        return cheb_t_recurrence(m, x);
    }
    // T_m(-x) = (-1)^m T_m(x)
    let (x, sign) = if x < 0.0 {
        (-x, if m % 2 == 0 { 1.0 } else { -1.0 })
    } else {
        (x, 1.0)
    };
    sign * cos_of_product(m as f64, x.acos())
}

/// `cos(a * b)` with the rounding error of the product folded back in.
fn cos_of_product(a: f64, b: f64) -> f64 {
    let p = a * b;
    let e = a.mul_add(b, -p);
    let (s, c) = p.sin_cos();
    c - s * e
}

fn cheb_t_recurrence(m: u64, x: f64) -> f64 {
    match m {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for _ in 1..m {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `int_{-1}^{1} T_m(x) dx`: zero for odd `m`, `-2 / (m^2 - 1)` for even `m`.
pub fn exact_integral_t(m: u64) -> f64 {
    if m % 2 == 1 {
        0.0
    } else {
        let m = m as f64;
        -2.0 / (m * m - 1.0)
    }
}

/// A truncated Chebyshev expansion `a_0 / 2 + sum a_m T_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain("a Chebyshev series needs at least one coefficient");
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return domain(format!("coefficient a_{i} is not finite"));
        }
        Ok(Self { coeffs })
    }

    /// Coefficients of the degree-`n` interpolant of `f` at the Chebyshev-Lobatto
    /// points `cos(k pi / n)`, computed with a type-I DCT of the samples.
    pub fn interpolate<F: FnMut(f64) -> f64>(mut f: F, n: usize) -> Result<Self> {
        if n < 1 {
            return domain("interpolation degree must be at least 1");
        }
        let mut samples = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let x = dct::cos_pi_frac(k, n);
            let y = f(x);
            if !y.is_finite() {
                return Err(Error::Evaluation {
                    x,
                    reason: format!("non-finite value {y}"),
                });
            }
            samples.push(y);
        }
        let transformed = dct::dct1(&samples);
        let scale = 2.0 / n as f64;
        let mut coeffs: Vec<f64> = transformed.iter().map(|c| c * scale).collect();
        coeffs[n] *= 0.5;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Clenshaw backward recurrence for the primed sum.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(x.abs() <= 1.0) {
            return domain(format!("series evaluation needs |x| <= 1, got x = {x}"));
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: f64) -> f64 {
        let a = &self.coeffs;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &ak in a[1..].iter().rev() {
            let b0 = ak + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        0.5 * a[0] + x * b1 - b2
    }

    /// Exact integral over `[-1, 1]`.
    pub fn integral(&self) -> f64 {
        let mut acc = 0.5 * self.coeffs[0] * exact_integral_t(0);
        for (m, &a) in self.coeffs.iter().enumerate().skip(2).step_by(2) {
            acc += a * exact_integral_t(m as u64);
        }
        acc
    }
}

/// Shorthand for [`ChebSeries::interpolate`].
pub fn cheb_coefficients<F: FnMut(f64) -> f64>(f: F, n: usize) -> Result<ChebSeries> {
    ChebSeries::interpolate(f, n)
}

/// Upper envelope of `|a_m|` over even `m` in `[m_min, m_max]`: the largest
/// coefficient of each window of [`ENVELOPE_WINDOW`] consecutive even indices.
/// Noise-level coefficients are dropped.
pub fn coefficient_envelope(series: &ChebSeries, m_min: usize, m_max: usize) -> Vec<(usize, f64)> {
    let a = series.coeffs();
    let m_max = m_max.min(series.degree());
    let floor = COEFF_NOISE_FRACTION * a.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()));
    let first_even = m_min + m_min % 2;
    let evens: Vec<usize> = (first_even..=m_max).step_by(2).collect();
    evens
        .chunks(ENVELOPE_WINDOW)
        .filter_map(|window| {
            window
                .iter()
                .map(|&m| (m, a[m].abs()))
                .fold(None, |best: Option<(usize, f64)>, cur| match best {
                    Some(b) if b.1 >= cur.1 => Some(b),
                    _ => Some(cur),
                })
        })
        .filter(|&(_, mag)| mag > floor && mag > 0.0)
        .collect()
}

/// Estimated decay exponent `s` from `|a_m| ~ C m^{-s-1}` over the coefficient envelope.
pub fn decay_exponent(series: &ChebSeries, m_min: usize, m_max: usize) -> Result<f64> {
    if m_min < 2 || m_min >= m_max || m_max > series.degree() {
        return domain(format!(
            "decay fit needs 2 <= m_min < m_max <= N, got m_min = {m_min}, m_max = {m_max}, N = {}",
            series.degree()
        ));
    }
    let envelope = coefficient_envelope(series, m_min, m_max);
    if envelope.len() < 4 {
        return Err(Error::InsufficientData {
            needed: 4,
            available: envelope.len(),
        });
    }
    let pts: Vec<(f64, f64)> = envelope.iter().map(|&(m, a)| (m as f64, a)).collect();
    let fit = fit_log_log(&pts)?;
    Ok(-fit.slope - 1.0)
}
