//! Error sweeps over the rule size `n`, power-law rate fits, the Gauss/CC
//! ratio report and explicit-bound checks.
//!
//! Errors are stored signed. Magnitudes are taken only when fitting or forming
//! ratios.
//!
//! Gauss errors oscillate in sign and can nearly vanish for isolated `n`, which
//! drags a plain log-log fit below the trend. The envelope fit keeps only the
//! points that are the largest of at least one window of
//! [`ENVELOPE_WINDOW`](crate::tolerances::ENVELOPE_WINDOW) consecutive samples.

use crate::chebyshev::cheb_coefficients;
use crate::csv::{fmt_f64, render, text_cell};
use crate::error::{Error, Result};
use crate::fit::{fit_log_log, LogLogFit};
use crate::quadrature::{Family, QuadratureRule};
use crate::testfns::{coeff_bound, error_bound, TestFunction};
use crate::tolerances::{MIN_FIT_POINTS, NOISE_FLOOR};
use std::thread;

/// Signed errors `E_n = I(f) - Q_n(f)` of one rule family on one integrand.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSweep {
    pub family: Family,
    pub function_id: String,
    pub points: Vec<(usize, f64)>,
    pub fit: Option<LogLogFit>,
}

impl ErrorSweep {
    pub fn ns(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.0).collect()
    }

    /// Fits the rate and stores the result.
    pub fn fit(&mut self, use_envelope: bool, window: usize) -> Result<LogLogFit> {
        let fit = fit_rate(self, use_envelope, window)?;
        self.fit = Some(fit);
        Ok(fit)
    }
}

/// `count` geometrically spaced integers from `min` to `max`, rounded and deduplicated.
pub fn geometric_grid(min: usize, max: usize, count: usize) -> Vec<usize> {
    if count <= 1 || min >= max {
        return vec![min];
    }
    let ratio = (max as f64 / min as f64).ln();
    let mut grid: Vec<usize> = (0..count)
        .map(|i| (min as f64 * (ratio * i as f64 / (count - 1) as f64).exp()).round() as usize)
        .collect();
    grid.dedup();
    grid
}

/// Errors of `family` on `f` for every `n` in `n_list` (strictly increasing).
///
/// Rules are built concurrently; the result is in `n_list` order.
pub fn sweep(family: Family, f: &TestFunction, n_list: &[usize]) -> Result<ErrorSweep> {
    if n_list.is_empty() {
        return Err(Error::Precondition("sweep needs at least one n".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "n values must be strictly increasing".into(),
        ));
    }
    let workers = thread::available_parallelism()
        .map_or(1, |p| p.get())
        .min(n_list.len());
    let chunk = n_list.len().div_ceil(workers);
    let results: Vec<Result<Vec<(usize, f64)>>> = thread::scope(|scope| {
        let handles: Vec<_> = n_list
            .chunks(chunk)
            .map(|ns| {
                scope.spawn(move || {
                    ns.iter()
                        .map(|&n| {
                            let rule = QuadratureRule::new(family, n)?;
                            Ok((n, rule.error(|x| f.eval(x), f.exact_integral())?))
                        })
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut points = Vec::with_capacity(n_list.len());
    for part in results {
        points.extend(part?);
    }
    Ok(ErrorSweep {
        family,
        function_id: f.id().to_string(),
        points,
        fit: None,
    })
}

/// Indices that are the argmax of `|values|` over at least one window of
/// `window` consecutive entries (the whole slice if it is shorter).
pub fn envelope_indices(values: &[f64], window: usize) -> Vec<usize> {
    let len = values.len();
    if len == 0 {
        return Vec::new();
    }
    let window = window.clamp(1, len);
    let mut keep = vec![false; len];
    for start in 0..=len - window {
        let best = (start..start + window)
            .max_by(|&a, &b| values[a].abs().total_cmp(&values[b].abs()))
            .expect("window is nonempty");
        keep[best] = true;
    }
    (0..len).filter(|&i| keep[i]).collect()
}

/// Centered sliding maximum of `|values|` with the window clipped at the ends.
pub fn window_max(values: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    (0..values.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(values.len() - 1);
            values[lo..=hi].iter().fold(0.0_f64, |m, v| m.max(v.abs()))
        })
        .collect()
}

/// Least-squares fit of `log |E_n|` against `log n`. Points at or below the
/// noise floor are dropped first.
pub fn fit_rate(sweep: &ErrorSweep, use_envelope: bool, window: usize) -> Result<LogLogFit> {
    fit_points(&sweep.points, use_envelope, window)
}

/// [`fit_rate`] on bare `(n, error)` pairs.
pub fn fit_points(points: &[(usize, f64)], use_envelope: bool, window: usize) -> Result<LogLogFit> {
    let usable: Vec<(usize, f64)> = points
        .iter()
        .copied()
        .filter(|&(_, e)| e.abs() > NOISE_FLOOR)
        .collect();
    if usable.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            available: usable.len(),
        });
    }
    let selected: Vec<(f64, f64)> = if use_envelope {
        let errors: Vec<f64> = usable.iter().map(|p| p.1).collect();
        envelope_indices(&errors, window)
            .into_iter()
            .map(|i| (usable[i].0 as f64, usable[i].1))
            .collect()
    } else {
        usable.iter().map(|&(n, e)| (n as f64, e)).collect()
    };
    if selected.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            available: selected.len(),
        });
    }
    fit_log_log(&selected)
}

/// `|E_n^G| / |E_n^C|` on window-maximum magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub points: Vec<(usize, f64)>,
    pub min: f64,
    pub max: f64,
}

pub fn ratio_series(gauss: &ErrorSweep, cc: &ErrorSweep, window: usize) -> Result<RatioReport> {
    if gauss.ns() != cc.ns() {
        return Err(Error::Mismatch("sweeps use different n grids".into()));
    }
    if gauss.function_id != cc.function_id {
        return Err(Error::Mismatch(format!(
            "sweeps integrate different functions ({} vs {})",
            gauss.function_id, cc.function_id
        )));
    }
    let g: Vec<f64> = gauss.points.iter().map(|p| p.1).collect();
    let c: Vec<f64> = cc.points.iter().map(|p| p.1).collect();
    let g_env = window_max(&g, window);
    let c_env = window_max(&c, window);
    let mut points = Vec::with_capacity(g.len());
    for ((&(n, _), ge), ce) in gauss.points.iter().zip(g_env).zip(c_env) {
        if ge <= NOISE_FLOOR || ce <= NOISE_FLOOR {
            return Err(Error::Precondition(format!(
                "errors at n = {n} are at the noise floor; ratio undefined"
            )));
        }
        points.push((n, ge / ce));
    }
    let min = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(RatioReport { points, min, max })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub n: usize,
    pub error: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Per-`n` comparison of `|E_n|` with `pi V / (2 n^{(k+1)})`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
    /// Smallest tested `n` from which the bound holds for every larger tested `n`.
    pub threshold: Option<usize>,
}

impl BoundReport {
    pub fn first_violation(&self) -> Option<usize> {
        self.rows.iter().find(|r| !r.holds).map(|r| r.n)
    }
}

fn holds_from<T: Copy>(rows: impl DoubleEndedIterator<Item = (T, bool)>) -> Option<T> {
    let mut threshold = None;
    for (idx, ok) in rows.rev() {
        if !ok {
            break;
        }
        threshold = Some(idx);
    }
    threshold
}

/// Checks the explicit error bound for `f` (which must carry `k` and `V`).
/// Gauss requires `k >= 2`.
pub fn error_bound_check(
    family: Family,
    f: &TestFunction,
    n_list: &[usize],
) -> Result<BoundReport> {
    let (k, v) = f.smoothness().ok_or_else(|| {
        Error::Precondition(format!("{} carries no smoothness data (k, V)", f.id()))
    })?;
    if family == Family::GaussLegendre && k < 2 {
        return Err(Error::Precondition(format!(
            "the explicit Gauss error bound requires k >= 2, {} has k = {k}",
            f.id()
        )));
    }
    let sweep = sweep(family, f, n_list)?;
    let rows = sweep
        .points
        .iter()
        .map(|&(n, error)| {
            let bound = error_bound(k, v, n as u64)?;
            Ok(BoundRow {
                n,
                error,
                bound,
                holds: error.abs() <= bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let threshold = holds_from(rows.iter().map(|r| (r.n, r.holds)));
    Ok(BoundReport { rows, threshold })
}

/// Coefficient magnitudes against `2V / (pi m^{(k+1)})` over even `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffBoundReport {
    pub checked: usize,
    pub first_violation: Option<u64>,
    pub threshold: Option<u64>,
}

/// Checks the explicit coefficient bound for even `m` in `[m_min, m_max]`.
///
/// Uses closed-form coefficients when known; otherwise a Chebyshev interpolant
/// of degree at least `64 m_max`, which keeps interpolation aliasing well
/// below the gap between bound and coefficients.
pub fn coeff_bound_check(f: &TestFunction, m_min: u64, m_max: u64) -> Result<CoeffBoundReport> {
    let (k, v) = f.smoothness().ok_or_else(|| {
        Error::Precondition(format!("{} carries no smoothness data (k, V)", f.id()))
    })?;
    let m_min = m_min.max(k as u64 + 1);
    if m_min > m_max {
        return Err(Error::Precondition(format!(
            "empty m range [{m_min}, {m_max}]"
        )));
    }
    let coeff: Box<dyn Fn(u64) -> f64> = if f.closed_form_cheb_coeff(0).is_some() {
        Box::new(|m| f.closed_form_cheb_coeff(m).expect("closed form"))
    } else {
        let degree = (64 * m_max as usize).next_power_of_two();
        let series = cheb_coefficients(|x| f.eval(x), degree)?;
        Box::new(move |m| series.coeffs()[m as usize])
    };
    let first_even = m_min + m_min % 2;
    let mut rows = Vec::new();
    for m in (first_even..=m_max).step_by(2) {
        let bound = coeff_bound(k, v, m)?;
        rows.push((m, coeff(m).abs() <= bound));
    }
    Ok(CoeffBoundReport {
        checked: rows.len(),
        first_violation: rows.iter().find(|r| !r.1).map(|r| r.0),
        threshold: holds_from(rows.into_iter()),
    })
}

/// CSV with header `family,function,n,error`.
pub fn sweeps_csv(sweeps: &[&ErrorSweep]) -> String {
    render(
        "family,function,n,error",
        sweeps.iter().flat_map(|s| {
            s.points.iter().map(move |&(n, e)| {
                vec![
                    s.family.to_string(),
                    text_cell(&s.function_id),
                    n.to_string(),
                    fmt_f64(e),
                ]
            })
        }),
    )
}

/// `slope=..., constant=..., points_used=...`
pub fn fit_summary(fit: &LogLogFit) -> String {
    format!(
        "slope={}, constant={}, points_used={}",
        fmt_f64(fit.slope),
        fmt_f64(fit.constant()),
        fit.points_used
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::ENVELOPE_WINDOW;

    fn synthetic(points: Vec<(usize, f64)>) -> ErrorSweep {
        ErrorSweep {
            family: Family::ClenshawCurtis,
            function_id: "synthetic".into(),
            points,
            fit: None,
        }
    }

    #[test]
    fn grid_is_geometric_and_deduplicated() {
        let g = geometric_grid(16, 2048, 24);
        assert_eq!(g.first(), Some(&16));
        assert_eq!(g.last(), Some(&2048));
        assert_eq!(g.len(), 24);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(geometric_grid(16, 16, 24), vec![16]);
        assert_eq!(geometric_grid(2, 4, 10), vec![2, 3, 4]);
    }

    #[test]
    fn constant_integrand_has_no_error() {
        let one = TestFunction::parse("const").unwrap();
        let s = sweep(Family::GaussLegendre, &one, &geometric_grid(16, 2048, 24)).unwrap();
        assert!(s.points.iter().all(|p| p.1.abs() < 1e-13));
        assert!(fit_rate(&s, true, ENVELOPE_WINDOW).is_err());
    }

    #[test]
    fn single_point_simpson_sweep() {
        let f = TestFunction::parse("abs_pow:s=1,xi=0.3").unwrap();
        let s = sweep(Family::ClenshawCurtis, &f, &[3]).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!((s.points[0].1 - (1.09 - 16.0 / 15.0)).abs() < 1e-15);
        assert!(sweep(Family::ClenshawCurtis, &f, &[]).is_err());
        assert!(sweep(Family::ClenshawCurtis, &f, &[8, 8]).is_err());
        assert!(sweep(Family::ClenshawCurtis, &f, &[1, 8]).is_err());
    }

    #[test]
    fn fit_is_exact_on_power_law() {
        let grid = geometric_grid(16, 2048, 24);
        let s = synthetic(
            grid.iter()
                .map(|&n| (n, 3.0 * (n as f64).powf(-2.5)))
                .collect(),
        );
        for env in [false, true] {
            let fit = fit_rate(&s, env, ENVELOPE_WINDOW).unwrap();
            assert!((fit.slope + 2.5).abs() < 1e-10);
            assert!((fit.constant() - 3.0).abs() < 1e-10);
        }
        let short = synthetic(grid[..5].iter().map(|&n| (n, 1.0 / n as f64)).collect());
        assert!(matches!(
            fit_rate(&short, false, ENVELOPE_WINDOW),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn envelope_skips_near_zeros() {
        let v = [1.0, 0.5, 1e-9, 0.3, 0.2, 1e-12, 0.1, 0.05];
        let idx = envelope_indices(&v, 3);
        assert_eq!(idx, vec![0, 1, 3, 4, 6]);
        assert_eq!(envelope_indices(&[2.0, 1.0], 5), vec![0]);
        assert_eq!(
            window_max(&[1.0, -3.0, 2.0, 0.0], 3),
            vec![3.0, 3.0, 3.0, 2.0]
        );
    }

    #[test]
    fn ratios() {
        let f = TestFunction::parse("abs_pow:s=0.5,xi=0.3").unwrap();
        let grid = geometric_grid(16, 256, 10);
        let cc = sweep(Family::ClenshawCurtis, &f, &grid).unwrap();
        let same = ratio_series(&cc, &cc, ENVELOPE_WINDOW).unwrap();
        assert!(same.points.iter().all(|p| p.1 == 1.0));
        assert_eq!((same.min, same.max), (1.0, 1.0));

        let g = sweep(Family::GaussLegendre, &f, &grid).unwrap();
        let r = ratio_series(&g, &cc, ENVELOPE_WINDOW).unwrap();
        assert!(r.min > 0.0 && r.max.is_finite() && r.min <= r.max);

        let other = sweep(Family::GaussLegendre, &f, &grid[1..]).unwrap();
        assert!(matches!(
            ratio_series(&other, &cc, 5),
            Err(Error::Mismatch(_))
        ));

        let poly = TestFunction::parse("mono:d=5").unwrap();
        let grid = geometric_grid(6, 64, 8);
        let pg = sweep(Family::GaussLegendre, &poly, &grid).unwrap();
        let pc = sweep(Family::ClenshawCurtis, &poly, &grid).unwrap();
        assert!(matches!(
            ratio_series(&pg, &pc, 5),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn explicit_error_bound_checks() {
        let abs = TestFunction::parse("abs").unwrap();
        let grid = geometric_grid(10, 2048, 30);
        let report = error_bound_check(Family::ClenshawCurtis, &abs, &grid).unwrap();
        assert_eq!(report.first_violation(), None);
        assert_eq!(report.threshold, Some(10));

        let err = error_bound_check(Family::GaussLegendre, &abs, &grid).unwrap_err();
        assert!(err.to_string().contains("k >= 2"));

        let f = TestFunction::parse("abs_pow:s=0.5,xi=0.3").unwrap();
        assert!(error_bound_check(Family::ClenshawCurtis, &f, &grid).is_err());
    }

    #[test]
    fn coefficient_bound_checks() {
        let abs = TestFunction::parse("abs").unwrap();
        let ok = coeff_bound_check(&abs, 2, 10_000).unwrap();
        assert_eq!(ok.first_violation, None);
        assert_eq!(ok.checked, 5000);

        let tight = TestFunction::parse("abs_pow:s=1,xi=0,k=1,v=1").unwrap();
        let bad = coeff_bound_check(&tight, 2, 100).unwrap();
        assert_eq!(bad.first_violation, Some(2));

        // Interpolated coefficients (no closed form) for |x - 0.3|.
        let shifted = TestFunction::parse("abs_pow:s=1,xi=0.3").unwrap();
        let r = coeff_bound_check(&shifted, 2, 512).unwrap();
        assert_eq!(r.first_violation, None);
    }

    #[test]
    fn csv_and_summary() {
        let s = synthetic(vec![(16, 0.5), (32, -0.25)]);
        let csv = sweeps_csv(&[&s]);
        assert_eq!(
            csv,
            "family,function,n,error\ncc,synthetic,16,5.0000000000000000e-1\ncc,synthetic,32,-2.5000000000000000e-1\n"
        );
        let fit = LogLogFit {
            slope: -2.0,
            log_constant: 0.0,
            points_used: 7,
        };
        assert_eq!(
            fit_summary(&fit),
            "slope=-2.0000000000000000e0, constant=1.0000000000000000e0, points_used=7"
        );
    }
}
