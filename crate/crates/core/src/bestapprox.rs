//! Minimax polynomial approximation by the multi-point Remez exchange.
//!
//! Each iteration solves for the polynomial `p` and leveled error `h` with
//! `f(x_j) - p(x_j) = (-1)^j h` on the current reference, then replaces the
//! whole reference by the alternating extrema of `f - p`. Extrema are located
//! on a cosine-spaced grid and polished by golden-section search. Known kinks of
//! `f` can be added to the grid as breakpoints so that a cusp extremum is hit
//! exactly.
//!
//! For even `f` the problem reduces to `g(y) = f(sqrt y)` on `[0, 1]` at degree
//! `floor(d / 2)`. With `t = 2y - 1` one has `T_i(t) = T_{2i}(x)`, so the
//! reduced coefficients are the even coefficients of the full solution.

use crate::chebyshev::{cheb_t, ChebSeries};
use crate::csv::{fmt_f64, render};
use crate::error::{domain, Error, Result};
use crate::fit::LogLogFit;
use crate::rates::fit_points;
use crate::testfns::{CustomKind, FunctionKind, TestFunction};
use crate::tolerances::{REMEZ_GOLDEN_STEPS, REMEZ_GRID_PER_POINT, REMEZ_MAX_ITER};
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;
use std::thread;

/// Smallest accepted convergence tolerance.
pub const MIN_TOL: f64 = 1e-13;

/// Absolute slack in the stopping test, in units of `eps * max |f|`.
pub const ROUNDING_FLOOR_ULPS: f64 = 16.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RemezOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub grid_per_point: usize,
    pub golden_steps: usize,
    /// Points always present in the extremum search grid (kinks of `f`).
    pub breakpoints: Vec<f64>,
}

impl Default for RemezOptions {
    fn default() -> Self {
        Self {
            tol: crate::tolerances::REMEZ_TOL,
            max_iter: REMEZ_MAX_ITER,
            grid_per_point: REMEZ_GRID_PER_POINT,
            golden_steps: REMEZ_GOLDEN_STEPS,
            breakpoints: Vec::new(),
        }
    }
}

impl RemezOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxResult {
    pub degree: usize,
    /// `max |f - p|` over the search grid and polished extrema.
    pub error: f64,
    /// Leveled error of the last linear solve; `|h| <= E* <= error`.
    pub leveled_error: f64,
    /// Final alternation set, strictly increasing.
    pub reference: Vec<f64>,
    /// `f - p` at the reference points.
    pub reference_residuals: Vec<f64>,
    pub iterations: usize,
    /// `p` in the Chebyshev basis of `[-1, 1]`, halved `a_0`.
    pub poly: ChebSeries,
}

impl MinimaxResult {
    /// Relative spread of `|f - p|` over the reference.
    pub fn equioscillation_spread(&self) -> f64 {
        let mags = self.reference_residuals.iter().map(|r| r.abs());
        let hi = mags.clone().fold(0.0, f64::max);
        let lo = mags.fold(f64::INFINITY, f64::min);
        if hi == 0.0 {
            0.0
        } else {
            (hi - lo) / hi
        }
    }

    /// Whether the reference residuals strictly alternate in sign.
    pub fn alternates(&self) -> bool {
        self.reference_residuals
            .windows(2)
            .all(|w| w[0] * w[1] < 0.0)
    }
}

/// Minimax error of degree-`degree` polynomials on `[-1, 1]`.
pub fn minimax_error<F: Fn(f64) -> f64>(f: F, degree: usize, tol: f64) -> Result<MinimaxResult> {
    minimax_with(f, degree, &RemezOptions::with_tol(tol))
}

pub fn minimax_with<F: Fn(f64) -> f64>(
    f: F,
    degree: usize,
    opts: &RemezOptions,
) -> Result<MinimaxResult> {
    let sol = remez(&f, degree, -1.0, 1.0, opts)?;
    let mut coeffs = sol.coeffs;
    coeffs[0] *= 2.0;
    Ok(MinimaxResult {
        degree,
        error: sol.error,
        leveled_error: sol.h,
        reference: sol.reference,
        reference_residuals: sol.residuals,
        iterations: sol.iterations,
        poly: ChebSeries::new(coeffs)?,
    })
}

/// Even-function path: solves for `f(sqrt y)` on `[0, 1]` at degree `degree / 2`.
///
/// The returned reference is the nonnegative half of the alternation set,
/// `floor(degree / 2) + 2` points. Evenness of `f` is the caller's promise.
pub fn minimax_error_even<F: Fn(f64) -> f64>(
    f: F,
    degree: usize,
    opts: &RemezOptions,
) -> Result<MinimaxResult> {
    let q = degree / 2;
    let mut reduced = opts.clone();
    reduced.breakpoints = opts.breakpoints.iter().map(|b| b * b).collect();
    let g = |y: f64| f(y.max(0.0).sqrt());
    let sol = remez(&g, q, 0.0, 1.0, &reduced)?;
    let mut coeffs = vec![0.0; 2 * q + 1];
    for (i, &c) in sol.coeffs.iter().enumerate() {
        coeffs[2 * i] = c;
    }
    coeffs[0] *= 2.0;
    Ok(MinimaxResult {
        degree,
        error: sol.error,
        leveled_error: sol.h,
        reference: sol.reference.iter().map(|y| y.max(0.0).sqrt()).collect(),
        reference_residuals: sol.residuals,
        iterations: sol.iterations,
        poly: ChebSeries::new(coeffs)?,
    })
}

struct Solution {
    /// Chebyshev coefficients in the mapped variable, `T_0` weight 1.
    coeffs: Vec<f64>,
    h: f64,
    error: f64,
    reference: Vec<f64>,
    residuals: Vec<f64>,
    iterations: usize,
}

fn remez(
    f: &dyn Fn(f64) -> f64,
    d: usize,
    a: f64,
    b: f64,
    opts: &RemezOptions,
) -> Result<Solution> {
    if !(opts.tol >= MIN_TOL) {
        return domain(format!(
            "tolerance must be >= {MIN_TOL:e}, got {}",
            opts.tol
        ));
    }
    if opts.max_iter == 0 || opts.grid_per_point == 0 {
        return domain("max_iter and grid_per_point must be positive");
    }
    let to_t = |x: f64| ((2.0 * x - a - b) / (b - a)).clamp(-1.0, 1.0);
    let from_t = |t: f64| 0.5 * (a + b) + 0.5 * (b - a) * t;
    let npts = d + 2;

    let eval_f = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation {
                x,
                reason: format!("non-finite value {y}"),
            })
        }
    };

    // Chebyshev extrema of degree d + 1, ascending.
    let mut reference: Vec<f64> = (0..npts)
        .map(|j| from_t(-(PI * j as f64 / (npts - 1) as f64).cos()))
        .collect();

    let mut base_grid: Vec<f64> = {
        let m = opts.grid_per_point * npts;
        (0..=m)
            .map(|i| from_t(-(PI * i as f64 / m as f64).cos()))
            .collect()
    };
    base_grid.extend(opts.breakpoints.iter().copied().filter(|&x| x > a && x < b));
    base_grid.push(a);
    base_grid.push(b);

    for iteration in 1..=opts.max_iter {
        let fvals: Vec<f64> = reference
            .iter()
            .map(|&x| eval_f(x))
            .collect::<Result<_>>()?;
        let (coeffs, h) = solve_reference(&reference, &fvals, d, &to_t)?;
        let residual = |x: f64| -> Result<f64> { Ok(eval_f(x)? - eval_poly(&coeffs, to_t(x))) };

        let mut grid = base_grid.clone();
        grid.extend(reference.iter().copied());
        grid.sort_by(|p, q| p.total_cmp(q));
        grid.dedup();
        let rvals: Vec<f64> = grid.iter().map(|&x| residual(x)).collect::<Result<_>>()?;

        let (mut ext_x, mut ext_r) =
            alternating_extrema(&grid, &rvals, &residual, opts.golden_steps)?;
        // A symmetric reference gives h = 0 for even f; the residual then only
        // touches zero at the ends. Endpoints extend the alternation set.
        if ext_x.len() < npts && ext_x[0] > a {
            ext_x.insert(0, a);
            ext_r.insert(0, residual(a)?);
        }
        if ext_x.len() < npts && ext_x[ext_x.len() - 1] < b {
            ext_x.push(b);
            ext_r.push(residual(b)?);
        }
        let max_r = ext_r.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        let fscale = fvals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        // The gap cannot shrink below the rounding level of evaluating f - p.
        let floor = ROUNDING_FLOOR_ULPS * f64::EPSILON * fscale;
        let converged = max_r - h.abs() <= opts.tol * max_r + floor || max_r <= opts.tol * fscale;

        if converged {
            // Report the alternation set itself; for exactly representable f
            // the residual is rounding noise and the old reference is kept.
            let (reference, residuals) = if ext_x.len() >= npts {
                trim(ext_x, ext_r, npts)
            } else {
                let r = reference
                    .iter()
                    .map(|&x| residual(x))
                    .collect::<Result<_>>()?;
                (reference, r)
            };
            return Ok(Solution {
                coeffs,
                h,
                error: max_r,
                reference,
                residuals,
                iterations: iteration,
            });
        }
        if ext_x.len() < npts {
            return Err(Error::SingularReference);
        }
        reference = trim(ext_x, ext_r, npts).0;
        if iteration == opts.max_iter {
            return Err(Error::RemezConvergence {
                iterations: iteration,
                gap: (max_r - h.abs()) / max_r,
            });
        }
    }
    unreachable!("loop returns on its last iteration")
}

fn eval_poly(coeffs: &[f64], t: f64) -> f64 {
    // Clenshaw with full-weight T_0.
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs[1..].iter().rev() {
        let b0 = c + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + t * b1 - b2
}

fn solve_reference(
    reference: &[f64],
    fvals: &[f64],
    d: usize,
    to_t: &dyn Fn(f64) -> f64,
) -> Result<(Vec<f64>, f64)> {
    let npts = d + 2;
    let mut mat = DMatrix::<f64>::zeros(npts, npts);
    for (j, &x) in reference.iter().enumerate() {
        let t = to_t(x);
        for i in 0..=d {
            mat[(j, i)] = cheb_t(i as u64, t);
        }
        mat[(j, d + 1)] = if j % 2 == 0 { 1.0 } else { -1.0 };
    }
    let rhs = DVector::from_column_slice(fvals);
    let sol = mat.lu().solve(&rhs).ok_or(Error::SingularReference)?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularReference);
    }
    Ok((sol.as_slice()[..=d].to_vec(), sol[d + 1]))
}

/// One polished extremum per maximal run of constant residual sign.
fn alternating_extrema(
    grid: &[f64],
    rvals: &[f64],
    residual: &dyn Fn(f64) -> Result<f64>,
    golden_steps: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut xs = Vec::new();
    let mut rs = Vec::new();
    let mut start = 0;
    while start < grid.len() {
        // Exact zeros (old reference points when h = 0) join the current run.
        let mut sign = None;
        let mut end = start;
        loop {
            let r = rvals[end];
            if r != 0.0 {
                sign.get_or_insert(r > 0.0);
            }
            match (rvals.get(end + 1), sign) {
                (Some(&next), Some(sg)) if next == 0.0 || (next > 0.0) == sg => end += 1,
                (Some(_), None) => end += 1,
                _ => break,
            }
        }
        let sign = sign.unwrap_or(true);
        let best = (start..=end)
            .max_by(|&i, &j| rvals[i].abs().total_cmp(&rvals[j].abs()))
            .unwrap();
        let lo = grid[best.saturating_sub(1)];
        let hi = grid[(best + 1).min(grid.len() - 1)];
        let (mut x, mut r) = (grid[best], rvals[best]);
        if golden_steps > 0 && hi > lo {
            let (gx, gr) = golden_max(residual, lo, hi, golden_steps)?;
            if (gr >= 0.0) == sign && gr.abs() > r.abs() {
                x = gx;
                r = gr;
            }
        }
        xs.push(x);
        rs.push(r);
        start = end + 1;
    }
    Ok((xs, rs))
}

fn golden_max(
    residual: &dyn Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    steps: usize,
) -> Result<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut r1 = residual(x1)?;
    let mut r2 = residual(x2)?;
    for _ in 0..steps {
        if r1.abs() >= r2.abs() {
            hi = x2;
            x2 = x1;
            r2 = r1;
            x1 = hi - g * (hi - lo);
            r1 = residual(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            r1 = r2;
            x2 = lo + g * (hi - lo);
            r2 = residual(x2)?;
        }
    }
    Ok(if r1.abs() >= r2.abs() {
        (x1, r1)
    } else {
        (x2, r2)
    })
}

/// Drops the smaller end point until `npts` remain; the global maximum survives.
fn trim(mut xs: Vec<f64>, mut rs: Vec<f64>, npts: usize) -> (Vec<f64>, Vec<f64>) {
    while xs.len() > npts {
        if rs[0].abs() <= rs[rs.len() - 1].abs() {
            xs.remove(0);
            rs.remove(0);
        } else {
            xs.pop();
            rs.pop();
        }
    }
    (xs, rs)
}

/// Interior kinks of a registry function, added to the search grid.
pub fn breakpoints(f: &TestFunction) -> Vec<f64> {
    match f.kind() {
        FunctionKind::AbsPower { xi, .. } => vec![xi],
        FunctionKind::Custom(CustomKind::Spline2 { xi }) => vec![xi],
        FunctionKind::Custom(_) => Vec::new(),
    }
}

/// `(degree, E*)` for one function.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxSweep {
    pub function_id: String,
    pub points: Vec<(usize, f64)>,
    pub results: Vec<MinimaxResult>,
    pub fit: Option<LogLogFit>,
}

impl MinimaxSweep {
    pub fn fit(&mut self, use_envelope: bool, window: usize) -> Result<LogLogFit> {
        let fit = fit_points(&self.points, use_envelope, window)?;
        self.fit = Some(fit);
        Ok(fit)
    }

    /// CSV with header `degree,minimax_error`.
    pub fn to_csv(&self) -> String {
        render(
            "degree,minimax_error",
            self.points
                .iter()
                .map(|&(d, e)| vec![d.to_string(), fmt_f64(e)]),
        )
    }

    /// CSV with header `degree,index,x,residual` listing every final reference.
    pub fn reference_csv(&self) -> String {
        render(
            "degree,index,x,residual",
            self.results.iter().flat_map(|res| {
                res.reference
                    .iter()
                    .zip(&res.reference_residuals)
                    .enumerate()
                    .map(move |(i, (x, r))| {
                        vec![
                            res.degree.to_string(),
                            i.to_string(),
                            fmt_f64(*x),
                            fmt_f64(*r),
                        ]
                    })
            }),
        )
    }
}

/// Minimax errors of `f` for every degree (ascending), computed concurrently.
pub fn bestapprox_sweep(f: &TestFunction, degrees: &[usize], tol: f64) -> Result<MinimaxSweep> {
    if degrees.is_empty() {
        return domain("degree list is empty");
    }
    if degrees.windows(2).any(|w| w[0] >= w[1]) {
        return domain("degrees must be strictly ascending");
    }
    let opts = RemezOptions {
        breakpoints: breakpoints(f),
        ..RemezOptions::with_tol(tol)
    };
    let results: Vec<Result<MinimaxResult>> = thread::scope(|scope| {
        let handles: Vec<_> = degrees
            .iter()
            .map(|&d| {
                let opts = &opts;
                scope.spawn(move || minimax_with(|x| f.eval(x), d, opts))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("minimax worker panicked"))
            .collect()
    });
    let results: Vec<MinimaxResult> = results.into_iter().collect::<Result<_>>()?;
    Ok(MinimaxSweep {
        function_id: f.id().to_string(),
        points: results.iter().map(|r| (r.degree, r.error)).collect(),
        results,
        fit: None,
    })
}
