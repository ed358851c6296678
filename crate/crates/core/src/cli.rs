//! Command-line experiments. Every command ends its report with
//! `RESULT: pass` or `RESULT: fail`; [`run`] returns the process exit code
//! (0 pass, 1 a check failed, 2 bad configuration or runtime error).

use crate::aliasing::{alias_table, alias_table_csv, gauss_decompose, gauss_error_t_model};
use crate::bestapprox::{
    bestapprox_sweep, breakpoints, minimax_error_even, minimax_with, RemezOptions,
};
use crate::csv::{fmt_f64, render};
use crate::error::{Error, Result};
use crate::fit::fit_fixed_slope;
use crate::quadrature::{gauss_legendre, Family, QuadratureRule};
use crate::rates::{
    coeff_bound_check, envelope_indices, error_bound_check, fit_rate, fit_summary, geometric_grid,
    ratio_series, sweep, sweeps_csv, ErrorSweep,
};
use crate::testfns::TestFunction;
use crate::tolerances::*;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "quadrate",
    version,
    about = "Gauss vs. Clenshaw-Curtis quadrature experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the nodes and weights of one rule.
    Nodes(NodesArgs),
    /// Error sweep over n with a power-law rate fit.
    Sweep(SweepArgs),
    /// Gauss and CC error curves for |x - xi|^s, one CSV per s.
    Figure1(Figure1Args),
    /// Measured vs. closed-form or modelled errors on T_m.
    Alias(AliasArgs),
    /// Gauss error model window and the uniform bound |E_n^G(T_m)| <= 4.
    GaussModel(GaussModelArgs),
    /// Minimax errors by Remez exchange.
    Remez(RemezArgs),
    /// Window-max ratio |E_n^G| / |E_n^C| (observational).
    Ratio(RatioArgs),
    /// Explicit coefficient and error bounds for functions with (k, V).
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Cc,
    Gauss,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Cc => Family::ClenshawCurtis,
            FamilyArg::Gauss => Family::GaussLegendre,
        }
    }
}

/// Integrand selection: `--function` wins over `--s`/`--xi`.
#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    /// Function spec, e.g. `abs_pow:s=0.5,xi=0.3`, `abs`, `spline2:xi=0.1`,
    /// `mono:d=4`, `cheb:m=20`, `const:c=2`.
    #[arg(long)]
    pub function: Option<String>,
    /// Exponent s of |x - xi|^s.
    #[arg(long)]
    pub s: Option<f64>,
    /// Kink location of |x - xi|^s.
    #[arg(long, default_value_t = 0.3)]
    pub xi: f64,
}

/// Geometric n grid. Defaults depend on the command.
#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    #[arg(long)]
    pub n_min: Option<usize>,
    /// At most 100000.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub n_count: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct NodesArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    /// Output CSV path (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Rule family; both if absent.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[command(flatten)]
    pub function: FunctionArgs,
    /// n grid, default 16..2048 with 24 points.
    #[command(flatten)]
    pub range: RangeArgs,
    /// Fit on the window-max envelope instead of all points.
    #[arg(long)]
    pub envelope: bool,
    #[arg(long, default_value_t = ENVELOPE_WINDOW)]
    pub window: usize,
    /// Fail unless every fitted slope is within --slope-tol of this value.
    #[arg(long, allow_hyphen_values = true)]
    pub expect_slope: Option<f64>,
    #[arg(long, default_value_t = RATE_SLOPE_TOL)]
    pub slope_tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Figure1Args {
    /// Exponents s (repeatable), default 0.5 and 1.5.
    #[arg(long)]
    pub s: Vec<f64>,
    #[arg(long, default_value_t = 0.3)]
    pub xi: f64,
    /// n grid, default 16..2048 with 24 points.
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, default_value_t = ENVELOPE_WINDOW)]
    pub window: usize,
    /// Output directory for figure1_s<value>.csv.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct AliasArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    /// Default 0.
    #[arg(long)]
    pub m_min: Option<u64>,
    /// Default 16 n.
    #[arg(long)]
    pub m_max: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GaussModelArgs {
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Random even m <= 50 n added to the uniform-bound check.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RemezArgs {
    /// Function spec; default `abs`.
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Single degree; overrides the degree grid.
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub deg_min: usize,
    #[arg(long, default_value_t = 128)]
    pub deg_max: usize,
    #[arg(long, default_value_t = 12)]
    pub deg_count: usize,
    #[arg(long, default_value_t = REMEZ_TOL)]
    pub tol: f64,
    /// Use the even-function reduction (f must be even).
    #[arg(long)]
    pub even: bool,
    #[arg(long, default_value_t = ENVELOPE_WINDOW)]
    pub window: usize,
    /// Fail unless the fitted slope is within --slope-tol of this value.
    #[arg(long, allow_hyphen_values = true)]
    pub expect_slope: Option<f64>,
    #[arg(long, default_value_t = MINIMAX_SLOPE_TOL_ABS)]
    pub slope_tol: f64,
    /// Write the final reference sets as CSV (`degree,index,x,residual`).
    #[arg(long)]
    pub dump_reference: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RatioArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// n grid, default 16..2048 with 24 points.
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, default_value_t = ENVELOPE_WINDOW)]
    pub window: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    /// Function spec carrying (k, V); default `abs` (k = 1, V = 2).
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long, value_enum, default_value_t = FamilyArg::Cc)]
    pub family: FamilyArg,
    /// n grid, default 10..2048 with 40 points.
    #[command(flatten)]
    pub range: RangeArgs,
    /// Test every n in [n-min, n-max] instead of a geometric grid.
    #[arg(long)]
    pub all_n: bool,
    /// Coefficient range for the coefficient bound, default 2..10000.
    #[arg(long)]
    pub m_min: Option<u64>,
    #[arg(long)]
    pub m_max: Option<u64>,
}

/// Parses `args` (program name first), runs the command and writes its report
/// to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(out, "{}", e.render());
            let _ = writeln!(out, "RESULT: fail");
            return 2;
        }
    };
    let mut report = String::new();
    let outcome = execute(&cli.command, &mut report);
    let _ = out.write_all(report.as_bytes());
    match outcome {
        Ok(true) => {
            let _ = writeln!(out, "RESULT: pass");
            0
        }
        Ok(false) => {
            let _ = writeln!(out, "RESULT: fail");
            1
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            let _ = writeln!(out, "RESULT: fail");
            2
        }
    }
}

/// Runs one command, appending its report; `Ok(false)` means a check failed.
pub fn execute(command: &Command, report: &mut String) -> Result<bool> {
    match command {
        Command::Nodes(a) => cmd_nodes(a, report),
        Command::Sweep(a) => cmd_sweep(a, report),
        Command::Figure1(a) => cmd_figure1(a, report),
        Command::Alias(a) => cmd_alias(a, report),
        Command::GaussModel(a) => cmd_gauss_model(a, report),
        Command::Remez(a) => cmd_remez(a, report),
        Command::Ratio(a) => cmd_ratio(a, report),
        Command::Bounds(a) => cmd_bounds(a, report),
    }
}

fn config(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn check_n_max(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(config(format!("n = {n} exceeds the limit {MAX_N}")));
    }
    Ok(())
}

fn grid(range: &RangeArgs, defaults: (usize, usize, usize), need_fit: bool) -> Result<Vec<usize>> {
    let min = range.n_min.unwrap_or(defaults.0);
    let max = range.n_max.unwrap_or(defaults.1);
    let count = range.n_count.unwrap_or(defaults.2);
    check_n_max(max)?;
    if min < 2 || min > max {
        return Err(config(format!(
            "invalid n range [{min}, {max}] (need 2 <= n-min <= n-max)"
        )));
    }
    let grid = geometric_grid(min, max, count);
    if need_fit && grid.len() < MIN_FIT_POINTS {
        return Err(config(format!(
            "n grid [{min}, {max}] with {count} points gives {} distinct n; a rate fit needs at least {MIN_FIT_POINTS}",
            grid.len()
        )));
    }
    Ok(grid)
}

fn function(args: &FunctionArgs, default: &str) -> Result<TestFunction> {
    match (&args.function, args.s) {
        (Some(spec), _) => TestFunction::parse(spec),
        (None, Some(s)) => TestFunction::abs_power(s, args.xi),
        (None, None) => TestFunction::parse(default),
    }
}

fn emit(out: &Option<PathBuf>, csv: &str, report: &mut String) -> Result<()> {
    match out {
        Some(path) => {
            write_file(path, csv)?;
            let _ = writeln!(report, "wrote {}", path.display());
        }
        None => report.push_str(csv),
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn cmd_nodes(a: &NodesArgs, report: &mut String) -> Result<bool> {
    check_n_max(a.n)?;
    let rule = QuadratureRule::new(a.family.into(), a.n)?;
    emit(&a.out, &rule.to_csv(), report)?;
    Ok(true)
}

fn cmd_sweep(a: &SweepArgs, report: &mut String) -> Result<bool> {
    let f = function(&a.function, "abs_pow:s=1,xi=0.3")?;
    let ns = grid(
        &a.range,
        (DEFAULT_N_MIN, DEFAULT_N_MAX, DEFAULT_N_COUNT),
        true,
    )?;
    let families: Vec<Family> = match a.family {
        Some(fam) => vec![fam.into()],
        None => vec![Family::GaussLegendre, Family::ClenshawCurtis],
    };
    let mut sweeps = Vec::new();
    for fam in families {
        sweeps.push(sweep(fam, &f, &ns)?);
    }
    emit(
        &a.out,
        &sweeps_csv(&sweeps.iter().collect::<Vec<_>>()),
        report,
    )?;
    let mut ok = true;
    for s in &sweeps {
        let fit = fit_rate(s, a.envelope, a.window)?;
        let line_ok = a
            .expect_slope
            .is_none_or(|target| within(fit.slope, target, a.slope_tol));
        ok &= line_ok;
        let _ = writeln!(
            report,
            "{} {}: {}",
            s.family.short_name(),
            f.id(),
            fit_summary(&fit)
        );
    }
    Ok(ok)
}

fn cmd_figure1(a: &Figure1Args, report: &mut String) -> Result<bool> {
    let s_values = if a.s.is_empty() {
        vec![0.5, 1.5]
    } else {
        a.s.clone()
    };
    let ns = grid(
        &a.range,
        (DEFAULT_N_MIN, DEFAULT_N_MAX, DEFAULT_N_COUNT),
        true,
    )?;
    std::fs::create_dir_all(&a.out).map_err(|e| Error::Io(format!("{}: {e}", a.out.display())))?;
    let mut ok = true;
    for &s in &s_values {
        let f = TestFunction::abs_power(s, a.xi)?;
        let gauss = sweep(Family::GaussLegendre, &f, &ns)?;
        let cc = sweep(Family::ClenshawCurtis, &f, &ns)?;
        let g_fit = fit_rate(&gauss, true, a.window)?;
        let c_fit = fit_rate(&cc, true, a.window)?;
        let line = fit_fixed_slope(&envelope_of(&cc, a.window), -s - 1.0)?;
        let csv = render(
            "n,E_gauss,E_cc,fit_line",
            gauss
                .points
                .iter()
                .zip(&cc.points)
                .map(|(&(n, eg), &(_, ec))| {
                    vec![
                        n.to_string(),
                        fmt_f64(eg),
                        fmt_f64(ec),
                        fmt_f64(line.eval(n as f64)),
                    ]
                }),
        );
        let path = a.out.join(format!("figure1_s{s}.csv"));
        write_file(&path, &csv)?;

        let target = -s - 1.0;
        let cc_ok = within(c_fit.slope, target, RATE_SLOPE_TOL);
        let g_tol = if s >= 2.0 {
            RATE_SLOPE_TOL
        } else {
            GAUSS_CONJECTURE_SLOPE_TOL
        };
        let g_ok = within(g_fit.slope, target, g_tol);
        ok &= cc_ok && g_ok;
        let _ = writeln!(report, "wrote {}", path.display());
        let _ = writeln!(
            report,
            "s={s}: cc slope={:.4} ({}, target {target} +- {RATE_SLOPE_TOL}), gauss slope={:.4} ({}, target {target} +- {g_tol}), c_s={}",
            c_fit.slope,
            verdict(cc_ok),
            g_fit.slope,
            verdict(g_ok),
            fmt_f64(line.constant()),
        );
    }
    Ok(ok)
}

/// Envelope points of a sweep above the noise floor.
fn envelope_of(sweep: &ErrorSweep, window: usize) -> Vec<(f64, f64)> {
    let usable: Vec<(usize, f64)> = sweep
        .points
        .iter()
        .copied()
        .filter(|p| p.1.abs() > NOISE_FLOOR)
        .collect();
    let errors: Vec<f64> = usable.iter().map(|p| p.1).collect();
    envelope_indices(&errors, window)
        .into_iter()
        .map(|i| (usable[i].0 as f64, usable[i].1))
        .collect()
}

fn cmd_alias(a: &AliasArgs, report: &mut String) -> Result<bool> {
    check_n_max(a.n)?;
    let family: Family = a.family.into();
    let rule = QuadratureRule::new(family, a.n)?;
    let m_min = a.m_min.unwrap_or(0);
    let m_max = a.m_max.unwrap_or(16 * a.n as u64);
    let rows = alias_table(&rule, m_min, m_max)?;
    emit(&a.out, &alias_table_csv(&rows), report)?;
    let ok = match family {
        Family::ClenshawCurtis => {
            let worst = rows.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
            let ok = worst <= CC_ALIAS_TOL;
            let _ = writeln!(
                report,
                "max |residual| = {} (tolerance {CC_ALIAS_TOL:e}, {})",
                fmt_f64(worst),
                verdict(ok)
            );
            ok
        }
        Family::GaussLegendre => {
            let window_end = (a.n as f64).powf(GAUSS_MODEL_WINDOW_EXPONENT);
            let checked: Vec<f64> = rows
                .iter()
                .filter(|r| r.jr.is_some() && (r.m as f64) <= window_end)
                .map(|r| r.residual.abs())
                .collect();
            let worst = checked.iter().copied().fold(0.0, f64::max);
            let ok = worst <= GAUSS_MODEL_TOL;
            let _ = writeln!(
                report,
                "max |residual| over {} modelled rows with m <= n^{GAUSS_MODEL_WINDOW_EXPONENT} = {} (tolerance {GAUSS_MODEL_TOL}, {})",
                checked.len(),
                fmt_f64(worst),
                verdict(ok)
            );
            ok
        }
    };
    Ok(ok)
}

fn cmd_gauss_model(a: &GaussModelArgs, report: &mut String) -> Result<bool> {
    check_n_max(a.n)?;
    let n = a.n;
    let rule = gauss_legendre(n)?;
    let lo = 2 * n as u64;
    let hi = (n as f64).powf(GAUSS_MODEL_WINDOW_EXPONENT).floor() as u64;
    let rows = if hi >= lo {
        alias_table(&rule, lo, hi)?
    } else {
        Vec::new()
    };
    let rows: Vec<_> = rows.into_iter().filter(|r| r.m % 2 == 0).collect();
    emit(&a.out, &alias_table_csv(&rows), report)?;

    let worst_residual = rows.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
    let model_ok = worst_residual <= GAUSS_MODEL_TOL;

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut worst_error = rows.iter().map(|r| r.measured.abs()).fold(0.0, f64::max);
    for _ in 0..a.samples {
        let m = 2 * rng.random_range(0..=25 * n as u64);
        worst_error = worst_error.max(rule.error_on_cheb_t(m).abs());
    }
    let bound_ok = worst_error <= GAUSS_UNIFORM_BOUND;

    let _ = writeln!(
        report,
        "model window m in [{lo}, {hi}]: max |residual| = {} (tolerance {GAUSS_MODEL_TOL}, {})",
        fmt_f64(worst_residual),
        verdict(model_ok)
    );
    let _ = writeln!(
        report,
        "uniform bound over window + {} random m <= 50n (seed {}): max |E| = {} (bound {GAUSS_UNIFORM_BOUND}, {})",
        a.samples,
        a.seed,
        fmt_f64(worst_error),
        verdict(bound_ok)
    );
    // Residual at (j, r) = (1, 4) on this rule, for reference.
    let m14 = 4 * n as u64 + 2 + 8;
    if gauss_decompose(n, m14).is_ok() {
        let res = rule.error_on_cheb_t(m14) - gauss_error_t_model(n, m14)?;
        let _ = writeln!(
            report,
            "residual at (j, r) = (1, 4), m = {m14}: {}",
            fmt_f64(res)
        );
    }
    Ok(model_ok && bound_ok)
}

fn cmd_remez(a: &RemezArgs, report: &mut String) -> Result<bool> {
    let f = function(&a.function, "abs")?;
    let kinks = breakpoints(&f);
    if let Some(d) = a.degree {
        let opts = RemezOptions {
            breakpoints: kinks,
            ..RemezOptions::with_tol(a.tol)
        };
        let res = if a.even {
            minimax_error_even(|x| f.eval(x), d, &opts)?
        } else {
            minimax_with(|x| f.eval(x), d, &opts)?
        };
        let csv = render(
            "degree,minimax_error",
            [vec![d.to_string(), fmt_f64(res.error)]],
        );
        emit(&a.out, &csv, report)?;
        if let Some(path) = &a.dump_reference {
            let dump = render(
                "degree,index,x,residual",
                res.reference
                    .iter()
                    .zip(&res.reference_residuals)
                    .enumerate()
                    .map(|(i, (x, r))| {
                        vec![d.to_string(), i.to_string(), fmt_f64(*x), fmt_f64(*r)]
                    }),
            );
            write_file(path, &dump)?;
        }
        let _ = writeln!(
            report,
            "{}: degree {d}, E* = {}, degree * E* = {}, iterations = {}",
            f.id(),
            fmt_f64(res.error),
            fmt_f64(d as f64 * res.error),
            res.iterations
        );
        return Ok(true);
    }
    if a.even {
        return Err(config("--even applies to a single --degree"));
    }
    if a.deg_min > a.deg_max {
        return Err(config(format!(
            "invalid degree range [{}, {}]",
            a.deg_min, a.deg_max
        )));
    }
    let degrees = geometric_grid(a.deg_min, a.deg_max, a.deg_count);
    if degrees.len() < MIN_FIT_POINTS {
        return Err(config(format!(
            "degree grid has {} points; a rate fit needs at least {MIN_FIT_POINTS}",
            degrees.len()
        )));
    }
    let mut sw = bestapprox_sweep(&f, &degrees, a.tol)?;
    emit(&a.out, &sw.to_csv(), report)?;
    if let Some(path) = &a.dump_reference {
        write_file(path, &sw.reference_csv())?;
    }
    let fit = sw.fit(true, a.window)?;
    let ok = a
        .expect_slope
        .is_none_or(|target| within(fit.slope, target, a.slope_tol));
    let _ = writeln!(report, "{}: {}", f.id(), fit_summary(&fit));
    Ok(ok)
}

fn cmd_ratio(a: &RatioArgs, report: &mut String) -> Result<bool> {
    let f = function(&a.function, "abs_pow:s=1,xi=0.3")?;
    let ns = grid(
        &a.range,
        (DEFAULT_N_MIN, DEFAULT_N_MAX, DEFAULT_N_COUNT),
        false,
    )?;
    let gauss = sweep(Family::GaussLegendre, &f, &ns)?;
    let cc = sweep(Family::ClenshawCurtis, &f, &ns)?;
    let ratios = ratio_series(&gauss, &cc, a.window)?;
    let csv = render(
        "n,ratio",
        ratios
            .points
            .iter()
            .map(|&(n, r)| vec![n.to_string(), fmt_f64(r)]),
    );
    emit(&a.out, &csv, report)?;
    let _ = writeln!(
        report,
        "{}: window-max ratio in [{}, {}] (observational, not asserted)",
        f.id(),
        fmt_f64(ratios.min),
        fmt_f64(ratios.max)
    );
    Ok(true)
}

fn cmd_bounds(a: &BoundsArgs, report: &mut String) -> Result<bool> {
    let f = function(&a.function, "abs")?;
    let family: Family = a.family.into();
    let (k, v) = f.smoothness().ok_or_else(|| {
        config(format!(
            "{} carries no smoothness data; give k and v in the function spec",
            f.id()
        ))
    })?;
    let ns: Vec<usize> = if a.all_n {
        let min = a.range.n_min.unwrap_or(10);
        let max = a.range.n_max.unwrap_or(2048);
        check_n_max(max)?;
        if min < 2 || min > max {
            return Err(config(format!("invalid n range [{min}, {max}]")));
        }
        (min..=max).collect()
    } else {
        grid(&a.range, (10, 2048, 40), false)?
    };
    let errors = error_bound_check(family, &f, &ns)?;
    let m_min = a.m_min.unwrap_or(2);
    let m_max = a.m_max.unwrap_or(10_000);
    let coeffs = coeff_bound_check(&f, m_min, m_max)?;

    let _ = writeln!(report, "{} (k = {k}, V = {v}), {}", f.id(), family);
    match coeffs.first_violation {
        None => {
            let _ = writeln!(
                report,
                "coefficient bound, {} even m in [{m_min}, {m_max}]: no violations",
                coeffs.checked
            );
        }
        Some(m) => {
            let _ = writeln!(report, "coefficient bound: first violation at m = {m}");
        }
    }
    match errors.first_violation() {
        None => {
            let _ = writeln!(
                report,
                "error bound, {} values of n in [{}, {}]: no violations",
                ns.len(),
                ns[0],
                ns[ns.len() - 1]
            );
        }
        Some(n) => {
            let row = errors
                .rows
                .iter()
                .find(|r| r.n == n)
                .expect("violating row");
            let _ = writeln!(
                report,
                "error bound: first violation at n = {n} (|E| = {}, bound = {})",
                fmt_f64(row.error.abs()),
                fmt_f64(row.bound)
            );
        }
    }
    Ok(coeffs.first_violation.is_none() && errors.first_violation().is_none())
}
