//! Numerical thresholds shared by the library, the CLI checks and the
//! acceptance suite. Every empirically chosen tolerance lives here.

/// Errors at or below this magnitude are double-precision noise and never fitted.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Sliding window (samples) for envelope selection of oscillating error sequences.
pub const ENVELOPE_WINDOW: usize = 5;

/// Minimum number of above-noise points a rate fit needs.
pub const MIN_FIT_POINTS: usize = 6;

/// Default sweep grid: geometric, 24 points from 16 to 2048.
pub const DEFAULT_N_MIN: usize = 16;
pub const DEFAULT_N_MAX: usize = 2048;
pub const DEFAULT_N_COUNT: usize = 24;

/// Largest rule size the CLI accepts.
pub const MAX_N: usize = 100_000;

/// Fitted slope vs. `-(s+1)`: CC for all s, Gauss for s >= 2.
pub const RATE_SLOPE_TOL: f64 = 0.15;
/// Fitted Gauss slope vs. `-(s+1)` for 0 < s < 2.
pub const GAUSS_CONJECTURE_SLOPE_TOL: f64 = 0.2;

/// `|closed form - measured|` for the exact CC aliasing identity.
pub const CC_ALIAS_TOL: f64 = 1e-12;

/// `|measured - model|` for Gauss on `T_m`, `m` in `[2n, n^GAUSS_MODEL_WINDOW_EXPONENT]`.
pub const GAUSS_MODEL_TOL: f64 = 0.1;
pub const GAUSS_MODEL_WINDOW_EXPONENT: f64 = 1.4;

/// `|E_n^G(T_m)| <= 4` for every `m`.
pub const GAUSS_UNIFORM_BOUND: f64 = 4.0;

/// Allowed spread (max / min) of `k^2 n |arccos x_k - theta_k|` across `n`.
pub const GATTESCHI_SPREAD: f64 = 8.0;

/// Window for `64 * E*_64(|x|)`.
pub const BERNSTEIN_WINDOW: (f64, f64) = (0.27, 0.29);

/// Fitted minimax slope vs. `-s`.
pub const MINIMAX_SLOPE_TOL_ABS: f64 = 0.1;
pub const MINIMAX_SLOPE_TOL_FS: f64 = 0.15;

/// Default relative convergence tolerance of the Remez exchange.
pub const REMEZ_TOL: f64 = 1e-12;
pub const REMEZ_MAX_ITER: usize = 100;
/// Extremum search grid size per reference point, and golden-section steps.
pub const REMEZ_GRID_PER_POINT: usize = 20;
pub const REMEZ_GOLDEN_STEPS: usize = 30;
