//! Type-I discrete cosine transform, `y_k = sum''_{j=0}^{N} x_j cos(j k pi / N)`,
//! where `''` halves the `j = 0` and `j = N` terms.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Lengths up to this use the direct cosine sum.
const DIRECT_MAX: usize = 64;

/// DCT-I of `x` (length `N + 1`, `N >= 1`).
pub fn dct1(x: &[f64]) -> Vec<f64> {
    assert!(x.len() >= 2, "dct1 needs at least two samples");
    if x.len() - 1 <= DIRECT_MAX {
        dct1_direct(x)
    } else {
        dct1_fft(x)
    }
}

/// O(N^2) cosine sum with an exact angle table.
pub fn dct1_direct(x: &[f64]) -> Vec<f64> {
    let n = x.len() - 1;
    let period = 2 * n;
    let table: Vec<f64> = (0..period).map(|i| cos_pi_frac(i, n)).collect();
    (0..=n)
        .map(|k| {
            let mut acc = 0.5 * (x[0] + x[n] * table[(n * k) % period]);
            for (j, &xj) in x.iter().enumerate().take(n).skip(1) {
                acc += xj * table[(j * k) % period];
            }
            acc
        })
        .collect()
}

/// DCT-I via a complex FFT of the even extension, length `2N`.
pub fn dct1_fft(x: &[f64]) -> Vec<f64> {
    let n = x.len() - 1;
    let mut buf: Vec<Complex<f64>> = Vec::with_capacity(2 * n);
    buf.extend(x.iter().map(|&v| Complex::new(v, 0.0)));
    buf.extend(x[1..n].iter().rev().map(|&v| Complex::new(v, 0.0)));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(2 * n).process(&mut buf);
    buf[..=n].iter().map(|c| 0.5 * c.re).collect()
}

/// `cos(i * pi / n)` evaluated through `sin` of the reflected angle, so that
/// `cos_pi_frac(n - i, n) == -cos_pi_frac(i, n)` holds exactly.
pub(crate) fn cos_pi_frac(i: usize, n: usize) -> f64 {
    let i = i % (2 * n);
    let i = if i > n { 2 * n - i } else { i };
    // cos(i pi / n) = sin(pi (n - 2i) / (2n))
    let num = n as f64 - 2.0 * i as f64;
    (PI * num / (2.0 * n as f64)).sin()
}
