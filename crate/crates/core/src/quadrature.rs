//! `n`-point Clenshaw-Curtis and Gauss-Legendre rules on `[-1, 1]`.
//!
//! Nodes are stored in decreasing order, `x_1 > x_2 > ... > x_n`, matching the
//! angle parametrization `x_k = cos(theta_k)` with increasing `theta_k`.
//!
//! Clenshaw-Curtis weights are the interpolatory weights on the Lobatto points
//! `cos((k - 1) pi / (n - 1))`. Integrating the cosine series of each Lagrange
//! cardinal function term by term gives
//! `w_k = (c_k / N) sum''_j d_j cos(j (k - 1) pi / N)`, `N = n - 1`, with the
//! moments `d_j = int T_j = 2 / (1 - j^2)` (even `j`), `c_k = 1` at the two
//! endpoints and `2` elsewhere. That sum is a type-I DCT of the moments.
//!
//! Gauss-Legendre nodes start from the refined asymptotic angle
//! `phi_k + cot(phi_k) / (2 (2n + 1)^2)`, `phi_k = (4k - 1) pi / (4n + 2)`,
//! and are polished by Newton's method on `P_n`. Only `k <= n / 2` is solved;
//! the other half follows by symmetry and the middle node of odd `n` is `0`.

use crate::chebyshev::cheb_t;
use crate::csv::fmt_f64;
use crate::dct;
use crate::error::{domain, Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Newton stops once `|P_n(x)|` drops below this.
pub const NEWTON_RESIDUAL_TOL: f64 = 1e-15;
/// Newton stops once the step drops below this (or two ulps of `x`).
pub const NEWTON_STEP_TOL: f64 = 1e-16;
pub const NEWTON_MAX_ITER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    ClenshawCurtis,
    GaussLegendre,
}

impl Family {
    pub fn short_name(self) -> &'static str {
        match self {
            Family::ClenshawCurtis => "cc",
            Family::GaussLegendre => "gauss",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cc" | "clenshaw-curtis" => Ok(Family::ClenshawCurtis),
            "gauss" | "gauss-legendre" => Ok(Family::GaussLegendre),
            _ => domain(format!("unknown rule family `{s}` (expected cc or gauss)")),
        }
    }
}

/// Nodes and weights of an `n`-point rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    family: Family,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Builds the `n`-point rule of the given family.
    pub fn new(family: Family, n: usize) -> Result<Self> {
        match family {
            Family::ClenshawCurtis => clenshaw_curtis(n),
            Family::GaussLegendre => gauss_legendre(n),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `sum_k w_k f(x_k)`, accumulated in ascending `k`.
    pub fn apply<F: FnMut(f64) -> f64>(&self, mut f: F) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let y = f(x);
            if !y.is_finite() {
                return Err(Error::Evaluation {
                    x,
                    reason: format!("non-finite value {y}"),
                });
            }
            acc += w * y;
        }
        Ok(acc)
    }

    /// Quadrature error `exact - apply(f)`.
    pub fn error<F: FnMut(f64) -> f64>(&self, f: F, exact: f64) -> Result<f64> {
        Ok(exact - self.apply(f)?)
    }

    /// Error on `T_m`, using the cosine form of `T_m` for large `m`.
    pub fn error_on_cheb_t(&self, m: u64) -> f64 {
        let q: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * cheb_t(m, x))
            .sum();
        crate::chebyshev::exact_integral_t(m) - q
    }

    /// CSV with header `index,node,weight`; indices start at 1.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,node,weight\n");
        for (i, (x, w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            out.push_str(&format!("{},{},{}\n", i + 1, fmt_f64(*x), fmt_f64(*w)));
        }
        out
    }
}

/// Free-function form of [`QuadratureRule::apply`].
pub fn apply<F: FnMut(f64) -> f64>(rule: &QuadratureRule, f: F) -> Result<f64> {
    rule.apply(f)
}

/// Free-function form of [`QuadratureRule::error`].
pub fn quad_error<F: FnMut(f64) -> f64>(rule: &QuadratureRule, f: F, exact: f64) -> Result<f64> {
    rule.error(f, exact)
}

/// The `n`-point Clenshaw-Curtis rule, `n >= 2`.
pub fn clenshaw_curtis(n: usize) -> Result<QuadratureRule> {
    if n < 2 {
        return domain(format!("Clenshaw-Curtis needs n >= 2, got {n}"));
    }
    let big_n = n - 1;
    let nodes: Vec<f64> = (0..n).map(|k| dct::cos_pi_frac(k, big_n)).collect();
    let moments: Vec<f64> = (0..n)
        .map(|j| {
            if j % 2 == 0 {
                let j = j as f64;
                2.0 / (1.0 - j * j)
            } else {
                0.0
            }
        })
        .collect();
    let sums = dct::dct1(&moments);
    let mut weights: Vec<f64> = sums
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let c = if k == 0 || k == big_n { 1.0 } else { 2.0 };
            c * s / big_n as f64
        })
        .collect();
    symmetrize(&mut weights);
    Ok(QuadratureRule {
        family: Family::ClenshawCurtis,
        nodes,
        weights,
    })
}

fn symmetrize(w: &mut [f64]) {
    let n = w.len();
    for k in 0..n / 2 {
        let avg = 0.5 * (w[k] + w[n - 1 - k]);
        w[k] = avg;
        w[n - 1 - k] = avg;
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence. Requires `|x| < 1` for the derivative.
pub fn legendre_p(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut prev, mut cur) = (1.0, x);
    for j in 1..n {
        let j = j as f64;
        let next = ((2.0 * j + 1.0) * x * cur - j * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    let deriv = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, deriv)
}

/// The `n`-point Gauss-Legendre rule, `n >= 1`.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n < 1 {
        return domain("Gauss-Legendre needs n >= 1");
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 1..=n / 2 {
        let guess = gatteschi_theta(n, k, NodeOrder::RefinedCorrection)?
            .theta
            .cos();
        let x = newton_legendre(n, k, guess)?;
        let (_, dp) = legendre_p(n, x);
        let w = 2.0 / ((1.0 - x) * (1.0 + x) * dp * dp);
        nodes[k - 1] = x;
        nodes[n - k] = -x;
        weights[k - 1] = w;
        weights[n - k] = w;
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_p(n, 0.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
    Ok(QuadratureRule {
        family: Family::GaussLegendre,
        nodes,
        weights,
    })
}

fn newton_legendre(n: usize, k: usize, mut x: f64) -> Result<f64> {
    for _ in 0..NEWTON_MAX_ITER {
        let (p, dp) = legendre_p(n, x);
        let dx = p / dp;
        x -= dx;
        // Past double precision the step settles at an ulp or two of x.
        let step_tol = NEWTON_STEP_TOL.max(2.0 * f64::EPSILON * x.abs());
        if p.abs() <= NEWTON_RESIDUAL_TOL || dx.abs() <= step_tol {
            return Ok(x);
        }
    }
    Err(Error::NewtonConvergence {
        n,
        node: k,
        iterations: NEWTON_MAX_ITER,
    })
}

/// Truncation order of the asymptotic node angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeOrder {
    /// `phi_k`
    Leading,
    /// `phi_k + cot(phi_k) / (8 n^2)`
    FirstCorrection,
    /// `phi_k + cot(phi_k) / (2 (2n + 1)^2)`
    RefinedCorrection,
}

/// Asymptotic estimate of the angle of the `k`-th Legendre zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussNodeEstimate {
    pub k: usize,
    pub phi: f64,
    pub theta: f64,
    pub order: NodeOrder,
}

/// Asymptotic angle `theta_k` with `x_k ~ cos(theta_k)`, for `1 <= k <= n / 2`.
pub fn gatteschi_theta(n: usize, k: usize, order: NodeOrder) -> Result<GaussNodeEstimate> {
    if k < 1 || k > n / 2 {
        return domain(format!("node index k = {k} outside [1, n/2] for n = {n}"));
    }
    let nf = n as f64;
    let phi = (4.0 * k as f64 - 1.0) * PI / (4.0 * nf + 2.0);
    let cot = 1.0 / phi.tan();
    let theta = match order {
        NodeOrder::Leading => phi,
        NodeOrder::FirstCorrection => phi + cot / (8.0 * nf * nf),
        NodeOrder::RefinedCorrection => {
            let m = 2.0 * nf + 1.0;
            phi + cot / (2.0 * m * m)
        }
    };
    Ok(GaussNodeEstimate {
        k,
        phi,
        theta,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn small_clenshaw_curtis_rules() {
        let r2 = clenshaw_curtis(2).unwrap();
        assert_eq!(r2.nodes(), &[1.0, -1.0]);
        assert_close(r2.weights()[0], 1.0, 1e-15);
        assert_close(r2.weights()[1], 1.0, 1e-15);

        let r3 = clenshaw_curtis(3).unwrap();
        assert_eq!(r3.nodes(), &[1.0, 0.0, -1.0]);
        assert_close(r3.weights()[0], 1.0 / 3.0, 1e-15);
        assert_close(r3.weights()[1], 4.0 / 3.0, 1e-15);
        assert_close(r3.weights()[2], 1.0 / 3.0, 1e-15);

        let r64 = clenshaw_curtis(64).unwrap();
        assert_close(r64.weights().iter().sum(), 2.0, 1e-13);
        assert!(clenshaw_curtis(1).is_err());
        assert!(clenshaw_curtis(0).is_err());
    }

    #[test]
    fn small_gauss_rules() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert_close(r1.weights()[0], 2.0, 1e-15);

        let r2 = gauss_legendre(2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert_close(r2.nodes()[0], x, 1e-15);
        assert_close(r2.nodes()[1], -x, 1e-15);
        assert_close(r2.weights()[0], 1.0, 1e-14);

        let r3 = gauss_legendre(3).unwrap();
        let x = (0.6f64).sqrt();
        assert_close(r3.nodes()[0], x, 1e-15);
        assert_eq!(r3.nodes()[1], 0.0);
        assert_close(r3.weights()[0], 5.0 / 9.0, 1e-14);
        assert_close(r3.weights()[1], 8.0 / 9.0, 1e-14);
        assert!(gauss_legendre(0).is_err());
    }

    #[test]
    fn apply_examples() {
        let cc3 = clenshaw_curtis(3).unwrap();
        let f = |x: f64| (x - 0.3).abs();
        assert_close(cc3.apply(f).unwrap(), 16.0 / 15.0, 1e-15);
        assert_close(
            quad_error(&cc3, f, 1.09).unwrap(),
            1.09 - 16.0 / 15.0,
            1e-15,
        );

        let g2 = gauss_legendre(2).unwrap();
        assert_close(g2.apply(f).unwrap(), 2.0 / 3f64.sqrt(), 1e-14);

        let g5 = gauss_legendre(5).unwrap();
        assert_close(quad_error(&g5, |x| x.powi(9), 0.0).unwrap(), 0.0, 1e-14);

        // T_4(+-1/sqrt 3) = -7/9, so the rule gives -14/9.
        assert_close(
            quad_error(&g2, |x| cheb_t(4, x), -2.0 / 15.0).unwrap(),
            64.0 / 45.0,
            1e-14,
        );
        assert_close(g2.error_on_cheb_t(4), 64.0 / 45.0, 1e-14);

        for rule in [cc3, g2, g5] {
            assert_close(rule.apply(|_| 1.0).unwrap(), 2.0, 1e-13);
        }
    }

    #[test]
    fn apply_reports_bad_values() {
        let r = gauss_legendre(4).unwrap();
        assert!(matches!(
            r.apply(|x| 1.0 / (x - x)),
            Err(Error::Evaluation { .. })
        ));
    }

    #[test]
    fn gatteschi_examples() {
        let lead = gatteschi_theta(10, 1, NodeOrder::Leading).unwrap();
        assert_close(lead.theta, 3.0 * PI / 42.0, 1e-15);
        assert_close(lead.theta, 0.2243994753, 1e-10);

        let first = gatteschi_theta(10, 1, NodeOrder::FirstCorrection).unwrap();
        let cot = 1.0 / (3.0 * PI / 42.0).tan();
        assert_close(first.theta, 3.0 * PI / 42.0 + cot / 800.0, 1e-15);
        let rule = gauss_legendre(10).unwrap();
        assert!((first.theta - rule.nodes()[0].acos()).abs() < 1e-3);

        let rule = gauss_legendre(100).unwrap();
        let actual = rule.nodes()[24].acos();
        let first = gatteschi_theta(100, 25, NodeOrder::FirstCorrection).unwrap();
        let refined = gatteschi_theta(100, 25, NodeOrder::RefinedCorrection).unwrap();
        assert!((refined.theta - actual).abs() < (first.theta - actual).abs());

        assert!(gatteschi_theta(10, 0, NodeOrder::Leading).is_err());
        assert!(gatteschi_theta(10, 6, NodeOrder::Leading).is_err());
        assert!(gatteschi_theta(1, 1, NodeOrder::Leading).is_err());
    }

    #[test]
    fn phi_increasing_and_theta_in_range() {
        let n = 301;
        let mut last = 0.0;
        for k in 1..=n / 2 {
            for order in [
                NodeOrder::Leading,
                NodeOrder::FirstCorrection,
                NodeOrder::RefinedCorrection,
            ] {
                let e = gatteschi_theta(n, k, order).unwrap();
                assert!(e.theta > 0.0 && e.theta < PI / 2.0 + 1e-3);
            }
            let phi = gatteschi_theta(n, k, NodeOrder::Leading).unwrap().phi;
            assert!(phi > last);
            last = phi;
        }
    }

    #[test]
    fn gauss_newton_converges_for_large_n() {
        for n in [1000, 4096, 10_000] {
            let r = gauss_legendre(n).unwrap();
            assert_close(r.weights().iter().sum(), 2.0, 1e-13 * n as f64);
        }
    }

    #[test]
    fn csv_export() {
        let csv = clenshaw_curtis(3).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "index,node,weight");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("2,0.0000000000000000e0,1.3333333333333333e0"));
    }
}
