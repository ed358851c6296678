//! Integrands with closed-form integrals, led by `f_s(x) = |x - xi|^s`.
//!
//! `f_s` has Chebyshev coefficients decaying like `m^{-s-1}`. Stationary phase
//! at the singular angle `theta_0 = arccos(xi)`, where
//! `|cos(theta) - xi|^s ~ (1 - xi^2)^{s/2} |theta - theta_0|^s`, gives
//!
//! `a_m ~ -(4/pi) T_m(xi) (1 - xi^2)^{s/2} Gamma(1 + s) sin(pi s / 2) m^{-s-1}`.
//!
//! The amplitude is sometimes quoted as `(1 - xi)^{s/2}`; the two agree only at
//! `xi = 0`. Against DCT coefficients of `|x - 0.3|^s` with `N = 2^15`, the
//! `(1 - xi^2)^{s/2}` form matches to within 0.2% (s = 1.5) and 4% (s = 0.5,
//! limited by interpolation aliasing at `m = N / 8`), while `(1 - xi)^{s/2}` is
//! off by 7% and 22%. [`Amplitude::Stationary`] is the default;
//! [`Amplitude::AsPrinted`] keeps the other form available.
//!
//! Function specs accepted by [`TestFunction::parse`]:
//!
//! | spec                              | function                       |
//! |-----------------------------------|--------------------------------|
//! | `abs_pow:s=<s>,xi=<xi>[,k=..,v=..]` | `|x - xi|^s`                 |
//! | `abs`                             | `|x|` (k = 1, V = 2)           |
//! | `spline2:xi=<xi>`                 | `(x - xi) |x - xi|` (k = 2, V = 4) |
//! | `mono:d=<d>`                      | `x^d`                          |
//! | `cheb:m=<m>`                      | `T_m(x)`                       |
//! | `const[:c=<c>]`                   | constant `c` (default 1)       |
//!
//! Keys are parsed strictly: unknown, duplicate or missing keys are errors.

use crate::chebyshev::{cheb_t, exact_integral_t};
use crate::error::{domain, Error, Result};
use statrs::function::gamma::gamma;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

/// `|x - xi|^s`.
pub fn eval_fs(s: f64, xi: f64, x: f64) -> f64 {
    (x - xi).abs().powf(s)
}

/// `int_{-1}^{1} |x - xi|^s dx = ((1 - xi)^{s+1} + (1 + xi)^{s+1}) / (s + 1)`.
pub fn exact_integral_fs(s: f64, xi: f64) -> Result<f64> {
    check_abs_pow(s, xi)?;
    Ok(((1.0 - xi).powf(s + 1.0) + (1.0 + xi).powf(s + 1.0)) / (s + 1.0))
}

fn check_abs_pow(s: f64, xi: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return domain(format!("exponent s must be positive and finite, got {s}"));
    }
    if !(xi.abs() < 1.0) {
        return domain(format!("singularity xi must lie in (-1, 1), got {xi}"));
    }
    Ok(())
}

/// Amplitude factor used by [`coeff_asymptotic_fs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Amplitude {
    /// `(1 - xi^2)^{s/2}`
    #[default]
    Stationary,
    /// `(1 - xi)^{s/2}`
    AsPrinted,
}

/// Leading asymptotic term of the Chebyshev coefficient `a_m` of `|x - xi|^s`.
pub fn coeff_asymptotic_fs(s: f64, xi: f64, m: u64, amplitude: Amplitude) -> Result<f64> {
    check_abs_pow(s, xi)?;
    if m < 2 {
        return domain(format!("asymptotic coefficient needs m >= 2, got {m}"));
    }
    if s % 2.0 == 0.0 {
        return domain(format!(
            "s = {s} is an even integer: f_s is a polynomial and the leading term vanishes"
        ));
    }
    let amp = match amplitude {
        Amplitude::Stationary => (1.0 - xi * xi).powf(s / 2.0),
        Amplitude::AsPrinted => (1.0 - xi).powf(s / 2.0),
    };
    let mf = m as f64;
    Ok(-(4.0 / PI)
        * cheb_t(m, xi)
        * amp
        * gamma(1.0 + s)
        * (PI * s / 2.0).sin()
        * mf.powf(-s - 1.0))
}

/// Falling factorial `m (m - 1) ... (m - len + 1)`.
pub fn falling_factorial(m: u64, len: u32) -> f64 {
    (0..len as u64).map(|i| (m - i) as f64).product()
}

/// Explicit coefficient bound `|a_m| <= 2V / (pi m^{(k+1)})` (falling power), `m >= k + 1`.
pub fn coeff_bound(k: u32, v: f64, m: u64) -> Result<f64> {
    check_smoothness(k, v)?;
    if m <= k as u64 {
        return domain(format!(
            "coefficient bound needs m >= k + 1 = {}, got {m}",
            k + 1
        ));
    }
    Ok(2.0 * v / (PI * falling_factorial(m, k + 1)))
}

/// Explicit error bound `|E_n| <= pi V / (2 n^{(k+1)})` (falling power), `n >= k + 1`.
pub fn error_bound(k: u32, v: f64, n: u64) -> Result<f64> {
    check_smoothness(k, v)?;
    if n <= k as u64 {
        return domain(format!("error bound needs n >= k + 1 = {}, got {n}", k + 1));
    }
    Ok(PI * v / (2.0 * falling_factorial(n, k + 1)))
}

fn check_smoothness(k: u32, v: f64) -> Result<()> {
    if k < 1 {
        return domain("smoothness index k must be at least 1");
    }
    if !(v > 0.0 && v.is_finite()) {
        return domain(format!("total variation V must be positive, got {v}"));
    }
    Ok(())
}

/// Shape of a registered integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionKind {
    /// `|x - xi|^s`
    AbsPower {
        s: f64,
        xi: f64,
    },
    Custom(CustomKind),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CustomKind {
    Constant(f64),
    Monomial(u32),
    ChebT(u64),
    /// `(x - xi) |x - xi|`, a C^1 piecewise quadratic.
    Spline2 {
        xi: f64,
    },
}

/// An integrand with its exact integral and optional smoothness data `(k, V)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    id: String,
    kind: FunctionKind,
    exact_integral: f64,
    smoothness: Option<(u32, f64)>,
}

impl TestFunction {
    /// `|x - xi|^s`. Odd integer `s` carries `k = s`, `V = 2 s!`.
    pub fn abs_power(s: f64, xi: f64) -> Result<Self> {
        let exact_integral = exact_integral_fs(s, xi)?;
        let smoothness = if s.fract() == 0.0 && s % 2.0 == 1.0 && s < 20.0 {
            Some((s as u32, 2.0 * gamma(s + 1.0).round()))
        } else {
            None
        };
        Ok(Self {
            id: format!("abs_pow:s={s},xi={xi}"),
            kind: FunctionKind::AbsPower { s, xi },
            exact_integral,
            smoothness,
        })
    }

    pub fn custom(kind: CustomKind) -> Result<Self> {
        let (id, exact_integral, smoothness) = match kind {
            CustomKind::Constant(c) => {
                if !c.is_finite() {
                    return domain("constant must be finite");
                }
                (format!("const:c={c}"), 2.0 * c, None)
            }
            CustomKind::Monomial(d) => {
                let exact = if d % 2 == 1 {
                    0.0
                } else {
                    2.0 / (d as f64 + 1.0)
                };
                (format!("mono:d={d}"), exact, None)
            }
            CustomKind::ChebT(m) => (format!("cheb:m={m}"), exact_integral_t(m), None),
            CustomKind::Spline2 { xi } => {
                if !(xi.abs() < 1.0) {
                    return domain(format!("xi must lie in (-1, 1), got {xi}"));
                }
                let exact = ((1.0 - xi).powi(3) - (1.0 + xi).powi(3)) / 3.0;
                (format!("spline2:xi={xi}"), exact, Some((2, 4.0)))
            }
        };
        Ok(Self {
            id,
            kind: FunctionKind::Custom(kind),
            exact_integral,
            smoothness,
        })
    }

    /// Attaches (or replaces) the smoothness index `k` and total variation `V`
    /// of the `k`-th derivative.
    pub fn with_smoothness(mut self, k: u32, v: f64) -> Result<Self> {
        check_smoothness(k, v)?;
        if let FunctionKind::AbsPower { s, xi } = self.kind {
            self.id = format!("abs_pow:s={s},xi={xi},k={k},v={v}");
        }
        self.smoothness = Some((k, v));
        Ok(self)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn exact_integral(&self) -> f64 {
        self.exact_integral
    }

    pub fn smoothness(&self) -> Option<(u32, f64)> {
        self.smoothness
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            FunctionKind::AbsPower { s, xi } => eval_fs(s, xi, x),
            FunctionKind::Custom(CustomKind::Constant(c)) => c,
            FunctionKind::Custom(CustomKind::Monomial(d)) => x.powi(d as i32),
            FunctionKind::Custom(CustomKind::ChebT(m)) => cheb_t(m, x),
            FunctionKind::Custom(CustomKind::Spline2 { xi }) => (x - xi) * (x - xi).abs(),
        }
    }

    /// Exact Chebyshev coefficient `a_m`, where a closed form is known.
    pub fn closed_form_cheb_coeff(&self, m: u64) -> Option<f64> {
        match self.kind {
            FunctionKind::AbsPower { s, xi } if s == 1.0 && xi == 0.0 => Some(abs_cheb_coeff(m)),
            FunctionKind::Custom(CustomKind::Constant(c)) => {
                Some(if m == 0 { 2.0 * c } else { 0.0 })
            }
            FunctionKind::Custom(CustomKind::ChebT(k)) => Some(if m == k { 1.0 } else { 0.0 }),
            _ => None,
        }
    }

    /// Parses a registry spec such as `abs_pow:s=0.5,xi=0.3`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = |reason: &str| Error::FunctionSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (name, rest) = match spec.split_once(':') {
            Some((name, rest)) => (name.trim(), Some(rest)),
            None => (spec.trim(), None),
        };
        let mut keys = BTreeMap::new();
        if let Some(rest) = rest {
            for pair in rest.split(',') {
                let (k, v) = pair
                    .split_once('=')
                    .ok_or_else(|| bad(&format!("expected key=value, got `{pair}`")))?;
                let (k, v) = (k.trim(), v.trim());
                if keys.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(bad(&format!("duplicate key `{k}`")));
                }
            }
        }
        let mut take = |key: &str| keys.remove(key);
        let num = |key: &str, raw: Option<String>| -> Result<Option<f64>> {
            raw.map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| bad(&format!("`{key}` is not a finite number: `{v}`")))
            })
            .transpose()
        };
        let int = |key: &str, raw: Option<String>| -> Result<Option<u64>> {
            raw.map(|v| {
                v.parse::<u64>()
                    .map_err(|_| bad(&format!("`{key}` is not a nonnegative integer: `{v}`")))
            })
            .transpose()
        };
        let required =
            |key: &str, v: Option<f64>| v.ok_or_else(|| bad(&format!("missing key `{key}`")));

        let function = match name {
            "abs_pow" => {
                let s = required("s", num("s", take("s"))?)?;
                let xi = required("xi", num("xi", take("xi"))?)?;
                let k = int("k", take("k"))?;
                let v = num("v", take("v"))?;
                let f = Self::abs_power(s, xi)?;
                match (k, v) {
                    (Some(k), Some(v)) => f.with_smoothness(k as u32, v)?,
                    (None, None) => f,
                    _ => return Err(bad("`k` and `v` must be given together")),
                }
            }
            "abs" => Self::abs_power(1.0, 0.0)?,
            "spline2" => {
                let xi = required("xi", num("xi", take("xi"))?)?;
                Self::custom(CustomKind::Spline2 { xi })?
            }
            "mono" => {
                let d = int("d", take("d"))?.ok_or_else(|| bad("missing key `d`"))?;
                Self::custom(CustomKind::Monomial(d as u32))?
            }
            "cheb" => {
                let m = int("m", take("m"))?.ok_or_else(|| bad("missing key `m`"))?;
                Self::custom(CustomKind::ChebT(m))?
            }
            "const" => {
                let c = num("c", take("c"))?.unwrap_or(1.0);
                Self::custom(CustomKind::Constant(c))?
            }
            other => return Err(bad(&format!("unknown function family `{other}`"))),
        };
        if let Some(key) = keys.keys().next() {
            return Err(bad(&format!("unknown key `{key}` for `{name}`")));
        }
        Ok(function)
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// Chebyshev coefficients of `|x|`: `a_0 = 4 / pi`, `a_{2k} = -(4/pi) (-1)^k / (4k^2 - 1)`.
pub fn abs_cheb_coeff(m: u64) -> f64 {
    if m % 2 == 1 {
        return 0.0;
    }
    let k = (m / 2) as f64;
    let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
    -(4.0 / PI) * sign / (4.0 * k * k - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::cheb_coefficients;
    use crate::quadrature::clenshaw_curtis;

    /// Adaptive Simpson with Richardson correction.
    fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
            let m = 0.5 * (a + b);
            let fm = f(m);
            (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
        }
        #[allow(clippy::too_many_arguments)]
        fn rec<F: Fn(f64) -> f64>(
            f: &F,
            a: f64,
            fa: f64,
            b: f64,
            fb: f64,
            m: f64,
            fm: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let (lm, flm, left) = simpson(f, a, fa, m, fm);
            let (rm, frm, right) = simpson(f, m, fm, b, fb);
            let delta = left + right - whole;
            if depth == 0 || delta.abs() <= 15.0 * tol {
                return left + right + delta / 15.0;
            }
            rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
                + rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
        }
        let (fa, fb) = (f(a), f(b));
        let (m, fm, whole) = simpson(f, a, fa, b, fb);
        rec(f, a, fa, b, fb, m, fm, whole, tol, 60)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_fs(0.5, 0.3, 0.3), 0.0);
        assert!((eval_fs(1.0, 0.0, -0.4) - 0.4).abs() < 1e-16);
        assert!((eval_fs(2.0, 0.3, 1.0) - 0.49).abs() < 1e-15);
    }

    #[test]
    fn eval_is_even_about_xi() {
        // Dyadic xi and t keep xi +- t exact.
        for i in 0..50 {
            let t = i as f64 / 128.0;
            assert_eq!(
                eval_fs(0.7, 0.375, 0.375 + t),
                eval_fs(0.7, 0.375, 0.375 - t)
            );
        }
    }

    #[test]
    fn integral_examples() {
        assert!((exact_integral_fs(1.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((exact_integral_fs(1.0, 0.3).unwrap() - 1.09).abs() < 1e-15);
        let v = exact_integral_fs(0.5, 0.3).unwrap();
        let by_hand = (0.7f64.powf(1.5) + 1.3f64.powf(1.5)) / 1.5;
        assert!((v - by_hand).abs() < 1e-15);
        assert!((v - 1.3785934).abs() < 1e-7);
        assert!(exact_integral_fs(0.0, 0.3).is_err());
        assert!(exact_integral_fs(1.0, 1.0).is_err());
    }

    #[test]
    fn integral_matches_adaptive_oracle() {
        // Split at xi; on each side substitute u = t^2 so the integrand t^{2s+1} is tame at 0.
        let mut state = 12345u64;
        let mut uniform = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..20 {
            let s = 0.1 + 3.0 * uniform();
            let xi = -0.95 + 1.9 * uniform();
            let side = |len: f64| {
                let g = |t: f64| 2.0 * t * (t * t).powf(s);
                adaptive_simpson(&g, 0.0, len.sqrt(), 1e-14)
            };
            let oracle = side(1.0 - xi) + side(1.0 + xi);
            let exact = exact_integral_fs(s, xi).unwrap();
            assert!(
                (oracle - exact).abs() < 1e-12,
                "s={s} xi={xi}: {oracle} vs {exact}"
            );
        }
    }

    #[test]
    fn asymptotic_coefficients_of_abs() {
        let a = coeff_asymptotic_fs(1.0, 0.0, 100, Amplitude::Stationary).unwrap();
        assert!((a + 4.0 / (PI * 1e4)).abs() < 1e-18);
        for m in (20..400).step_by(2) {
            let model = coeff_asymptotic_fs(1.0, 0.0, m, Amplitude::Stationary).unwrap();
            let exact = abs_cheb_coeff(m);
            assert!((model - exact).abs() <= 2.0 * (m as f64).powi(-4), "m={m}");
        }
        assert!(coeff_asymptotic_fs(2.0, 0.3, 50, Amplitude::Stationary).is_err());
        assert!(coeff_asymptotic_fs(0.5, 0.3, 1, Amplitude::Stationary).is_err());
    }

    #[test]
    fn asymptotic_matches_dct_coefficients() {
        let n = 1 << 15;
        let c = cheb_coefficients(|x| eval_fs(0.5, 0.3, x), n).unwrap();
        let m = 1u64 << 12;
        let model = coeff_asymptotic_fs(0.5, 0.3, m, Amplitude::Stationary).unwrap();
        let rel = (c.coeffs()[m as usize] / model - 1.0).abs();
        assert!(rel < 0.05, "relative deviation {rel}");
        let printed = coeff_asymptotic_fs(0.5, 0.3, m, Amplitude::AsPrinted).unwrap();
        assert!((c.coeffs()[m as usize] / printed - 1.0).abs() > rel);
    }

    #[test]
    fn explicit_bounds() {
        assert!((falling_factorial(4, 2) - 12.0).abs() < 1e-15);
        assert!((falling_factorial(7, 3) - 210.0).abs() < 1e-12);
        let b = coeff_bound(1, 2.0, 4).unwrap();
        assert!((b - 1.0 / (3.0 * PI)).abs() < 1e-15);
        assert!((b - 0.1061033).abs() < 1e-7);
        assert!((abs_cheb_coeff(4).abs() - 4.0 / (15.0 * PI)).abs() < 1e-16);
        assert!(abs_cheb_coeff(4).abs() <= b);
        assert!(coeff_bound(1, 2.0, 1).is_err());
        assert!(coeff_bound(0, 2.0, 5).is_err());
        assert!(coeff_bound(1, -1.0, 5).is_err());

        assert!((error_bound(1, 2.0, 100).unwrap() - PI / 9900.0).abs() < 1e-18);
        assert!((error_bound(1, 2.0, 10).unwrap() - PI / 90.0).abs() < 1e-16);
        assert!(error_bound(2, 1.0, 2).is_err());

        let e = clenshaw_curtis(100).unwrap().error(f64::abs, 1.0).unwrap();
        assert!(e.abs() <= 3.1733e-4, "{e}");
    }

    #[test]
    fn coeff_bound_dominates_abs_coefficients() {
        for m in (2..=10_000u64).step_by(2) {
            assert!(abs_cheb_coeff(m).abs() <= coeff_bound(1, 2.0, m).unwrap());
        }
    }

    #[test]
    fn registry_parsing() {
        let f = TestFunction::parse("abs_pow:s=0.5,xi=0.3").unwrap();
        assert_eq!(f.kind(), FunctionKind::AbsPower { s: 0.5, xi: 0.3 });
        assert_eq!(f.smoothness(), None);
        assert_eq!(f.id(), "abs_pow:s=0.5,xi=0.3");
        assert_eq!(TestFunction::parse(f.id()).unwrap(), f);

        let abs = TestFunction::parse("abs").unwrap();
        assert_eq!(abs.smoothness(), Some((1, 2.0)));
        assert_eq!(abs.exact_integral(), 1.0);
        assert_eq!(
            TestFunction::parse("abs_pow:s=3,xi=0")
                .unwrap()
                .smoothness(),
            Some((3, 12.0))
        );

        let custom = TestFunction::parse("abs_pow:s=1,xi=0,k=1,v=0.5").unwrap();
        assert_eq!(custom.smoothness(), Some((1, 0.5)));
        assert_eq!(TestFunction::parse(custom.id()).unwrap(), custom);

        let sp = TestFunction::parse("spline2:xi=0.3").unwrap();
        assert_eq!(sp.smoothness(), Some((2, 4.0)));
        assert!((sp.eval(-0.7) + 1.0).abs() < 1e-15);

        assert_eq!(
            TestFunction::parse("mono:d=4").unwrap().exact_integral(),
            0.4
        );
        assert_eq!(TestFunction::parse("const").unwrap().exact_integral(), 2.0);
        assert!(
            (TestFunction::parse("cheb:m=2").unwrap().exact_integral() + 2.0 / 3.0).abs() < 1e-16
        );

        for bad in [
            "abs_pow:s=0.5",
            "abs_pow:s=0.5,xi=0.3,zeta=1",
            "abs_pow:s=0.5,s=0.6,xi=0.3",
            "abs_pow:s=abc,xi=0.3",
            "abs_pow:s=0.5,xi=0.3,k=1",
            "abs_pow:s=-1,xi=0.3",
            "abs_pow:s=0.5,xi=1.5",
            "abs:xi=0.2",
            "wave:f=2",
            "mono:d=-1",
            "spline2:xi=0.3,",
        ] {
            assert!(
                matches!(
                    TestFunction::parse(bad),
                    Err(Error::FunctionSpec { .. }) | Err(Error::Domain(_))
                ),
                "{bad} should be rejected"
            );
        }
    }

    #[test]
    fn spline_integral_matches_oracle() {
        let f = TestFunction::parse("spline2:xi=0.3").unwrap();
        let oracle = adaptive_simpson(&|x| f.eval(x), -1.0, 0.3, 1e-14)
            + adaptive_simpson(&|x| f.eval(x), 0.3, 1.0, 1e-14);
        assert!((oracle - f.exact_integral()).abs() < 1e-13);
    }
}
