//! Quadrature errors of both rules on single Chebyshev polynomials.
//!
//! Sampling `T_m` on an `n`-point node set aliases it onto a low-degree
//! polynomial. For Clenshaw-Curtis with `m = 2j(n-1) + 2r`,
//! `-(n-2) <= 2r <= n-1`, the aliasing `T_m(x_k) = T_{2|r|}(x_k)` is exact, so
//! `E_n^C(T_m) = I(T_m) - I(T_{2|r|})`. For Gauss-Legendre with
//! `m = j(4n+2) + 2r`, `|r| <= n`, it only holds asymptotically and the error
//! is modelled by its leading term `(-1)^j 2 / (4r^2 - 1)`, or `(-1)^j pi / 2`
//! on the boundary `|r| = n`.
//!
//! Both decompositions are unique. For CC the even values of `2r` in
//! `[-(n-2), n-1]` are `n - 1` consecutive even numbers, one per even residue
//! class mod `2(n-1)`. For Gauss the even values `2r` in `[-2n, 2n]` are
//! `2n + 1` consecutive even numbers, one per even residue class mod `4n + 2`;
//! in particular `r = n` and `r = -n` never describe the same `m`.
//!
//! Only even `m` matter: odd `T_m` integrate to zero and both rules are symmetric.

use crate::csv::{fmt_f64, render};
use crate::error::{domain, Result};
use crate::quadrature::{gauss_legendre, Family, QuadratureRule};
use std::f64::consts::PI;

/// `m = period(n) * j + 2r` with `period = 2(n-1)` (CC) or `4n + 2` (Gauss).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AliasDecomposition {
    pub family: Family,
    pub n: usize,
    pub m: u64,
    pub j: u64,
    pub r: i64,
}

impl AliasDecomposition {
    pub fn period(&self) -> u64 {
        match self.family {
            Family::ClenshawCurtis => 2 * (self.n as u64 - 1),
            Family::GaussLegendre => 4 * self.n as u64 + 2,
        }
    }

    /// `j * period + 2r`; equals `m` for every decomposition built here.
    pub fn reconstruct(&self) -> i64 {
        (self.j * self.period()) as i64 + 2 * self.r
    }
}

pub fn cc_decompose(n: usize, m: u64) -> Result<AliasDecomposition> {
    if n < 2 {
        return domain(format!("Clenshaw-Curtis needs n >= 2, got {n}"));
    }
    if m % 2 == 1 {
        return domain(format!(
            "alias decomposition is defined for even m, got {m}"
        ));
    }
    let period = 2 * (n as u64 - 1);
    let rem = m % period;
    let two_r = if rem <= n as u64 - 1 {
        rem as i64
    } else {
        rem as i64 - period as i64
    };
    let j = ((m as i64 - two_r) / period as i64) as u64;
    Ok(AliasDecomposition {
        family: Family::ClenshawCurtis,
        n,
        m,
        j,
        r: two_r / 2,
    })
}

/// Exact `E_n^C(T_m)`.
pub fn cc_error_t(n: usize, m: u64) -> Result<f64> {
    if n < 2 {
        return domain(format!("Clenshaw-Curtis needs n >= 2, got {n}"));
    }
    if m % 2 == 1 || m < n as u64 {
        return Ok(0.0);
    }
    let d = cc_decompose(n, m)?;
    let r = d.r as f64;
    let mf = m as f64;
    Ok(-2.0 / (mf * mf - 1.0) + 2.0 / (4.0 * r * r - 1.0))
}

pub fn gauss_decompose(n: usize, m: u64) -> Result<AliasDecomposition> {
    if n < 1 {
        return domain("Gauss-Legendre needs n >= 1");
    }
    if m % 2 == 1 {
        return domain(format!(
            "alias decomposition is defined for even m, got {m}"
        ));
    }
    if m < 2 * n as u64 {
        return domain(format!(
            "the {n}-point Gauss rule is exact for m = {m} < 2n; no alias decomposition"
        ));
    }
    let period = 4 * n as u64 + 2;
    let rem = m % period;
    let two_r = if rem <= 2 * n as u64 {
        rem as i64
    } else {
        rem as i64 - period as i64
    };
    let j = ((m as i64 - two_r) / period as i64) as u64;
    Ok(AliasDecomposition {
        family: Family::GaussLegendre,
        n,
        m,
        j,
        r: two_r / 2,
    })
}

/// Leading-order model of `E_n^G(T_m)` for even `m >= 2n`.
pub fn gauss_error_t_model(n: usize, m: u64) -> Result<f64> {
    let d = gauss_decompose(n, m)?;
    let sign = if d.j % 2 == 0 { 1.0 } else { -1.0 };
    if d.r.unsigned_abs() as usize == n {
        Ok(sign * PI / 2.0)
    } else {
        let r = d.r as f64;
        Ok(sign * 2.0 / (4.0 * r * r - 1.0))
    }
}

/// Measured `E_n^G(T_m)` minus the model, with a freshly built rule.
pub fn gauss_model_residual(n: usize, m: u64) -> Result<f64> {
    let rule = gauss_legendre(n)?;
    gauss_model_residual_with(&rule, m)
}

/// As [`gauss_model_residual`] for a prebuilt Gauss rule.
pub fn gauss_model_residual_with(rule: &QuadratureRule, m: u64) -> Result<f64> {
    if rule.family() != Family::GaussLegendre {
        return domain("residual model applies to Gauss-Legendre rules only");
    }
    let model = gauss_error_t_model(rule.n(), m)?;
    Ok(rule.error_on_cheb_t(m) - model)
}

/// One row of an aliasing table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AliasRow {
    pub m: u64,
    /// `(j, r)` where the decomposition is defined.
    pub jr: Option<(u64, i64)>,
    pub measured: f64,
    pub model: f64,
    pub residual: f64,
}

/// Measured vs. closed-form (CC) or modelled (Gauss) errors for `m` in `[m_min, m_max]`.
///
/// Odd `m` rows are exactly zero. Even `m` below the exactness degree have model 0.
pub fn alias_table(rule: &QuadratureRule, m_min: u64, m_max: u64) -> Result<Vec<AliasRow>> {
    if m_min > m_max {
        return domain(format!("empty m range [{m_min}, {m_max}]"));
    }
    let n = rule.n();
    let mut rows = Vec::with_capacity((m_max - m_min + 1) as usize);
    for m in m_min..=m_max {
        if m % 2 == 1 {
            rows.push(AliasRow {
                m,
                jr: None,
                measured: 0.0,
                model: 0.0,
                residual: 0.0,
            });
            continue;
        }
        let measured = rule.error_on_cheb_t(m);
        let (jr, model) = match rule.family() {
            Family::ClenshawCurtis => {
                let d = cc_decompose(n, m)?;
                (Some((d.j, d.r)), cc_error_t(n, m)?)
            }
            Family::GaussLegendre if m >= 2 * n as u64 => {
                let d = gauss_decompose(n, m)?;
                (Some((d.j, d.r)), gauss_error_t_model(n, m)?)
            }
            Family::GaussLegendre => (None, 0.0),
        };
        rows.push(AliasRow {
            m,
            jr,
            measured,
            model,
            residual: measured - model,
        });
    }
    Ok(rows)
}

/// CSV with header `m,j,r,measured,model,residual`; undefined `j, r` are left empty.
pub fn alias_table_csv(rows: &[AliasRow]) -> String {
    render(
        "m,j,r,measured,model,residual",
        rows.iter().map(|row| {
            let (j, r) = match row.jr {
                Some((j, r)) => (j.to_string(), r.to_string()),
                None => (String::new(), String::new()),
            };
            vec![
                row.m.to_string(),
                j,
                r,
                fmt_f64(row.measured),
                fmt_f64(row.model),
                fmt_f64(row.residual),
            ]
        }),
    )
}
