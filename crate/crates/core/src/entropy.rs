//! Shannon, Rényi and Mathai–Haubold entropies (natural log).
//!
//! Quadrature integrates `f log f` or `f^β` directly in `x`. The series route
//! works in `u = e^{−λx}`, where the density is `(K/λ)·P(u)^{1/γ}·(1 − θ + 2θu)`
//! with `P(u) = 1 − q·u(1 − θ + θu)`, and every integral reduces to Beta
//! functions of the expansion coefficients.

use serde::{Deserialize, Serialize};
use statrs::function::beta::ln_beta;

use crate::error::{NwteError, Result};
use crate::moments::{breakpoints, quad_cfg, quadrature_upper, Method};
use crate::nwte::{self, NwteParams};
use crate::quadrature::integrate_pieces;
use crate::series::{self, inner_poly, pdf_lead, sum_rows, Coefficients, SeriesSpec};

/// Densities below this contribute nothing to the entropy integrands.
const DENSITY_FLOOR: f64 = 1e-300;

/// Which entropy to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "order", rename_all = "snake_case")]
pub enum EntropyOrder {
    Shannon,
    Renyi(f64),
    MathaiHaubold(f64),
}

impl EntropyOrder {
    pub fn validate(&self) -> Result<()> {
        match *self {
            EntropyOrder::Shannon => Ok(()),
            EntropyOrder::Renyi(b) => check_order("beta", b),
            EntropyOrder::MathaiHaubold(d) => check_order("delta", d),
        }
    }
}

fn check_order(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 && v != 1.0 {
        Ok(())
    } else {
        Err(NwteError::InvalidParameter {
            name,
            value: v,
            reason: "entropy order must be positive and different from 1",
        })
    }
}

/// Evaluates the entropy selected by `order`.
pub fn entropy(p: &NwteParams, order: EntropyOrder, method: Method) -> Result<f64> {
    match order {
        EntropyOrder::Shannon => shannon_entropy(p, method),
        EntropyOrder::Renyi(b) => renyi_entropy(p, b, method),
        EntropyOrder::MathaiHaubold(d) => mathai_haubold_entropy(p, d, method),
    }
}

/// `−∫ f log f`.
pub fn shannon_entropy(p: &NwteParams, method: Method) -> Result<f64> {
    match method {
        Method::Quadrature => {
            let end = quadrature_upper(p)? + 30.0 / p.lambda();
            let pts = breakpoints(p, 0.0, end)?;
            integrate_pieces(
                |x| {
                    let f = nwte::pdf(p, x).unwrap_or(0.0);
                    if f < DENSITY_FLOOR {
                        0.0
                    } else {
                        -f * nwte::ln_pdf(p, x).unwrap_or(0.0)
                    }
                },
                &pts,
                quad_cfg(),
            )
        }
        Method::Series(spec) => shannon_series(p, &spec),
    }
}

/// `(1/(1−β)) log ∫ f^β`.
pub fn renyi_entropy(p: &NwteParams, beta: f64, method: Method) -> Result<f64> {
    check_order("beta", beta)?;
    Ok(power_integral(p, beta, method)?.ln() / (1.0 - beta))
}

/// `(∫ f^{2−δ} − 1)/(δ − 1)`; the integral diverges for `δ ≥ 2`.
pub fn mathai_haubold_entropy(p: &NwteParams, delta: f64, method: Method) -> Result<f64> {
    check_order("delta", delta)?;
    if delta >= 2.0 {
        return Err(NwteError::Domain {
            name: "delta",
            value: delta,
            reason: "the integral of f^(2-delta) diverges for delta >= 2",
        });
    }
    Ok((power_integral(p, 2.0 - delta, method)? - 1.0) / (delta - 1.0))
}

/// `∫_0^∞ f(x)^β dx` for `β > 0`.
pub fn power_integral(p: &NwteParams, beta: f64, method: Method) -> Result<f64> {
    match method {
        Method::Quadrature => {
            // f^β decays like e^{−βλx}, so small orders need a longer tail.
            let end = quadrature_upper(p)? + 30.0 / (p.lambda() * beta.min(1.0));
            let pts = breakpoints(p, 0.0, end)?;
            integrate_pieces(
                |x| {
                    let f = nwte::pdf(p, x).unwrap_or(0.0);
                    if f < DENSITY_FLOOR {
                        0.0
                    } else {
                        (beta * nwte::ln_pdf(p, x).unwrap_or(f64::NEG_INFINITY)).exp()
                    }
                },
                &pts,
                quad_cfg(),
            )
        }
        Method::Series(spec) => power_integral_series(p, beta, &spec),
    }
}

fn beta_fn(a: f64, b: f64) -> f64 {
    ln_beta(a, b).exp()
}

/// `H = −log K − (1/γ)E[log P(U)] + λE[X] − E[log(1 − θ + 2θU)]`.
fn shannon_series(p: &NwteParams, spec: &SeriesSpec) -> Result<f64> {
    let lambda = p.lambda();
    let th = p.theta();
    let (p1, p2) = inner_poly(p);
    let moment_u = |n: usize| series::mgf_series(p, -lambda * n as f64, spec);

    let log_coeffs = series::log_coefficients(p1, p2, spec.max_outer_index + 1);
    let e_log_p = sum_rows(spec, |n| {
        if n == 0 || log_coeffs[n] == 0.0 {
            return Ok(0.0);
        }
        Ok(log_coeffs[n] * moment_u(n)?)
    })?;

    let e_log_w = if th <= 0.0 {
        // 1 − θ + 2θu = (1 − θ)(1 − ρu)
        let rho = -2.0 * th / (1.0 - th);
        let tail = sum_rows(spec, |l| {
            if l == 0 || rho == 0.0 {
                return Ok(0.0);
            }
            Ok(rho.powi(l as i32) / l as f64 * moment_u(l)?)
        })?;
        (1.0 - th).ln() - tail
    } else {
        // 1 − θ + 2θu = (1 + θ)(1 − ρ(1 − u))
        let rho = 2.0 * th / (1.0 + th);
        let tail = sum_rows(spec, |m| {
            if m == 0 {
                return Ok(0.0);
            }
            Ok(rho.powi(m as i32) / m as f64 * one_minus_u_moment(p, m, spec)?)
        })?;
        (1.0 + th).ln() - tail
    };

    let mean = series::moment_series(p, 1, spec)?;
    Ok(-pdf_lead(p).ln() - e_log_p / p.gamma() + lambda * mean - e_log_w)
}

/// `E[(1 − U)^m] = (K/λ) Σ_j a_j [(1−θ)B(j+1, m+1) + 2θB(j+2, m+1)]`.
fn one_minus_u_moment(p: &NwteParams, m: usize, spec: &SeriesSpec) -> Result<f64> {
    let th = p.theta();
    let mf = m as f64;
    let mut a = Coefficients::new(p, 1.0 / p.gamma());
    let mut b = beta_fn(1.0, mf + 1.0);
    let s = sum_rows(spec, |j| {
        let jf = j as f64;
        let b_next = b * (jf + 1.0) / (jf + mf + 2.0);
        let term = a.get(j) * ((1.0 - th) * b + 2.0 * th * b_next);
        b = b_next;
        Ok(term)
    })?;
    Ok(pdf_lead(p) / p.lambda() * s)
}

/// `∫ f^β dx = (K^β/λ) ∫_0^1 P(u)^{β/γ} (1 − θ + 2θu)^β u^{β−1} du`.
fn power_integral_series(p: &NwteParams, beta: f64, spec: &SeriesSpec) -> Result<f64> {
    let th = p.theta();
    let scale = (beta * pdf_lead(p).ln()).exp() / p.lambda();
    let mut c = Coefficients::new(p, beta / p.gamma());
    let s = if th <= 0.0 {
        // (1 − θ)^β (1 − ρu)^β, Cauchy product with the P-coefficients.
        let rho = -2.0 * th / (1.0 - th);
        let w = series::power_coefficients(beta, -rho, 0.0, spec.max_outer_index + 1);
        let cs: Vec<f64> = (0..=spec.max_outer_index).map(|n| c.get(n)).collect();
        let lead = (beta * (1.0 - th).ln()).exp();
        sum_rows(spec, |n| {
            let g: f64 = (0..=n).map(|j| cs[j] * w[n - j]).sum();
            Ok(lead * g / (n as f64 + beta))
        })?
    } else {
        // (1 + θ)^β Σ_j binom(β, j)(−ρ)^j (1 − u)^j against u^{n+β−1}.
        let rho = 2.0 * th / (1.0 + th);
        let lead = (beta * (1.0 + th).ln()).exp();
        let cs: Vec<f64> = (0..=spec.max_outer_index).map(|n| c.get(n)).collect();
        sum_rows(spec, |j| {
            let jf = j as f64;
            let coef = series::gen_binomial(beta, j) * (-rho).powi(j as i32);
            if coef == 0.0 {
                return Ok(0.0);
            }
            let mut b = beta_fn(beta, jf + 1.0);
            let inner = sum_rows(spec, |n| {
                let nf = n as f64;
                let term = cs[n] * b;
                b *= (nf + beta) / (nf + beta + jf + 1.0);
                Ok(term)
            })?;
            Ok(lead * coef * inner)
        })?
    };
    Ok(scale * s)
}
