//! Series expansions of the NWTE functions in powers of `u = e^{−λx}`.
//!
//! Every expansion starts from the binomial series of
//! `[1 − q·u(1 − θ + θu)]^ν` with `q = γ/(1+γ)`, whose double-indexed
//! coefficients are
//!
//! ```text
//! binom(ν, i) · binom(i, k) · (−q)^i · (1 − θ)^{i−k} · θ^k      (exponent i + k)
//! ```
//!
//! The tables are always built from this unfactored product, which stays
//! finite at θ = ±1. For summation the terms are grouped by their exponent
//! `n = i + k`; the grouped coefficients are generated directly by the
//! power-series recurrence for `(1 + p₁u + p₂u²)^ν`, which avoids the
//! cancellation between the `k` terms when θ < 0.

use statrs::function::gamma::{gamma_li, gamma_ui, ln_gamma};

use crate::error::{NwteError, Result};
use crate::nwte::NwteParams;

/// Truncation policy for the infinite expansions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSpec {
    /// Hard cap on the outer (exponent) index.
    pub max_outer_index: usize,
    /// Summation stops once three consecutive rows fall below `abs_tolerance / 10`.
    pub abs_tolerance: f64,
    /// Minimum distance from |θ| = 1 for the factored `(θ/(1−θ))^k` coefficient form.
    pub theta_singularity_guard: f64,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        Self {
            max_outer_index: 500,
            abs_tolerance: 1e-14,
            theta_singularity_guard: 1e-6,
        }
    }
}

impl SeriesSpec {
    pub fn new(max_outer_index: usize, abs_tolerance: f64) -> Result<Self> {
        if max_outer_index < 1 {
            return Err(NwteError::InvalidParameter {
                name: "max_outer_index",
                value: max_outer_index as f64,
                reason: "need at least one term",
            });
        }
        if !(abs_tolerance > 0.0) {
            return Err(NwteError::InvalidParameter {
                name: "abs_tolerance",
                value: abs_tolerance,
                reason: "tolerance must be positive",
            });
        }
        Ok(Self {
            max_outer_index,
            abs_tolerance,
            ..Self::default()
        })
    }

    pub(crate) fn row_threshold(&self) -> f64 {
        self.abs_tolerance / 10.0
    }
}

/// Sums `row(n)` for `n = 0, 1, …` under the truncation policy.
pub(crate) fn sum_rows<F>(spec: &SeriesSpec, mut row: F) -> Result<f64>
where
    F: FnMut(usize) -> Result<f64>,
{
    let mut total = 0.0;
    let mut comp = 0.0;
    let mut quiet = 0;
    let mut last = f64::INFINITY;
    for n in 0..=spec.max_outer_index {
        let r = row(n)?;
        // Kahan summation; row magnitudes span many decades.
        let y = r - comp;
        let t = total + y;
        comp = (t - total) - y;
        total = t;
        last = r.abs();
        if last < spec.row_threshold() {
            quiet += 1;
            if quiet == 3 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
    }
    Err(NwteError::TruncationFailure {
        max_terms: spec.max_outer_index,
        tolerance: spec.abs_tolerance,
        last_row: last,
    })
}

/// Generalized binomial coefficient `binom(nu, i)` for real `nu`.
pub fn gen_binomial(nu: f64, i: usize) -> f64 {
    let mut c = 1.0;
    for j in 0..i {
        c *= (nu - j as f64) / (j as f64 + 1.0);
    }
    c
}

fn binomial(n: usize, k: usize) -> f64 {
    gen_binomial(n as f64, k)
}

/// Coefficients of `(1 + p1·u + p2·u²)^nu` up to `u^{len−1}`.
pub fn power_coefficients(nu: f64, p1: f64, p2: f64, len: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(len);
    if len == 0 {
        return c;
    }
    c.push(1.0);
    for n in 1..len {
        let nf = n as f64;
        let mut s = (nu + 1.0 - nf) * p1 * c[n - 1];
        if n >= 2 {
            s += (2.0 * (nu + 1.0) - nf) * p2 * c[n - 2];
        }
        c.push(s / nf);
    }
    c
}

/// Coefficients of `log(1 + p1·u + p2·u²)` up to `u^{len−1}` (the constant term is 0).
pub fn log_coefficients(p1: f64, p2: f64, len: usize) -> Vec<f64> {
    let coeff = |j: usize| match j {
        1 => p1,
        2 => p2,
        _ => 0.0,
    };
    let mut d = vec![0.0; len];
    // n·d_n = n·p_n − Σ_{k=1}^{n−1} k·d_k·p_{n−k}
    for n in 1..len {
        let mut s = n as f64 * coeff(n);
        for k in n.saturating_sub(2).max(1)..n {
            s -= k as f64 * d[k] * coeff(n - k);
        }
        d[n] = s / n as f64;
    }
    d
}

/// `(p1, p2)` with `1 − q·u(1 − θ + θu) = 1 + p1·u + p2·u²`.
pub(crate) fn inner_poly(p: &NwteParams) -> (f64, f64) {
    let q = p.q();
    (-q * (1.0 - p.theta()), -q * p.theta())
}

/// Grouped coefficients: `Σ_{i+k=n}` of the double-indexed table for power `nu`.
pub fn grouped_coefficients(p: &NwteParams, nu: f64, len: usize) -> Vec<f64> {
    let (p1, p2) = inner_poly(p);
    power_coefficients(nu, p1, p2, len)
}

/// Which double-indexed table a [`SeriesCoefficients`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    /// Power `1/γ + 1` (cdf and survival).
    H,
    /// Power `1/γ` (pdf).
    A,
    /// `A` scaled by `λc/(c−1)`.
    B,
    /// Power `β/γ` (Rényi).
    C,
    /// `binom(β, j)·binom(j, ℓ)·(−θ)^j·(−2)^ℓ`.
    D,
    /// Product `[λ(1+γ)/(c−1)]^β · C_{i,k} · D_{j,ℓ}`.
    F,
    /// Hazard geometric-series coefficients, power `m(1/γ+1) + 1/γ`, scaled by λ.
    G,
}

/// A materialized coefficient table with the exponent each entry multiplies.
#[derive(Debug, Clone)]
pub struct SeriesCoefficients {
    pub kind: CoefficientKind,
    /// `(indices, exponent, value)`; indices are `(i, k)`, `(j, ℓ)`, `(i, k, j, ℓ)` or `(i, k, m)`.
    pub entries: Vec<(Vec<usize>, usize, f64)>,
}

fn ik_table(p: &NwteParams, nu: f64, rows: usize, scale: f64) -> Vec<(Vec<usize>, usize, f64)> {
    let q = p.q();
    let th = p.theta();
    let mut out = Vec::new();
    for i in 0..rows {
        let bi = gen_binomial(nu, i) * (-q).powi(i as i32) * scale;
        for k in 0..=i {
            let v = bi
                * binomial(i, k)
                * (1.0 - th).powi((i - k) as i32)
                * th.powi(k as i32);
            out.push((vec![i, k], i + k, v));
        }
    }
    out
}

impl SeriesCoefficients {
    pub fn h(p: &NwteParams, rows: usize) -> Self {
        Self {
            kind: CoefficientKind::H,
            entries: ik_table(p, p.power(), rows, 1.0),
        }
    }

    pub fn a(p: &NwteParams, rows: usize) -> Self {
        Self {
            kind: CoefficientKind::A,
            entries: ik_table(p, 1.0 / p.gamma(), rows, 1.0),
        }
    }

    pub fn b(p: &NwteParams, rows: usize) -> Self {
        Self {
            kind: CoefficientKind::B,
            entries: ik_table(p, 1.0 / p.gamma(), rows, pdf_lead(p)),
        }
    }

    pub fn c(p: &NwteParams, beta: f64, rows: usize) -> Self {
        Self {
            kind: CoefficientKind::C,
            entries: ik_table(p, beta / p.gamma(), rows, 1.0),
        }
    }

    pub fn d(theta: f64, beta: f64, rows: usize) -> Self {
        let mut entries = Vec::new();
        for j in 0..rows {
            let bj = gen_binomial(beta, j) * (-theta).powi(j as i32);
            for l in 0..=j {
                entries.push((vec![j, l], l, bj * binomial(j, l) * (-2.0f64).powi(l as i32)));
            }
        }
        Self {
            kind: CoefficientKind::D,
            entries,
        }
    }

    pub fn f(p: &NwteParams, beta: f64, rows_ik: usize, rows_jl: usize) -> Self {
        let lead = (p.lambda() * (1.0 + p.gamma()) / p.normalizer_minus_one()).powf(beta);
        let c = Self::c(p, beta, rows_ik);
        let d = Self::d(p.theta(), beta, rows_jl);
        let mut entries = Vec::with_capacity(c.entries.len() * d.entries.len());
        for (ci, ce, cv) in &c.entries {
            for (di, de, dv) in &d.entries {
                let idx = vec![ci[0], ci[1], di[0], di[1]];
                entries.push((idx, ce + de, lead * cv * dv));
            }
        }
        Self {
            kind: CoefficientKind::F,
            entries,
        }
    }

    pub fn g(p: &NwteParams, rows: usize, m: usize) -> Self {
        let nu = m as f64 * p.power() + 1.0 / p.gamma();
        let entries = ik_table(p, nu, rows, p.lambda())
            .into_iter()
            .map(|(mut idx, e, v)| {
                idx.push(m);
                (idx, e, v)
            })
            .collect();
        Self {
            kind: CoefficientKind::G,
            entries,
        }
    }

    /// H_{i,k} in the factored form `binom·binom·((γθ−γ)/(1+γ))^i·(θ/(1−θ))^k`.
    ///
    /// Only defined away from θ = 1, where the factor `θ/(1−θ)` diverges.
    pub fn h_factored(p: &NwteParams, rows: usize, spec: &SeriesSpec) -> Result<Self> {
        let th = p.theta();
        if 1.0 - th.abs() < spec.theta_singularity_guard {
            return Err(NwteError::Domain {
                name: "theta",
                value: th,
                reason: "factored coefficients are singular near |theta| = 1",
            });
        }
        let g = p.gamma();
        let base = (g * th - g) / (1.0 + g);
        let ratio = th / (1.0 - th);
        let mut entries = Vec::new();
        for i in 0..rows {
            for k in 0..=i {
                let v = gen_binomial(p.power(), i)
                    * binomial(i, k)
                    * base.powi(i as i32)
                    * ratio.powi(k as i32);
                entries.push((vec![i, k], i + k, v));
            }
        }
        Ok(Self {
            kind: CoefficientKind::H,
            entries,
        })
    }

    /// Sums entries sharing an exponent; index `n` of the result multiplies `u^n`.
    pub fn grouped(&self) -> Vec<f64> {
        let len = self.entries.iter().map(|e| e.1).max().map_or(0, |m| m + 1);
        let mut out = vec![0.0; len];
        for (_, e, v) in &self.entries {
            out[*e] += v;
        }
        out
    }

    pub fn get(&self, idx: &[usize]) -> Option<f64> {
        self.entries
            .iter()
            .find(|(i, _, _)| i.as_slice() == idx)
            .map(|e| e.2)
    }
}

/// `λc/(c − 1)`, the factor turning A into B.
pub(crate) fn pdf_lead(p: &NwteParams) -> f64 {
    p.lambda() / -(-p.log_c()).exp_m1()
}

/// Lazily extended coefficient sequence for one power.
pub(crate) struct Coefficients {
    nu: f64,
    p1: f64,
    p2: f64,
    values: Vec<f64>,
}

impl Coefficients {
    pub(crate) fn new(p: &NwteParams, nu: f64) -> Self {
        let (p1, p2) = inner_poly(p);
        Self {
            nu,
            p1,
            p2,
            values: vec![1.0],
        }
    }

    pub(crate) fn get(&mut self, n: usize) -> f64 {
        while self.values.len() <= n {
            let m = self.values.len();
            let mf = m as f64;
            let mut s = (self.nu + 1.0 - mf) * self.p1 * self.values[m - 1];
            if m >= 2 {
                s += (2.0 * (self.nu + 1.0) - mf) * self.p2 * self.values[m - 2];
            }
            self.values.push(s / mf);
        }
        self.values[n]
    }
}

/// Sums `Σ_n B_n [(1−θ)·w(n+1) + 2θ·w(n+2)]`, the shape every pdf-based expansion takes.
pub(crate) fn pdf_weighted_sum<W>(p: &NwteParams, spec: &SeriesSpec, mut w: W) -> Result<f64>
where
    W: FnMut(usize) -> f64,
{
    let lead = pdf_lead(p);
    let th = p.theta();
    let mut a = Coefficients::new(p, 1.0 / p.gamma());
    sum_rows(spec, |n| {
        let an = a.get(n);
        if an == 0.0 {
            return Ok(0.0);
        }
        Ok(lead * an * ((1.0 - th) * w(n + 1) + 2.0 * th * w(n + 2)))
    })
}

pub fn cdf_series(p: &NwteParams, x: f64, spec: &SeriesSpec) -> Result<f64> {
    let u = (-p.lambda() * x).exp();
    let mut h = Coefficients::new(p, p.power());
    let s = sum_rows(spec, |n| Ok(h.get(n) * u.powi(n as i32)))?;
    Ok((p.log_c().exp() * s - 1.0) / p.normalizer_minus_one())
}

pub fn survival_series(p: &NwteParams, x: f64, spec: &SeriesSpec) -> Result<f64> {
    let u = (-p.lambda() * x).exp();
    let mut h = Coefficients::new(p, p.power());
    // Start at n = 1: the n = 0 coefficient is exactly 1 and cancels the leading 1.
    let s = sum_rows(spec, |n| Ok(h.get(n + 1) * u.powi(n as i32 + 1)))?;
    Ok(-s / -(-p.log_c()).exp_m1())
}

pub fn pdf_series(p: &NwteParams, x: f64, spec: &SeriesSpec) -> Result<f64> {
    let u = (-p.lambda() * x).exp();
    pdf_weighted_sum(p, spec, |m| u.powi(m as i32))
}

/// Hazard as the ratio of the pdf and survival expansions.
pub fn hazard_series(p: &NwteParams, x: f64, spec: &SeriesSpec) -> Result<f64> {
    Ok(pdf_series(p, x, spec)? / survival_series(p, x, spec)?)
}

fn ln_factorial(r: u32) -> f64 {
    ln_gamma(r as f64 + 1.0)
}

/// `μ_r = Γ(r+1)/λ^{r+1} Σ_n B_n [(1−θ)/(n+1)^{r+1} + 2θ/(n+2)^{r+1}]`.
pub fn moment_series(p: &NwteParams, r: u32, spec: &SeriesSpec) -> Result<f64> {
    if r == 0 {
        return Ok(1.0);
    }
    let rp = r as i32 + 1;
    let s = pdf_weighted_sum(p, spec, |m| (m as f64).powi(-rp))?;
    Ok((ln_factorial(r) - rp as f64 * p.lambda().ln()).exp() * s)
}

/// `M_X(t) = Σ_n B_n [(1−θ)/(λ(n+1) − t) + 2θ/(λ(n+2) − t)]`, for `t < λ`.
pub fn mgf_series(p: &NwteParams, t: f64, spec: &SeriesSpec) -> Result<f64> {
    if !(t < p.lambda()) {
        return Err(NwteError::Domain {
            name: "t",
            value: t,
            reason: "moment generating function requires t < lambda",
        });
    }
    let l = p.lambda();
    pdf_weighted_sum(p, spec, |m| 1.0 / (l * m as f64 - t))
}

/// Lower incomplete moment `J_r(t)` via the lower incomplete gamma function.
pub fn incomplete_moment_series(p: &NwteParams, r: u32, t: f64, spec: &SeriesSpec) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    if t == f64::INFINITY {
        return moment_series(p, r, spec);
    }
    let s = r as f64 + 1.0;
    let l = p.lambda();
    let sum = pdf_weighted_sum(p, spec, |m| {
        let mf = m as f64;
        gamma_li(s, l * mf * t) / mf.powf(s)
    })?;
    Ok(sum / l.powf(s))
}

/// Upper incomplete moment `∫_t^∞ x^r f(x) dx` via the upper incomplete gamma function.
pub fn upper_incomplete_moment_series(
    p: &NwteParams,
    r: u32,
    t: f64,
    spec: &SeriesSpec,
) -> Result<f64> {
    if t == 0.0 {
        return moment_series(p, r, spec);
    }
    if t == f64::INFINITY {
        return Ok(0.0);
    }
    let s = r as f64 + 1.0;
    let l = p.lambda();
    let sum = pdf_weighted_sum(p, spec, |m| {
        let mf = m as f64;
        gamma_ui(s, l * mf * t) / mf.powf(s)
    })?;
    Ok(sum / l.powf(s))
}
