//! Maximum-likelihood fitting for NWTE and the baseline families.
//!
//! Parameters are optimized on an unconstrained scale: `log p` for positive
//! parameters and `artanh(p/(1 − ε))` for those in `[−1, 1]`. Each start runs
//! Nelder–Mead; the best branch is polished with damped Newton steps using
//! the analytic NWTE score (finite differences for the baselines). Standard
//! errors come from the observed information, the negative Hessian of the
//! log-likelihood by central second differences.

pub mod optimizer;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{model_loglik, Bound, Family, ModelSpec};
use crate::error::{NwteError, Result};
use crate::nwte::{self, NwteParams};

pub use optimizer::{nelder_mead, Minimum};

/// `ℓ = Σ log f(x_i)` for NWTE.
pub fn nwte_loglik(p: &NwteParams, data: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for (index, &x) in data.iter().enumerate() {
        let v = nwte::ln_pdf(p, x)?;
        if !v.is_finite() {
            return Err(NwteError::NonFiniteLikelihood { index, value: x });
        }
        total += v;
    }
    Ok(total)
}

/// `d/dγ log((1+γ)^{1/γ+1} − 1)` written as `c/(c−1)·(1/γ − log(1+γ)/γ²)`.
fn log_normalizer_slope(p: &NwteParams) -> f64 {
    let g = p.gamma();
    let inner = if g < 1e-4 {
        // 1/γ − log1p(γ)/γ² = 1/2 − γ/3 + γ²/4 − …
        0.5 - g / 3.0 + g * g / 4.0
    } else {
        1.0 / g - g.ln_1p() / (g * g)
    };
    let ratio = 1.0 / -(-p.normalizer_minus_one().ln_1p()).exp_m1();
    ratio * inner
}

/// Analytic gradient `(∂ℓ/∂λ, ∂ℓ/∂γ, ∂ℓ/∂θ)`.
pub fn nwte_score(p: &NwteParams, data: &[f64]) -> Result<[f64; 3]> {
    let (l, g, th) = (p.lambda(), p.gamma(), p.theta());
    let n = data.len() as f64;
    let mut dl = n / l;
    let mut dg = n * (1.0 / (1.0 + g) - log_normalizer_slope(p));
    let mut dt = 0.0;
    for (index, &x) in data.iter().enumerate() {
        if !(x >= 0.0) {
            return Err(NwteError::Domain {
                name: "x",
                value: x,
                reason: "observations must be nonnegative",
            });
        }
        let e = (-l * x).exp();
        let tail = e * (1.0 - th + th * e);
        let d = 1.0 + g - g * tail;
        let w = 1.0 - th + 2.0 * th * e;
        if !(w > 0.0) {
            return Err(NwteError::NonFiniteLikelihood { index, value: x });
        }
        dl += -x - 2.0 * th * x * e / w + x * (e * (1.0 - th) + 2.0 * th * e * e) / d;
        dg += (1.0 - tail) / (g * d) - d.ln() / (g * g);
        dt += (2.0 * e - 1.0) / w - e * (e - 1.0) / d;
    }
    Ok([dl, dg, dt])
}

/// Optimizer settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    /// Number of starts taken from the initial boxes; 0 uses the family's full default grid.
    pub multistart_count: usize,
    /// Optional `(low, high)` start box per parameter, in natural units. Positive
    /// parameters are spaced logarithmically.
    pub initial_boxes: Option<Vec<(f64, f64)>>,
    /// Distance kept from the ends of `[−1, 1]`.
    pub bound_margin: f64,
    pub f_tol: f64,
    pub x_tol: f64,
    /// Evaluations per start.
    pub max_evals: usize,
    /// Scaled-score threshold for declaring convergence.
    pub score_tol: f64,
    /// Relative step of the second differences used for standard errors.
    pub hessian_step: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            multistart_count: 0,
            initial_boxes: None,
            bound_margin: 1e-9,
            f_tol: 1e-13,
            x_tol: 1e-9,
            max_evals: 20_000,
            score_tol: 1e-4,
            hessian_step: 1e-4,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        let positive = [
            ("f_tol", self.f_tol),
            ("x_tol", self.x_tol),
            ("score_tol", self.score_tol),
            ("hessian_step", self.hessian_step),
            ("bound_margin", self.bound_margin),
        ];
        for (name, v) in positive {
            if !(v > 0.0) {
                return Err(NwteError::InvalidParameter {
                    name,
                    value: v,
                    reason: "optimizer tolerances must be positive",
                });
            }
        }
        Ok(())
    }
}

/// Result of [`fit_mle`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: ModelSpec,
    pub names: Vec<String>,
    pub estimates: Vec<f64>,
    /// `None` when the observed information is singular or indefinite.
    pub std_errors: Option<Vec<f64>>,
    pub loglik: f64,
    pub converged: bool,
    pub iterations: usize,
    pub evaluations: usize,
    pub starts: usize,
    /// Max-norm of the score on the optimization scale (`p·∂ℓ/∂p` for positive parameters).
    pub score_norm_at_optimum: f64,
}

struct Transform {
    bounds: Vec<Bound>,
    margin: f64,
}

impl Transform {
    fn to_natural(&self, y: &[f64]) -> Vec<f64> {
        y.iter()
            .zip(&self.bounds)
            .map(|(&v, b)| match b {
                Bound::Positive => v.exp(),
                Bound::Symmetric => (1.0 - self.margin) * v.tanh(),
            })
            .collect()
    }

    fn to_free(&self, p: &[f64]) -> Vec<f64> {
        p.iter()
            .zip(&self.bounds)
            .map(|(&v, b)| match b {
                Bound::Positive => v.ln(),
                Bound::Symmetric => (v / (1.0 - self.margin)).clamp(-1.0 + 1e-15, 1.0 - 1e-15).atanh(),
            })
            .collect()
    }

    /// `dp/dy` per coordinate.
    fn jacobian(&self, y: &[f64]) -> Vec<f64> {
        y.iter()
            .zip(&self.bounds)
            .map(|(&v, b)| match b {
                Bound::Positive => v.exp(),
                Bound::Symmetric => (1.0 - self.margin) * (1.0 - v.tanh().powi(2)),
            })
            .collect()
    }
}

fn loglik_natural(family: Family, p: &[f64], data: &[f64]) -> Option<f64> {
    let m = ModelSpec::new(family, p.to_vec()).ok()?;
    model_loglik(&m, data).ok().filter(|v| v.is_finite())
}

fn gradient_free(family: Family, t: &Transform, y: &[f64], data: &[f64]) -> Option<Vec<f64>> {
    let p = t.to_natural(y);
    if family == Family::Nwte {
        let np = NwteParams::new(p[0], p[1], p[2]).ok()?;
        let s = nwte_score(&np, data).ok()?;
        let j = t.jacobian(y);
        return Some(s.iter().zip(j).map(|(a, b)| a * b).collect());
    }
    let h = 1e-6;
    let mut g = Vec::with_capacity(y.len());
    for i in 0..y.len() {
        let mut a = y.to_vec();
        let mut b = y.to_vec();
        a[i] += h;
        b[i] -= h;
        let fa = loglik_natural(family, &t.to_natural(&a), data)?;
        let fb = loglik_natural(family, &t.to_natural(&b), data)?;
        g.push((fa - fb) / (2.0 * h));
    }
    Some(g)
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m: f64, x| m.max(x.abs()))
}

/// Damped Newton ascent on the free scale; keeps only improving steps.
fn newton_polish(family: Family, t: &Transform, y0: &[f64], data: &[f64]) -> (Vec<f64>, f64) {
    let d = y0.len();
    let f = |y: &[f64]| loglik_natural(family, &t.to_natural(y), data);
    let mut y = y0.to_vec();
    let mut fy = match f(&y) {
        Some(v) => v,
        None => return (y, f64::NEG_INFINITY),
    };
    for _ in 0..20 {
        let Some(g) = gradient_free(family, t, &y, data) else { break };
        if max_abs(&g) < 1e-10 {
            break;
        }
        let h = 1e-5;
        let mut hess = DMatrix::zeros(d, d);
        let mut ok = true;
        for j in 0..d {
            let mut a = y.clone();
            let mut b = y.clone();
            a[j] += h;
            b[j] -= h;
            match (gradient_free(family, t, &a, data), gradient_free(family, t, &b, data)) {
                (Some(ga), Some(gb)) => {
                    for i in 0..d {
                        hess[(i, j)] = -(ga[i] - gb[i]) / (2.0 * h);
                    }
                }
                _ => ok = false,
            }
        }
        if !ok {
            break;
        }
        let hess = 0.5 * (&hess + hess.transpose());
        let Some(chol) = hess.cholesky() else { break };
        let step = chol.solve(&DVector::from_vec(g.clone()));
        let mut scale = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let cand: Vec<f64> = y.iter().zip(step.iter()).map(|(a, s)| a + scale * s).collect();
            if let Some(fc) = f(&cand) {
                if fc >= fy {
                    y = cand;
                    fy = fc;
                    improved = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (y, fy)
}

/// Observed-information standard errors in natural units.
fn standard_errors(family: Family, p: &[f64], data: &[f64], rel: f64) -> Option<Vec<f64>> {
    let d = p.len();
    let bounds = family.bounds();
    let steps: Vec<f64> = p
        .iter()
        .zip(bounds)
        .map(|(&v, b)| {
            let h = rel * v.abs().max(if *b == Bound::Symmetric { 1.0 } else { 0.0 });
            match b {
                Bound::Positive => h,
                Bound::Symmetric => h.min(0.25 * (1.0 - v.abs())),
            }
        })
        .collect();
    if steps.iter().any(|&h| !(h > 0.0)) {
        return None;
    }
    let f = |shift: &[(usize, f64)]| {
        let mut q = p.to_vec();
        for &(i, s) in shift {
            q[i] += s * steps[i];
        }
        loglik_natural(family, &q, data)
    };
    let f0 = f(&[])?;
    let mut info = DMatrix::zeros(d, d);
    for i in 0..d {
        let v = (f(&[(i, 1.0)])? - 2.0 * f0 + f(&[(i, -1.0)])?) / (steps[i] * steps[i]);
        info[(i, i)] = -v;
        for j in (i + 1)..d {
            let v = (f(&[(i, 1.0), (j, 1.0)])? - f(&[(i, 1.0), (j, -1.0)])? - f(&[(i, -1.0), (j, 1.0)])?
                + f(&[(i, -1.0), (j, -1.0)])?)
                / (4.0 * steps[i] * steps[j]);
            info[(i, j)] = -v;
            info[(j, i)] = -v;
        }
    }
    let inv = info.try_inverse()?;
    let se: Vec<f64> = (0..d).map(|i| inv[(i, i)]).collect();
    if se.iter().all(|&v| v > 0.0 && v.is_finite()) {
        Some(se.into_iter().map(f64::sqrt).collect())
    } else {
        None
    }
}

/// Default per-parameter start values for a family, scaled by the sample mean.
fn default_grid(family: Family, mean: f64) -> Vec<Vec<f64>> {
    let m = mean;
    let trans = [-0.8, 0.0, 0.8];
    let axes: Vec<Vec<f64>> = match family {
        Family::Gamma => vec![vec![0.3, 1.0, 3.0], vec![0.3 * m, m, 3.0 * m]],
        Family::Moe => vec![vec![0.1, 1.0, 10.0], vec![0.3 / m, 1.0 / m, 3.0 / m]],
        Family::Nhe => vec![vec![0.3, 1.0, 3.0], vec![0.1 / m, 1.0 / m, 10.0 / m]],
        Family::Ee => vec![vec![0.3, 1.0, 3.0], vec![0.3 / m, 1.0 / m, 3.0 / m]],
        Family::Tw => vec![vec![0.5, 1.0, 2.0], vec![0.3 * m, m, 3.0 * m], trans.to_vec()],
        Family::Tge => vec![vec![0.3, 1.0, 3.0], vec![0.3 / m, 1.0 / m, 3.0 / m], trans.to_vec()],
        Family::Tle => vec![
            vec![0.1 / m, 1.0 / m, 3.0 / m],
            vec![1e-4 / (m * m), 1e-2 / (m * m), 1.0 / (m * m)],
            trans.to_vec(),
        ],
        Family::Kappa => vec![
            vec![0.1, 1.0, 10.0],
            vec![0.3, 1.0, 3.0, 10.0, 30.0],
            vec![0.3 * m, m, 3.0 * m],
        ],
        Family::Nwte => vec![
            vec![0.5 / m, 1.0 / m, 2.0 / m],
            vec![1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3],
            trans.to_vec(),
        ],
    };
    let mut grid: Vec<Vec<f64>> = vec![vec![]];
    for axis in axes {
        grid = grid
            .into_iter()
            .flat_map(|g| {
                axis.iter().map(move |&v| {
                    let mut h = g.clone();
                    h.push(v);
                    h
                })
            })
            .collect();
    }
    grid
}

/// Radical-inverse (Halton) point `k` in base `b`.
fn halton(mut k: usize, b: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while k > 0 {
        f /= b as f64;
        r += f * (k % b) as f64;
        k /= b;
    }
    r
}

fn box_starts(family: Family, boxes: &[(f64, f64)], count: usize) -> Vec<Vec<f64>> {
    const PRIMES: [usize; 3] = [2, 3, 5];
    (1..=count.max(1))
        .map(|k| {
            boxes
                .iter()
                .zip(family.bounds())
                .enumerate()
                .map(|(i, (&(lo, hi), b))| {
                    let u = halton(k, PRIMES[i % 3]);
                    match b {
                        Bound::Positive => (lo.ln() + u * (hi.ln() - lo.ln())).exp(),
                        Bound::Symmetric => lo + u * (hi - lo),
                    }
                })
                .collect()
        })
        .collect()
}

fn starts(family: Family, data: &[f64], cfg: &OptimizerConfig) -> Result<Vec<Vec<f64>>> {
    if let Some(boxes) = &cfg.initial_boxes {
        if boxes.len() != family.arity() {
            return Err(NwteError::ParameterCount {
                family: family.name(),
                expected: family.arity(),
                got: boxes.len(),
            });
        }
        let count = if cfg.multistart_count == 0 { 27 } else { cfg.multistart_count };
        return Ok(box_starts(family, boxes, count));
    }
    let mean = data.iter().sum::<f64>() / data.len() as f64;
    let grid = default_grid(family, mean);
    if cfg.multistart_count == 0 || cfg.multistart_count >= grid.len() {
        return Ok(grid);
    }
    let stride = grid.len() as f64 / cfg.multistart_count as f64;
    Ok((0..cfg.multistart_count)
        .map(|k| grid[(k as f64 * stride) as usize].clone())
        .collect())
}

/// Fits `family` to positive observations by maximum likelihood.
pub fn fit_mle(family: Family, data: &[f64], cfg: &OptimizerConfig) -> Result<FitResult> {
    cfg.validate()?;
    if data.len() < family.arity() {
        return Err(NwteError::InsufficientData {
            required: family.arity(),
            got: data.len(),
        });
    }
    if let Some((i, &x)) = data.iter().enumerate().find(|(_, &x)| !(x > 0.0 && x.is_finite())) {
        return Err(NwteError::NonPositive { line: i + 1, value: x });
    }
    let t = Transform {
        bounds: family.bounds().to_vec(),
        margin: cfg.bound_margin,
    };
    let n = data.len() as f64;
    let objective = |y: &[f64]| match loglik_natural(family, &t.to_natural(y), data) {
        Some(v) => -v / n,
        None => f64::INFINITY,
    };
    let start_points = starts(family, data, cfg)?;
    let runs: Vec<Minimum> = start_points
        .par_iter()
        .map(|s| nelder_mead(objective, &t.to_free(s), 0.5, cfg.f_tol, cfg.x_tol, cfg.max_evals))
        .collect();
    let best = runs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.value.total_cmp(&b.1.value).then(a.0.cmp(&b.0)))
        .map(|(_, m)| m.clone())
        .expect("at least one start");
    if !best.value.is_finite() {
        return Err(NwteError::NonFiniteLikelihood { index: 0, value: f64::NAN });
    }
    // A restart from the best vertex guards against a collapsed simplex.
    let restart = nelder_mead(objective, &best.x, 0.1, cfg.f_tol, cfg.x_tol, cfg.max_evals);
    let chosen = if restart.value <= best.value { &restart } else { &best };
    let (y, ll) = newton_polish(family, &t, &chosen.x, data);
    let (y, ll) = if ll >= -chosen.value * n { (y, ll) } else { (chosen.x.clone(), -chosen.value * n) };

    let estimates = t.to_natural(&y);
    let score = gradient_free(family, &t, &y, data).map_or(f64::INFINITY, |g| max_abs(&g));
    let model = ModelSpec::new(family, estimates.clone())?;
    Ok(FitResult {
        std_errors: standard_errors(family, &estimates, data, cfg.hessian_step),
        names: family.param_names().iter().map(|s| s.to_string()).collect(),
        model,
        estimates,
        loglik: ll,
        converged: (best.converged || restart.converged) && score < cfg.score_tol,
        iterations: best.iterations + restart.iterations,
        evaluations: runs.iter().map(|r| r.evaluations).sum::<usize>() + restart.evaluations,
        starts: start_points.len(),
        score_norm_at_optimum: score,
    })
}
