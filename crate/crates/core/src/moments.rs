//! Moments, the moment generating function, incomplete and conditional
//! moments, mean deviations and quantile-based shape measures.
//!
//! Each quantity has two routes: adaptive quadrature of the closed-form pdf
//! (the default) and the exponential-sum expansion in [`crate::series`].

use serde::{Deserialize, Serialize};

use crate::error::{NwteError, Result};
use crate::nwte::{self, NwteParams};
use crate::quadrature::{integrate, integrate_pieces, QuadConfig};
use crate::series::{self, SeriesSpec};

/// Evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Method {
    #[default]
    Quadrature,
    Series(SeriesSpec),
}

impl Method {
    pub fn series() -> Self {
        Method::Series(SeriesSpec::default())
    }
}

/// Conditioning side for [`conditional_moment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Above,
    Below,
}

/// Which centre [`mean_deviation`] measures from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum About {
    Mean,
    Median,
}

/// Probabilities below this are treated as a null conditioning event.
pub const NULL_EVENT: f64 = 1e-300;

pub(crate) fn quad_cfg() -> QuadConfig {
    QuadConfig::default()
}

/// Upper end of the quadrature domain, `Q(1 − 1e−12)`.
pub fn quadrature_upper(p: &NwteParams) -> Result<f64> {
    nwte::quantile(p, 1.0 - 1e-12)
}

/// Right end for `∫ x^r f`: past `Q(1 − 1e−12)` by enough e-folds that the
/// dropped tail is below double precision even with the `x^r` weight.
pub(crate) fn moment_end(p: &NwteParams, r: u32) -> Result<f64> {
    Ok(quadrature_upper(p)? + (30.0 + 2.0 * r as f64) / p.lambda())
}

/// Split points for integrals over `[a, b]`: interior quartiles help the
/// adaptive rule find the bulk at once.
pub(crate) fn breakpoints(p: &NwteParams, a: f64, b: f64) -> Result<Vec<f64>> {
    let mut pts = vec![a];
    for u in [0.25, 0.5, 0.75, 0.99, 0.9999] {
        let x = nwte::quantile(p, u)?;
        if x > a && x < b {
            pts.push(x);
        }
    }
    pts.push(b);
    Ok(pts)
}

/// `∫_a^b x^r f(x) dx` by quadrature.
pub(crate) fn power_integral(p: &NwteParams, r: u32, a: f64, b: f64, cfg: QuadConfig) -> Result<f64> {
    let pts = breakpoints(p, a, b)?;
    integrate_pieces(
        |x| x.powi(r as i32) * nwte::pdf(p, x).unwrap_or(0.0),
        &pts,
        cfg,
    )
}

/// `μ_r = E[X^r]`.
pub fn moment(p: &NwteParams, r: u32, method: Method) -> Result<f64> {
    if r == 0 {
        return Ok(1.0);
    }
    match method {
        Method::Series(spec) => series::moment_series(p, r, &spec),
        Method::Quadrature => power_integral(p, r, 0.0, moment_end(p, r)?, quad_cfg()),
    }
}

/// `M_X(t) = E[e^{tX}]`, defined for `t < λ`.
pub fn mgf(p: &NwteParams, t: f64, method: Method) -> Result<f64> {
    if !(t < p.lambda()) {
        return Err(NwteError::Domain {
            name: "t",
            value: t,
            reason: "moment generating function requires t < lambda",
        });
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    match method {
        Method::Series(spec) => series::mgf_series(p, t, &spec),
        Method::Quadrature => {
            let mut end = moment_end(p, 0)?;
            if t > 0.0 {
                end = end.max(45.0 / (p.lambda() - t));
            }
            let pts = breakpoints(p, 0.0, end)?;
            integrate_pieces(
                |x| (t * x).exp() * nwte::pdf(p, x).unwrap_or(0.0),
                &pts,
                quad_cfg(),
            )
        }
    }
}

fn check_t(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(NwteError::Domain {
            name: "t",
            value: t,
            reason: "threshold must be nonnegative",
        })
    }
}

/// Lower incomplete moment `J_r(t) = ∫_0^t x^r f(x) dx`.
pub fn incomplete_moment(p: &NwteParams, r: u32, t: f64, method: Method) -> Result<f64> {
    check_t(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    match method {
        Method::Series(spec) => series::incomplete_moment_series(p, r, t, &spec),
        Method::Quadrature => {
            if t >= moment_end(p, r)? {
                return moment(p, r, method);
            }
            power_integral(p, r, 0.0, t, quad_cfg())
        }
    }
}

/// Upper incomplete moment `∫_t^∞ x^r f(x) dx`, computed directly so that
/// small tails do not suffer from `μ_r − J_r(t)` cancellation.
pub fn upper_incomplete_moment(p: &NwteParams, r: u32, t: f64, method: Method) -> Result<f64> {
    check_t(t)?;
    if t == f64::INFINITY {
        return Ok(0.0);
    }
    match method {
        Method::Series(spec) => series::upper_incomplete_moment_series(p, r, t, &spec),
        Method::Quadrature => {
            let end = moment_end(p, r)?.max(t + (30.0 + 2.0 * r as f64) / p.lambda());
            let tail = nwte::survival(p, t)?;
            let scale = if r == 0 { tail } else { tail * t.max(1.0 / p.lambda()).powi(r as i32) };
            let cfg = QuadConfig {
                abs_tol: (1e-10 * scale).max(1e-300),
                rel_tol: 1e-12,
                ..quad_cfg()
            };
            power_integral(p, r, t, end, cfg)
        }
    }
}

/// `E[X^r | X > t]` or `E[X^r | X ≤ t]`.
pub fn conditional_moment(
    p: &NwteParams,
    r: u32,
    t: f64,
    direction: Direction,
    method: Method,
) -> Result<f64> {
    check_t(t)?;
    match direction {
        Direction::Above => {
            let s = nwte::survival(p, t)?;
            if s < NULL_EVENT {
                return Err(NwteError::NullEvent { probability: s });
            }
            Ok(upper_incomplete_moment(p, r, t, method)? / s)
        }
        Direction::Below => {
            let f = nwte::cdf(p, t)?;
            if f < NULL_EVENT {
                return Err(NwteError::NullEvent { probability: f });
            }
            Ok(incomplete_moment(p, r, t, method)? / f)
        }
    }
}

/// Mean absolute deviation about the mean (`δ = 2μF(μ) − 2J₁(μ)`) or about
/// the median (`η = μ − 2J₁(M)`).
pub fn mean_deviation(p: &NwteParams, about: About, method: Method) -> Result<f64> {
    let mu = moment(p, 1, method)?;
    let v = match about {
        About::Mean => 2.0 * mu * nwte::cdf(p, mu)? - 2.0 * incomplete_moment(p, 1, mu, method)?,
        About::Median => {
            let m = nwte::quantile(p, 0.5)?;
            mu - 2.0 * incomplete_moment(p, 1, m, method)?
        }
    };
    Ok(v.max(0.0))
}

/// Bowley (quartile) skewness.
pub fn bowley_skewness(p: &NwteParams) -> Result<f64> {
    let q = |u| nwte::quantile(p, u);
    let (q1, q2, q3) = (q(0.25)?, q(0.5)?, q(0.75)?);
    Ok((q3 - 2.0 * q2 + q1) / (q3 - q1))
}

/// Moors (octile) kurtosis.
pub fn moors_kurtosis(p: &NwteParams) -> Result<f64> {
    let q = |k: u32| nwte::quantile(p, k as f64 / 8.0);
    Ok(((q(7)? - q(5)?) + (q(3)? - q(1)?)) / (q(6)? - q(2)?))
}

/// `∫_a^b g(x) f(x) dx` for an arbitrary weight, with the same breakpoints as the moment routines.
pub fn expect_over<G: Fn(f64) -> f64>(p: &NwteParams, g: G, a: f64, b: f64) -> Result<f64> {
    let pts = breakpoints(p, a, b)?;
    integrate_pieces(|x| g(x) * nwte::pdf(p, x).unwrap_or(0.0), &pts, quad_cfg())
}

/// `∫_0^U f(x) dx` over the quadrature domain; used as a normalization check.
pub fn total_mass(p: &NwteParams) -> Result<f64> {
    let end = moment_end(p, 0)?;
    Ok(integrate(|x| nwte::pdf(p, x).unwrap_or(0.0), 0.0, end, quad_cfg())?.value)
}
