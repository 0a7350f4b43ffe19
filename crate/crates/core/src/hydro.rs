//! Return levels, return periods, conditional event means and the mean
//! deviation about a return level.

use serde::{Deserialize, Serialize};

use crate::error::{NwteError, Result};
use crate::moments::{conditional_moment, incomplete_moment, moment, Direction, Method, NULL_EVENT};
use crate::nwte::{self, NwteParams};

/// A return-period query or an event magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReturnSpec {
    Period(f64),
    Level(f64),
}

fn check_period(t: f64) -> Result<()> {
    if t >= 1.0 {
        Ok(())
    } else {
        Err(NwteError::Domain {
            name: "T",
            value: t,
            reason: "return period must be at least 1",
        })
    }
}

/// `x_T = Q(1 − 1/T)`.
pub fn return_level(p: &NwteParams, period: f64) -> Result<f64> {
    check_period(period)?;
    nwte::quantile(p, 1.0 - 1.0 / period)
}

/// `T = 1/S(x)`.
pub fn return_period(p: &NwteParams, level: f64) -> Result<f64> {
    if !(level > 0.0) {
        return Err(NwteError::Domain {
            name: "x_T",
            value: level,
            reason: "event magnitude must be positive",
        });
    }
    let s = nwte::survival(p, level)?;
    if s < NULL_EVENT {
        return Err(NwteError::NullEvent { probability: s });
    }
    Ok(1.0 / s)
}

/// Exceedance probability `S(x)`.
pub fn exceedance_probability(p: &NwteParams, level: f64) -> Result<f64> {
    nwte::survival(p, level)
}

/// `ξ = E|X − x_T| = 2x_T·F(x_T) − x_T + μ − 2m(x_T)`.
pub fn mean_deviation_about_return_level(p: &NwteParams, period: f64, method: Method) -> Result<f64> {
    let x = return_level(p, period)?;
    let mu = moment(p, 1, method)?;
    let m = incomplete_moment(p, 1, x, method)?;
    Ok((2.0 * x * nwte::cdf(p, x)? - x + mu - 2.0 * m).max(0.0))
}

/// `E[X | X > Q]`.
pub fn conditional_event_mean(p: &NwteParams, q: f64, method: Method) -> Result<f64> {
    conditional_moment(p, 1, q, Direction::Above, method)
}

/// Evaluates a [`ReturnSpec`]: a level for a period, or a period for a level.
pub fn resolve(p: &NwteParams, spec: ReturnSpec) -> Result<f64> {
    match spec {
        ReturnSpec::Period(t) => return_level(p, t),
        ReturnSpec::Level(x) => return_period(p, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The displayed closed form for `x_T`, transcribed term for term.
    fn return_level_closed_form(p: &NwteParams, period: f64) -> f64 {
        let (l, g, t) = (p.lambda(), p.gamma(), p.theta());
        let c = (1.0 + g).powf(1.0 / g + 1.0);
        let inner = ((1.0 - 1.0 / period) * (c - 1.0) + 1.0).powf(g / (g + 1.0)) - 1.0;
        let root = ((1.0 + t).powi(2) - 4.0 * t / g * inner).sqrt();
        -(1.0 - (1.0 + t - root) / (2.0 * t)).ln() / l
    }

    #[test]
    fn quantile_route_equals_closed_form() {
        for (l, g, t) in [(0.465010, 9.179478, 0.344129), (0.000097, 29.109413, 0.808284), (1.0, 0.5, -0.6)] {
            let p = NwteParams::new(l, g, t).unwrap();
            for period in [2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0] {
                let a = return_level(&p, period).unwrap();
                let b = return_level_closed_form(&p, period);
                assert!((a - b).abs() < 1e-12 * b.abs(), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn unit_period_and_inverse() {
        let p = NwteParams::new(0.465010, 9.179478, 0.344129).unwrap();
        assert_eq!(return_level(&p, 1.0).unwrap(), 0.0);
        assert!(return_level(&p, 0.5).is_err());
        let x = return_level(&p, 20.0).unwrap();
        assert!((return_period(&p, x).unwrap() - 20.0).abs() < 1e-9 * 20.0);
        assert!(return_period(&p, 0.0).is_err());
    }
}
