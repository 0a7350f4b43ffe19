//! Residual life `X − t | X > t` and reversed residual life `t − X | X ≤ t`.

use crate::error::{NwteError, Result};
use crate::moments::{incomplete_moment, upper_incomplete_moment, Method, NULL_EVENT};
use crate::nwte::{self, NwteParams};

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(NwteError::Domain {
            name: "t",
            value: t,
            reason: "conditioning time must be positive and finite",
        })
    }
}

fn check_offset(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(NwteError::Domain {
            name: "x",
            value: x,
            reason: "offset must be nonnegative",
        })
    }
}

fn survival_at(p: &NwteParams, t: f64) -> Result<f64> {
    check_t(t)?;
    let s = nwte::survival(p, t)?;
    if s < NULL_EVENT {
        return Err(NwteError::NullEvent { probability: s });
    }
    Ok(s)
}

fn cdf_at(p: &NwteParams, t: f64) -> Result<f64> {
    check_t(t)?;
    let f = nwte::cdf(p, t)?;
    if f < NULL_EVENT {
        return Err(NwteError::NullEvent { probability: f });
    }
    Ok(f)
}

fn reversed_offset(t: f64, x: f64) -> Result<()> {
    check_offset(x)?;
    if x > t {
        return Err(NwteError::Domain {
            name: "x",
            value: x,
            reason: "reversed residual offset cannot exceed t",
        });
    }
    Ok(())
}

/// `S(x + t)/S(t)`.
pub fn residual_survival(p: &NwteParams, t: f64, x: f64) -> Result<f64> {
    let s = survival_at(p, t)?;
    check_offset(x)?;
    Ok(nwte::survival(p, x + t)? / s)
}

pub fn residual_cdf(p: &NwteParams, t: f64, x: f64) -> Result<f64> {
    let s = survival_at(p, t)?;
    check_offset(x)?;
    // F(x+t) − F(t) = S(t) − S(x+t), kept in survival form for tail accuracy.
    Ok((s - nwte::survival(p, x + t)?) / s)
}

pub fn residual_pdf(p: &NwteParams, t: f64, x: f64) -> Result<f64> {
    let s = survival_at(p, t)?;
    check_offset(x)?;
    Ok(nwte::pdf(p, x + t)? / s)
}

/// Equal to `hazard(x + t)`.
pub fn residual_hazard(p: &NwteParams, t: f64, x: f64) -> Result<f64> {
    survival_at(p, t)?;
    check_offset(x)?;
    nwte::hazard(p, x + t)
}

/// Mean residual life `K(t) = ∫_t^∞ x f dx / S(t) − t`.
pub fn mean_residual_life(p: &NwteParams, t: f64, method: Method) -> Result<f64> {
    let s = survival_at(p, t)?;
    let upper = upper_incomplete_moment(p, 1, t, method)?;
    Ok((upper / s - t).max(0.0))
}

/// Variance residual life `V(t) = ∫_t^∞ x² f dx / S(t) − t² − 2tK − K²`.
pub fn variance_residual_life(p: &NwteParams, t: f64, method: Method) -> Result<f64> {
    let s = survival_at(p, t)?;
    let m1 = upper_incomplete_moment(p, 1, t, method)? / s;
    let m2 = upper_incomplete_moment(p, 2, t, method)? / s;
    // E[(X − t)²] − K² with K = m1 − t.
    Ok((m2 - m1 * m1).max(0.0))
}

/// `F(t − x)/F(t)`.
pub fn reversed_survival(p: &NwteParams, t: f64, x: f64) -> Result<f64> {
    let f = cdf_at(p, t)?;
    reversed_offset(t, x)?;
    Ok(nwte::cdf(p, t - x)? / f)
}

pub fn reversed_cdf(p: &NwteParams, t: f64, x: f64) -> Result<f64> {
    let f = cdf_at(p, t)?;
    reversed_offset(t, x)?;
    Ok((f - nwte::cdf(p, t - x)?) / f)
}

pub fn reversed_pdf(p: &NwteParams, t: f64, x: f64) -> Result<f64> {
    let f = cdf_at(p, t)?;
    reversed_offset(t, x)?;
    Ok(nwte::pdf(p, t - x)? / f)
}

/// `f(t − x)/F(t − x)`; infinite at `x = t`.
pub fn reversed_hazard(p: &NwteParams, t: f64, x: f64) -> Result<f64> {
    cdf_at(p, t)?;
    reversed_offset(t, x)?;
    let y = t - x;
    let fy = nwte::cdf(p, y)?;
    if fy == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(nwte::pdf(p, y)? / fy)
}

/// Mean reversed residual life `L(t) = t − J₁(t)/F(t)`.
pub fn mean_reversed_residual_life(p: &NwteParams, t: f64, method: Method) -> Result<f64> {
    let f = cdf_at(p, t)?;
    let j1 = incomplete_moment(p, 1, t, method)?;
    Ok((t - j1 / f).clamp(0.0, t))
}

/// Variance reversed residual life `W(t) = 2tL − L² − t² + J₂(t)/F(t)`.
pub fn variance_reversed_residual_life(p: &NwteParams, t: f64, method: Method) -> Result<f64> {
    let f = cdf_at(p, t)?;
    let m1 = incomplete_moment(p, 1, t, method)? / f;
    let m2 = incomplete_moment(p, 2, t, method)? / f;
    Ok((m2 - m1 * m1).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_values() {
        let p = NwteParams::new(1.0, 0.5, 0.5).unwrap();
        assert_eq!(residual_survival(&p, 1.0, 0.0).unwrap(), 1.0);
        assert_eq!(residual_cdf(&p, 1.0, 0.0).unwrap(), 0.0);
        assert_eq!(reversed_survival(&p, 3.0, 0.0).unwrap(), 1.0);
        assert_eq!(reversed_survival(&p, 3.0, 3.0).unwrap(), 0.0);
        assert!(reversed_pdf(&p, 3.0, 3.5).is_err());
        assert!(residual_pdf(&p, 0.0, 1.0).is_err());
    }

    #[test]
    fn memoryless_hazard_identity() {
        let p = NwteParams::new(1.0, 0.5, 0.5).unwrap();
        assert_eq!(residual_hazard(&p, 2.0, 3.0).unwrap(), nwte::hazard(&p, 5.0).unwrap());
    }

    #[test]
    fn variance_matches_paper_form() {
        let p = NwteParams::new(1.0, 0.7, -0.3).unwrap();
        let m = Method::Quadrature;
        for t in [0.5, 2.0, 6.0] {
            let s = nwte::survival(&p, t).unwrap();
            let k = mean_residual_life(&p, t, m).unwrap();
            let e2 = upper_incomplete_moment(&p, 2, t, m).unwrap();
            let v = e2 / s - t * t - 2.0 * t * k - k * k;
            assert!((variance_residual_life(&p, t, m).unwrap() - v).abs() < 1e-8);
            let f = nwte::cdf(&p, t).unwrap();
            let l = mean_reversed_residual_life(&p, t, m).unwrap();
            let w = 2.0 * t * l - l * l - t * t + incomplete_moment(&p, 2, t, m).unwrap() / f;
            assert!((variance_reversed_residual_life(&p, t, m).unwrap() - w).abs() < 1e-8);
        }
    }

    #[test]
    fn null_events_are_reported() {
        let p = NwteParams::new(1.0, 0.5, 0.5).unwrap();
        assert!(matches!(
            mean_residual_life(&p, 900.0, Method::Quadrature),
            Err(NwteError::NullEvent { .. })
        ));
    }
}
