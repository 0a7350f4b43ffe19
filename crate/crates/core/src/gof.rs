//! Corrected Anderson–Darling (A*), Cramér–von Mises (W*) and
//! Kolmogorov–Smirnov statistics, with the asymptotic Kolmogorov p-value.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::baselines::{model_cdf, model_survival, ModelSpec};
use crate::error::{NwteError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub a_star: f64,
    pub w_star: f64,
    pub ks: f64,
    pub ks_p_value: f64,
    pub n: usize,
}

/// Statistics for a model against sorted data.
pub fn gof_statistics(model: &ModelSpec, sorted: &[f64]) -> Result<GofReport> {
    let mut z = Vec::with_capacity(sorted.len());
    let mut s = Vec::with_capacity(sorted.len());
    for &x in sorted {
        z.push(model_cdf(model, x)?);
        s.push(model_survival(model, x)?);
    }
    gof_from_transforms(&z, &s)
}

/// Statistics from sorted probability-integral transforms `z_i`.
pub fn gof_from_z(z: &[f64]) -> Result<GofReport> {
    let s: Vec<f64> = z.iter().map(|v| 1.0 - v).collect();
    gof_from_transforms(z, &s)
}

/// As [`gof_from_z`], with the complements `1 − z_i` supplied separately so
/// that upper-tail values keep full precision.
pub fn gof_from_transforms(z: &[f64], upper: &[f64]) -> Result<GofReport> {
    let n = z.len();
    if n == 0 {
        return Err(NwteError::InsufficientData { required: 1, got: 0 });
    }
    for (i, (&zi, &si)) in z.iter().zip(upper).enumerate() {
        if !(zi > 0.0 && si > 0.0) {
            return Err(NwteError::DegenerateProbability { index: i, value: zi });
        }
    }
    let nf = n as f64;
    let mut ad = 0.0;
    let mut cvm = 0.0;
    let mut ks: f64 = 0.0;
    for i in 0..n {
        let k = (i + 1) as f64;
        ad += (2.0 * k - 1.0) * (z[i].ln() + upper[n - 1 - i].ln());
        cvm += (z[i] - (2.0 * k - 1.0) / (2.0 * nf)).powi(2);
        ks = ks.max(k / nf - z[i]).max(z[i] - (k - 1.0) / nf);
    }
    let a_star = (2.25 / (nf * nf) + 0.75 / nf + 1.0) * (-nf - ad / nf);
    let w_star = (0.5 / nf + 1.0) * (cvm + 1.0 / (12.0 * nf));
    Ok(GofReport {
        a_star,
        w_star,
        ks,
        ks_p_value: ks_p_value(ks, n),
        n,
    })
}

/// `P(K > √n·ks)` under the asymptotic Kolmogorov distribution.
pub fn ks_p_value(ks: f64, n: usize) -> f64 {
    let x = (n as f64).sqrt() * ks;
    if x <= 0.0 {
        return 1.0;
    }
    let p = if x < 1.0 {
        // Jacobi-transformed form converges fast near zero.
        let mut cdf = 0.0;
        for j in 1..=100 {
            let k = (2 * j - 1) as f64;
            let term = (-k * k * PI * PI / (8.0 * x * x)).exp();
            cdf += term;
            if term < 1e-12 {
                break;
            }
        }
        1.0 - (2.0 * PI).sqrt() / x * cdf
    } else {
        let mut sum = 0.0;
        for j in 1..=100 {
            let jf = j as f64;
            let term = (-2.0 * jf * jf * x * x).exp();
            sum += if j % 2 == 1 { term } else { -term };
            if term < 1e-12 {
                break;
            }
        }
        2.0 * sum
    };
    p.clamp(0.0, 1.0)
}

fn cmp_reports(a: &GofReport, b: &GofReport) -> Ordering {
    a.a_star
        .total_cmp(&b.a_star)
        .then(a.w_star.total_cmp(&b.w_star))
        .then(a.ks.total_cmp(&b.ks))
}

/// Orders candidates best first: ascending A*, then W*, then K-S, then family name.
pub fn rank_models<T>(mut reports: Vec<(ModelSpec, GofReport, T)>) -> Vec<(ModelSpec, GofReport, T)> {
    reports.sort_by(|a, b| cmp_reports(&a.1, &b.1).then_with(|| a.0.family.name().cmp(b.0.family.name())));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::Family;

    #[test]
    fn single_point() {
        let r = gof_from_z(&[0.5]).unwrap();
        assert_eq!(r.ks, 0.5);
        assert!(gof_from_z(&[0.0, 0.5]).is_err());
        assert!(gof_from_z(&[0.5, 1.0]).is_err());
    }

    #[test]
    fn p_value_shape() {
        assert_eq!(ks_p_value(0.0, 10), 1.0);
        assert!(ks_p_value(1.0, 1000) < 1e-12);
        // Both branches meet continuously at x = 1.
        let below = ks_p_value(1.0 - 1e-9, 1);
        let above = ks_p_value(1.0 + 1e-9, 1);
        assert!((below - above).abs() < 1e-8);
        assert!((ks_p_value(1.0, 1) - 0.26999967).abs() < 1e-7);
    }

    #[test]
    fn ranking_is_deterministic() {
        let rep = |a| GofReport {
            a_star: a,
            w_star: 0.1,
            ks: 0.1,
            ks_p_value: 0.5,
            n: 10,
        };
        let m = |f| ModelSpec::new(f, vec![1.0; Family::arity(f)]).unwrap();
        let ranked = rank_models(vec![
            (m(Family::Ee), rep(0.3), ()),
            (m(Family::Moe), rep(0.2), ()),
            (m(Family::Gamma), rep(0.2), ()),
        ]);
        let names: Vec<_> = ranked.iter().map(|r| r.0.family.name()).collect();
        assert_eq!(names, ["MOE", "gamma", "EE"]);
    }
}
