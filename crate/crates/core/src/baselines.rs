//! Competitor lifetime families and the common model interface used by
//! fitting and goodness-of-fit.
//!
//! Each transmuted family (TW, TGE, TLE) applies `(1 + λ)H − λH²` to its
//! base cdf `H`; differentiating gives the `1 − λ + 2λ(1 − H)` pdf factor.
//! The Kappa cdf `[(x/β)^{αθ} / (α + (x/β)^{αθ})]^{1/α}` integrates its pdf in
//! closed form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma_lr, gamma_ur, ln_gamma};

use crate::error::{NwteError, Result};
use crate::nwte::{self, NwteParams};

/// Distribution families available to the fitting pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Gamma,
    Moe,
    Nhe,
    Ee,
    Tw,
    Tge,
    Tle,
    Kappa,
    Nwte,
}

/// Admissible range of one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Positive,
    /// The closed interval `[−1, 1]`.
    Symmetric,
}

impl Bound {
    pub fn contains(self, v: f64) -> bool {
        match self {
            Bound::Positive => v > 0.0 && v.is_finite(),
            Bound::Symmetric => (-1.0..=1.0).contains(&v),
        }
    }
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Gamma,
        Family::Moe,
        Family::Nhe,
        Family::Ee,
        Family::Tw,
        Family::Tge,
        Family::Tle,
        Family::Kappa,
        Family::Nwte,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::Moe => "MOE",
            Family::Nhe => "NHE",
            Family::Ee => "EE",
            Family::Tw => "TW",
            Family::Tge => "TGE",
            Family::Tle => "TLE",
            Family::Kappa => "Kappa",
            Family::Nwte => "NWTE",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Gamma => &["k", "lambda"],
            Family::Moe => &["beta", "lambda"],
            Family::Nhe | Family::Ee => &["alpha", "lambda"],
            Family::Tw => &["eta", "sigma", "lambda"],
            Family::Tge => &["alpha", "theta", "lambda"],
            Family::Tle => &["beta", "theta", "lambda"],
            Family::Kappa => &["alpha", "theta", "beta"],
            Family::Nwte => &["lambda", "gamma", "theta"],
        }
    }

    pub fn bounds(self) -> &'static [Bound] {
        use Bound::*;
        match self {
            Family::Gamma | Family::Moe | Family::Nhe | Family::Ee => &[Positive, Positive],
            Family::Tw | Family::Tge | Family::Tle => &[Positive, Positive, Symmetric],
            Family::Kappa => &[Positive, Positive, Positive],
            Family::Nwte => &[Positive, Positive, Symmetric],
        }
    }

    pub fn arity(self) -> usize {
        self.bounds().len()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = NwteError;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| NwteError::UnknownFamily(s.to_string()))
    }
}

/// A family together with a validated parameter vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub family: Family,
    pub params: Vec<f64>,
}

impl ModelSpec {
    pub fn new(family: Family, params: Vec<f64>) -> Result<Self> {
        if params.len() != family.arity() {
            return Err(NwteError::ParameterCount {
                family: family.name(),
                expected: family.arity(),
                got: params.len(),
            });
        }
        for ((&v, &b), &name) in params.iter().zip(family.bounds()).zip(family.param_names()) {
            if !b.contains(v) {
                return Err(NwteError::InvalidParameter {
                    name,
                    value: v,
                    reason: match b {
                        Bound::Positive => "must be positive and finite",
                        Bound::Symmetric => "must lie in [-1, 1]",
                    },
                });
            }
        }
        if family == Family::Nwte {
            NwteParams::new(params[0], params[1], params[2])?;
        }
        Ok(Self { family, params })
    }

    pub fn nwte(p: &NwteParams) -> Self {
        Self {
            family: Family::Nwte,
            params: vec![p.lambda(), p.gamma(), p.theta()],
        }
    }

    /// The NWTE parameters, when this is an NWTE model.
    pub fn as_nwte(&self) -> Option<NwteParams> {
        match self.family {
            Family::Nwte => NwteParams::new(self.params[0], self.params[1], self.params[2]).ok(),
            _ => None,
        }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.family
            .param_names()
            .iter()
            .position(|&n| n == name)
            .map(|i| self.params[i])
    }
}

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(NwteError::Domain {
            name: "x",
            value: x,
            reason: "support is the positive half-line",
        })
    }
}

fn transmute(h: f64, l: f64) -> f64 {
    (h * (1.0 + l - l * h)).clamp(0.0, 1.0)
}

/// `log(α + e^s)` without overflow.
fn ln_add_exp(ln_a: f64, s: f64) -> f64 {
    if s > ln_a {
        s + (ln_a - s).exp().ln_1p()
    } else {
        ln_a + (s - ln_a).exp().ln_1p()
    }
}

/// Log-density. Returns `−∞` where the density is zero.
pub fn model_ln_pdf(m: &ModelSpec, x: f64) -> Result<f64> {
    check_x(x)?;
    let p = &m.params;
    let v = match m.family {
        Family::Gamma => {
            let (k, s) = (p[0], p[1]);
            (k - 1.0) * x.ln() - x / s - k * s.ln() - ln_gamma(k)
        }
        Family::Moe => {
            let (b, l) = (p[0], p[1]);
            (l * b).ln() - l * x - 2.0 * (1.0 - (1.0 - b) * (-l * x).exp()).ln()
        }
        Family::Nhe => {
            let (a, l) = (p[0], p[1]);
            (a * l).ln() + (a - 1.0) * (l * x).ln_1p() + 1.0 - (a * (l * x).ln_1p()).exp()
        }
        Family::Ee => {
            let (a, l) = (p[0], p[1]);
            (a * l).ln() + (a - 1.0) * (-(-l * x).exp_m1()).ln() - l * x
        }
        Family::Tw => {
            let (eta, sigma, l) = (p[0], p[1], p[2]);
            let z = x / sigma;
            let w = z.powf(eta);
            (eta / sigma).ln() + (eta - 1.0) * z.ln() - w + (1.0 - l + 2.0 * l * (-w).exp()).ln()
        }
        Family::Tge => {
            let (a, th, l) = (p[0], p[1], p[2]);
            let base = -(-th * x).exp_m1();
            let h = base.powf(a);
            (a * th).ln() - th * x + (a - 1.0) * base.ln() + (1.0 + l - 2.0 * l * h).ln()
        }
        Family::Tle => {
            let (b, th, l) = (p[0], p[1], p[2]);
            let w = b * x + 0.5 * th * x * x;
            (b + th * x).ln() - w + (1.0 - l + 2.0 * l * (-w).exp()).ln()
        }
        Family::Kappa => {
            let (a, th, b) = (p[0], p[1], p[2]);
            let ly = (x / b).ln();
            (a * th / b).ln() + (th - 1.0) * ly - (a + 1.0) / a * ln_add_exp(a.ln(), a * th * ly)
        }
        Family::Nwte => {
            let np = NwteParams::new(p[0], p[1], p[2])?;
            if x == 0.0 {
                np.pdf_at_zero().ln()
            } else {
                nwte::ln_pdf(&np, x)?
            }
        }
    };
    Ok(if v.is_nan() { f64::NEG_INFINITY } else { v })
}

pub fn model_pdf(m: &ModelSpec, x: f64) -> Result<f64> {
    if m.family == Family::Nwte {
        let p = &m.params;
        return nwte::pdf(&NwteParams::new(p[0], p[1], p[2])?, x);
    }
    Ok(model_ln_pdf(m, x)?.exp())
}

pub fn model_cdf(m: &ModelSpec, x: f64) -> Result<f64> {
    check_x(x)?;
    if x == f64::INFINITY {
        return Ok(1.0);
    }
    let p = &m.params;
    let v = match m.family {
        Family::Gamma if x == 0.0 => 0.0,
        Family::Gamma => gamma_lr(p[0], x / p[1]),
        Family::Moe => {
            let (b, l) = (p[0], p[1]);
            -(-l * x).exp_m1() / (1.0 - (1.0 - b) * (-l * x).exp())
        }
        Family::Nhe => {
            let (a, l) = (p[0], p[1]);
            -(1.0 - (a * (l * x).ln_1p()).exp()).exp_m1()
        }
        Family::Ee => {
            let (a, l) = (p[0], p[1]);
            (a * (-(-l * x).exp_m1()).ln()).exp()
        }
        Family::Tw => {
            let (eta, sigma, l) = (p[0], p[1], p[2]);
            transmute(-(-(x / sigma).powf(eta)).exp_m1(), l)
        }
        Family::Tge => {
            let (a, th, l) = (p[0], p[1], p[2]);
            transmute((a * (-(-th * x).exp_m1()).ln()).exp(), l)
        }
        Family::Tle => {
            let (b, th, l) = (p[0], p[1], p[2]);
            transmute(-(-(b * x + 0.5 * th * x * x)).exp_m1(), l)
        }
        Family::Kappa => {
            if x == 0.0 {
                return Ok(0.0);
            }
            let (a, th, b) = (p[0], p[1], p[2]);
            let s = a * th * (x / b).ln();
            ((s - ln_add_exp(a.ln(), s)) / a).exp()
        }
        Family::Nwte => return nwte::cdf(&NwteParams::new(p[0], p[1], p[2])?, x),
    };
    Ok(v.clamp(0.0, 1.0))
}

/// `1 − F(x)`, computed without cancellation where a closed form allows it.
pub fn model_survival(m: &ModelSpec, x: f64) -> Result<f64> {
    check_x(x)?;
    let p = &m.params;
    match m.family {
        Family::Gamma if x == 0.0 => Ok(1.0),
        Family::Gamma if x == f64::INFINITY => Ok(0.0),
        Family::Gamma => Ok(gamma_ur(p[0], x / p[1])),
        Family::Nwte => nwte::survival(&NwteParams::new(p[0], p[1], p[2])?, x),
        _ => Ok(1.0 - model_cdf(m, x)?),
    }
}

/// `Σ log f(x_i)`; zero for an empty sample.
pub fn model_loglik(m: &ModelSpec, data: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for (index, &x) in data.iter().enumerate() {
        let v = model_ln_pdf(m, x)?;
        if !v.is_finite() {
            return Err(NwteError::NonFiniteLikelihood { index, value: v });
        }
        total += v;
    }
    Ok(total)
}
