//! The NWTE(λ, γ, θ) distribution: a weighted transmuted exponential
//! lifetime model, with likelihood fitting against eight baseline
//! families, goodness-of-fit statistics and return-level analysis.

pub mod baselines;
pub mod data;
pub mod entropy;
pub mod error;
pub mod fit;
pub mod gof;
pub mod hydro;
pub mod lifetime;
pub mod moments;
pub mod nwte;
pub mod plot;
pub mod quadrature;
pub mod series;
pub mod tables;

pub use error::{NwteError, Result};
pub use moments::{About, Direction, Method};
pub use nwte::{NwteParams, NwteSampler};
pub use series::SeriesSpec;
