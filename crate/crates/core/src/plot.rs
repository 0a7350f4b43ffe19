//! Columnar data for the pdf, hazard and shape-measure figures.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{NwteError, Result};
use crate::moments::{bowley_skewness, moors_kurtosis};
use crate::nwte::{self, NwteParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlotKind {
    PdfShapes,
    HrfShapes,
    SkewKurtSurface,
}

impl FromStr for PlotKind {
    type Err = NwteError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "pdf_shapes" | "pdf" => Ok(PlotKind::PdfShapes),
            "hrf_shapes" | "hrf" => Ok(PlotKind::HrfShapes),
            "skew_kurt_surface" | "skew_kurt" => Ok(PlotKind::SkewKurtSurface),
            _ => Err(NwteError::Parse {
                line: 0,
                message: format!("unknown plot kind '{s}'"),
            }),
        }
    }
}

/// Parameter sets and grids for [`emit_plot_data`].
#[derive(Debug, Clone)]
pub struct PlotGrid {
    /// Curves drawn by the pdf and hazard plots.
    pub params: Vec<NwteParams>,
    /// Right end of the x grid; chosen from the curves when `None`.
    pub x_max: Option<f64>,
    pub points: usize,
    /// Rate used by the shape surface.
    pub lambda: f64,
    pub thetas: Vec<f64>,
    pub gammas: Vec<f64>,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

impl PlotGrid {
    pub fn default_for(kind: PlotKind) -> Self {
        let sets: &[(f64, f64, f64)] = match kind {
            PlotKind::PdfShapes => &[(1.0, 0.5, -0.9), (1.0, 2.0, 0.0), (1.0, 5.0, 0.5), (0.5, 10.0, 0.9), (2.0, 0.1, 1.0)],
            _ => &[(1.0, 0.5, -0.9), (1.0, 2.0, 0.3), (0.5, 5.0, 0.7), (1.5, 0.2, 0.95)],
        };
        PlotGrid {
            params: sets
                .iter()
                .map(|&(l, g, t)| NwteParams::new(l, g, t).expect("valid default"))
                .collect(),
            x_max: None,
            points: 500,
            lambda: 0.5,
            thetas: linspace(-0.95, 0.95, 39),
            gammas: linspace(0.1, 10.0, 34),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(NwteError::InvalidParameter {
                name: "points",
                value: 0.0,
                reason: "grid needs at least one point",
            });
        }
        if let Some(x) = self.x_max {
            if !(x > 0.0 && x.is_finite()) {
                return Err(NwteError::InvalidParameter {
                    name: "x_max",
                    value: x,
                    reason: "must be positive and finite",
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlotData {
    pub kind: PlotKind,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl PlotData {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| NwteError::Io(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|v| format!("{v:?}"))).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| NwteError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| NwteError::Io(e.to_string()))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()?)?;
        Ok(())
    }
}

/// Builds the data behind one figure.
///
/// The curve plots emit `(curve, lambda, gamma, theta, x, value)` rows; the
/// surface emits `(theta, gamma, bowley, moors)` rows.
pub fn emit_plot_data(kind: PlotKind, grid: &PlotGrid) -> Result<PlotData> {
    grid.validate()?;
    match kind {
        PlotKind::PdfShapes | PlotKind::HrfShapes => curves(kind, grid),
        PlotKind::SkewKurtSurface => surface(grid),
    }
}

fn curves(kind: PlotKind, grid: &PlotGrid) -> Result<PlotData> {
    let x_max = match grid.x_max {
        Some(x) => x,
        None => {
            let mut x: f64 = 0.0;
            for p in &grid.params {
                x = x.max(match kind {
                    PlotKind::PdfShapes => nwte::quantile(p, 0.999)?,
                    // Far enough for the hazard to settle on its limit.
                    _ => 25.0 / p.lambda(),
                });
            }
            x
        }
    };
    let xs: Vec<f64> = if grid.points == 1 {
        vec![x_max]
    } else {
        linspace(0.0, x_max, grid.points)
    };
    let mut rows = Vec::with_capacity(grid.params.len() * xs.len());
    for (i, p) in grid.params.iter().enumerate() {
        for &x in &xs {
            let v = match kind {
                PlotKind::PdfShapes => nwte::pdf(p, x)?,
                _ => nwte::hazard(p, x)?,
            };
            rows.push(vec![i as f64, p.lambda(), p.gamma(), p.theta(), x, v]);
        }
    }
    let value = if kind == PlotKind::PdfShapes { "pdf" } else { "hazard" };
    Ok(PlotData {
        kind,
        columns: ["curve", "lambda", "gamma", "theta", "x", value].map(String::from).to_vec(),
        rows,
    })
}

fn surface(grid: &PlotGrid) -> Result<PlotData> {
    let mut rows = Vec::with_capacity(grid.thetas.len() * grid.gammas.len());
    for &t in &grid.thetas {
        for &g in &grid.gammas {
            let p = NwteParams::new(grid.lambda, g, t)?;
            rows.push(vec![t, g, bowley_skewness(&p)?, moors_kurtosis(&p)?]);
        }
    }
    Ok(PlotData {
        kind: PlotKind::SkewKurtSurface,
        columns: ["theta", "gamma", "bowley", "moors"].map(String::from).to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_curve_pdf_grid() {
        let mut g = PlotGrid::default_for(PlotKind::PdfShapes);
        g.params.truncate(1);
        let d = emit_plot_data(PlotKind::PdfShapes, &g).unwrap();
        assert_eq!(d.rows.len(), 500);
        assert!(d.rows.iter().all(|r| r[5] >= 0.0));
    }

    #[test]
    fn hazard_ends_at_its_limit() {
        let g = PlotGrid::default_for(PlotKind::HrfShapes);
        let d = emit_plot_data(PlotKind::HrfShapes, &g).unwrap();
        for (i, p) in g.params.iter().enumerate() {
            let last = d.rows.iter().rev().find(|r| r[0] == i as f64).unwrap();
            assert!((last[5] - p.lambda()).abs() < 0.01 * p.lambda(), "{p:?}: {}", last[5]);
        }
    }

    #[test]
    fn surface_bowley_in_range() {
        let mut g = PlotGrid::default_for(PlotKind::SkewKurtSurface);
        g.thetas = linspace(-0.9, 0.9, 7);
        g.gammas = linspace(0.1, 10.0, 6);
        let d = emit_plot_data(PlotKind::SkewKurtSurface, &g).unwrap();
        assert_eq!(d.rows.len(), 42);
        assert!(d.rows.iter().all(|r| r[2] > -1.0 && r[2] < 1.0 && r[3] > 0.0));
    }

    #[test]
    fn kind_names() {
        assert_eq!("hrf-shapes".parse::<PlotKind>().unwrap(), PlotKind::HrfShapes);
        assert!("histogram".parse::<PlotKind>().is_err());
    }
}
