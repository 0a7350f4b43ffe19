mod common;

use common::*;
use nwte::lifetime::*;
use nwte::nwte::{cdf, survival};
use nwte::{Method, NwteParams};

fn params(l: f64, g: f64, t: f64) -> NwteParams {
    NwteParams::new(l, g, t).unwrap()
}

const TIMES: [f64; 5] = [1.0, 3.0, 5.0, 7.0, 10.0];
const GAMMA_COLUMN: [f64; 5] = [0.1, 0.7, 1.1, 1.6, 2.0];
const THETA_COLUMN: [f64; 6] = [-0.9, -0.5, -0.1, 0.1, 0.5, 1.0];

fn grid(f: fn(&NwteParams, f64, Method) -> nwte::Result<f64>, ps: &[NwteParams]) -> Vec<Vec<f64>> {
    ps.iter()
        .map(|p| TIMES.iter().map(|&t| f(p, t, Method::Quadrature).unwrap()).collect())
        .collect()
}

fn gamma_rows() -> Vec<NwteParams> {
    GAMMA_COLUMN.iter().map(|&g| params(1.0, g, 0.5)).collect()
}

fn theta_rows() -> Vec<NwteParams> {
    THETA_COLUMN.iter().map(|&t| params(1.0, 0.5, t)).collect()
}

#[test]
fn high_precision_life_functions() {
    let p = params(1.0, 0.5, -0.5);
    assert!(rel(mean_residual_life(&p, 3.0, Method::Quadrature).unwrap(), MRL_3_AT_1_05_M05) < 1e-10);
    assert!(rel(mean_reversed_residual_life(&p, 3.0, Method::Quadrature).unwrap(), MRRL_3_AT_1_05_M05) < 1e-10);
}

#[test]
fn mean_residual_life_matches_survival_integral() {
    for (l, g, t) in [(1.0, 0.5, 0.5), (0.2, 6.0, -0.8), (3.0, 0.3, 0.95)] {
        let p = params(l, g, t);
        for time in [0.3 / l, 2.0 / l, 8.0 / l] {
            let s = survival(&p, time).unwrap();
            let k = integrate_to_infinity(|x| survival(&p, x).unwrap(), time, &[], 1.0 / l) / s;
            assert!(rel(mean_residual_life(&p, time, Method::Quadrature).unwrap(), k) < 1e-9);
            let lr = tanh_sinh(|x| cdf(&p, x).unwrap(), 0.0, time) / cdf(&p, time).unwrap();
            assert!(rel(mean_reversed_residual_life(&p, time, Method::Quadrature).unwrap(), lr) < 1e-9);
        }
    }
}

#[test]
fn residual_life_trends() {
    // Down each parameter column K(t) decreases. Along t it increases for
    // θ = 0.5 (the whole γ column); in the θ column it decreases for the
    // rows with θ ≤ 0.1 and for θ = 1, exactly as the printed table does.
    for rows in [grid(mean_residual_life, &gamma_rows()), grid(mean_residual_life, &theta_rows())] {
        for j in 0..TIMES.len() {
            assert!(rows.windows(2).all(|w| w[1][j] < w[0][j]));
        }
    }
    for r in grid(mean_residual_life, &gamma_rows()) {
        assert!(r.windows(2).all(|w| w[1] > w[0]), "{r:?}");
    }
    for (th, r) in THETA_COLUMN.iter().zip(grid(mean_residual_life, &theta_rows())) {
        let increasing = *th == 0.5;
        // Past t = 7 the θ = 1 row sits within 1e-6 of its limit 1/2.
        let span = if *th == 1.0 { &r[..4] } else { &r[..] };
        assert!(span.windows(2).all(|w| (w[1] > w[0]) == increasing), "θ={th}: {r:?}");
    }
}

#[test]
fn reversed_residual_life_trends() {
    for rows in [grid(mean_reversed_residual_life, &gamma_rows()), grid(mean_reversed_residual_life, &theta_rows())] {
        for r in &rows {
            assert!(r.windows(2).all(|w| w[1] > w[0]));
        }
        for j in 0..TIMES.len() {
            assert!(rows.windows(2).all(|w| w[1][j] > w[0][j]));
        }
    }
}

#[test]
fn life_functions_stay_in_range() {
    for &l in &[0.01, 1.0, 10.0] {
        for &g in &[0.1, 1.0, 5.0, 30.0] {
            for &th in &[-1.0, -0.5, 0.0, 0.5, 1.0] {
                let p = params(l, g, th);
                for z in [0.1, 1.0, 5.0, 20.0] {
                    let t = z / l;
                    let k = mean_residual_life(&p, t, Method::Quadrature).unwrap();
                    let lr = mean_reversed_residual_life(&p, t, Method::Quadrature).unwrap();
                    assert!(k >= 0.0 && k.is_finite());
                    assert!((0.0..=t).contains(&lr));
                }
            }
        }
    }
}

#[test]
fn residual_life_settles_on_the_exponential_mean() {
    for &l in &[0.5, 1.0, 4.0] {
        for &th in &[-1.0, -0.5, 0.0, 0.5, 0.9] {
            let p = params(l, 2.0, th);
            let k = mean_residual_life(&p, 50.0 / l, Method::Quadrature).unwrap();
            assert!((k - 1.0 / l).abs() < 1e-3 / l, "{p:?}: {k}");
        }
        let p = params(l, 2.0, 1.0);
        let k = mean_residual_life(&p, 50.0 / l, Method::Quadrature).unwrap();
        assert!((k - 0.5 / l).abs() < 1e-3 / l);
    }
}

#[test]
fn residual_distributions_are_consistent() {
    let p = params(0.7, 1.4, -0.2);
    let t = 2.0;
    for x in [0.0, 0.5, 3.0] {
        let s = residual_survival(&p, t, x).unwrap();
        assert!((s + residual_cdf(&p, t, x).unwrap() - 1.0).abs() < 1e-14);
        let h = residual_hazard(&p, t, x).unwrap();
        assert!(rel(h * s, residual_pdf(&p, t, x).unwrap()) < 1e-12);
        let d = derivative(|y| residual_cdf(&p, t, y).unwrap(), x.max(0.01), 1e-4);
        assert!((d - residual_pdf(&p, t, x.max(0.01)).unwrap()).abs() < 1e-8);
    }
    for x in [0.0, 0.5, 1.5] {
        let s = reversed_survival(&p, t, x).unwrap();
        assert!((s + reversed_cdf(&p, t, x).unwrap() - 1.0).abs() < 1e-14);
        assert!(reversed_hazard(&p, t, x).unwrap() > 0.0);
    }
    assert!(reversed_cdf(&p, t, 2.5).is_err());
    assert!(variance_residual_life(&p, t, Method::Quadrature).unwrap() > 0.0);
    assert!(variance_reversed_residual_life(&p, t, Method::Quadrature).unwrap() > 0.0);
}

#[test]
fn null_conditioning_events() {
    let p = params(1.0, 1.0, 0.0);
    assert!(mean_residual_life(&p, 800.0, Method::Quadrature).is_err());
    assert!(mean_residual_life(&p, -1.0, Method::Quadrature).is_err());
}
