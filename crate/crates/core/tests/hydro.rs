mod common;

use common::*;
use nwte::hydro::{conditional_event_mean, exceedance_probability, mean_deviation_about_return_level, resolve, return_level, return_period, ReturnSpec};
use nwte::nwte::{pdf, quantile};
use nwte::{Method, NwteParams};

const PERIODS: [f64; 7] = [2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0];

fn gwd() -> NwteParams {
    let (l, g, t) = GWD_PARAMS;
    NwteParams::new(l, g, t).unwrap()
}

fn fd() -> NwteParams {
    NwteParams::new(0.000097, 29.109413, 0.808284).unwrap()
}

#[test]
fn high_precision_return_values() {
    let p = gwd();
    assert!(rel(return_level(&p, 100.0).unwrap(), GWD_RETURN_LEVEL_100) < 1e-12);
    assert!(rel(mean_deviation_about_return_level(&p, 100.0, Method::Quadrature).unwrap(), GWD_XI_100) < 1e-10);
}

#[test]
fn mean_deviation_matches_direct_integral() {
    for p in [gwd(), fd(), NwteParams::new(1.0, 0.5, -0.6).unwrap()] {
        for t in [2.0, 20.0, 200.0] {
            let x = return_level(&p, t).unwrap();
            let below = tanh_sinh(|y| (x - y) * pdf(&p, y).unwrap(), 0.0, x);
            let above = integrate_to_infinity(|y| (y - x) * pdf(&p, y).unwrap(), x, &[], 1.0 / p.lambda());
            let xi = mean_deviation_about_return_level(&p, t, Method::Quadrature).unwrap();
            assert!(rel(xi, below + above) < 1e-9, "{p:?} T={t}");
        }
    }
}

#[test]
fn return_levels_increase_with_period() {
    for p in [gwd(), fd()] {
        let xs: Vec<f64> = PERIODS.iter().map(|&t| return_level(&p, t).unwrap()).collect();
        assert!(xs.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn deviation_is_smallest_at_the_median() {
    for p in [gwd(), fd(), NwteParams::new(2.0, 3.0, -0.8).unwrap()] {
        let periods: Vec<f64> = (0..400).map(|i| 1.01 + 0.01 * i as f64).collect();
        let best = periods
            .iter()
            .map(|&t| (t, mean_deviation_about_return_level(&p, t, Method::Quadrature).unwrap()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        // The median is the level with exceedance probability 1/2, i.e. T = 2.
        assert!((best.0 - 2.0).abs() <= 0.011, "{p:?}: argmin T = {}", best.0);
        assert!((return_level(&p, 2.0).unwrap() - quantile(&p, 0.5).unwrap()).abs() < 1e-12 * quantile(&p, 0.5).unwrap());
    }
}

#[test]
fn period_and_level_are_inverse() {
    for p in [gwd(), fd()] {
        for &t in &PERIODS {
            let x = return_level(&p, t).unwrap();
            assert!(rel(return_period(&p, x).unwrap(), t) < 1e-9);
            assert!(rel(resolve(&p, ReturnSpec::Level(x)).unwrap(), t) < 1e-9);
            assert!(rel(exceedance_probability(&p, x).unwrap(), 1.0 / t) < 1e-9);
        }
        for x in [0.5, 2.0, 8.0].map(|z| z / p.lambda() / 10.0) {
            let t = return_period(&p, x).unwrap();
            assert!(rel(return_level(&p, t).unwrap(), x) < 1e-9);
        }
    }
}

#[test]
fn unit_period_and_errors() {
    let p = gwd();
    assert_eq!(return_level(&p, 1.0).unwrap(), 0.0);
    assert!(return_level(&p, 0.9).is_err());
    assert!(return_period(&p, -1.0).is_err());
    let q = 8.0;
    let m = conditional_event_mean(&p, q, Method::Quadrature).unwrap();
    assert!(m > q);
}
