//! Cross-module consistency: the same geometric quantities reached through
//! independent routes must agree.

use catenoid::catenary::Catenary;
use catenoid::separation::{critical_constants, d0, d0_prime, d0_upper_bound};
use catenoid::QuadConfig;

#[test]
fn profile_limit_is_separation() {
    // x(y) -> d0(lambda) as y -> infinity; at y = 40 the gap is ~e^{-118}.
    let cfg = QuadConfig::default();
    for i in 0..=29 {
        let lambda = 0.1 + (3.0 - 0.1) * i as f64 / 29.0;
        let cat = Catenary::new(lambda).unwrap();
        let x40 = cat.profile_x(40.0, &cfg).unwrap();
        let limit = d0(lambda, &cfg).unwrap();
        assert!(
            (x40 - limit).abs() < 1e-10,
            "profile/separation mismatch at lambda = {lambda}: {x40} vs {limit}"
        );
    }
}

#[test]
fn derivative_integral_matches_finite_differences() {
    let cfg = QuadConfig::default();
    let h = 1e-5;
    let mut worst = 0.0_f64;
    for i in 0..=19 {
        let lambda = 0.1 + (2.0 - 0.1) * i as f64 / 19.0;
        let fd = (d0(lambda + h, &cfg).unwrap() - d0(lambda - h, &cfg).unwrap()) / (2.0 * h);
        let an = d0_prime(lambda, &cfg).unwrap();
        worst = worst.max((an - fd).abs());
    }
    assert!(worst < 1e-6, "max |d0' - fd| = {worst:.3e}");
}

#[test]
fn tangent_consistent_with_profile_slope() {
    // dx/dy from the quadrature profile vs tan(alpha)/cosh(y) from the
    // tangent formula: sin alpha determines the graph slope through
    // dx/dy = sin alpha / (cosh y sqrt(1 - sin^2 alpha)).
    let cfg = QuadConfig::default();
    let cat = Catenary::new(0.8).unwrap();
    for &y in &[1.0, 1.5, 2.5, 4.0] {
        let h = 1e-6;
        let slope =
            (cat.profile_x(y + h, &cfg).unwrap() - cat.profile_x(y - h, &cfg).unwrap()) / (2.0 * h);
        let s = cat.tangent_angle_sin(y).unwrap();
        let expected = s / (y.cosh() * (1.0 - s * s).sqrt());
        assert!(
            (slope - expected).abs() < 1e-6 * expected.max(1e-3),
            "slope mismatch at y = {y}: {slope} vs {expected}"
        );
    }
}

#[test]
fn separation_maximum_sits_where_derivative_vanishes() {
    let cfg = QuadConfig::default();
    let consts = critical_constants(&cfg).unwrap();
    let dprime = d0_prime(consts.lambda_d, &cfg).unwrap();
    assert!(
        dprime.abs() < 1e-6,
        "d0'(lambda_d) = {dprime:.3e} should vanish at the located maximum"
    );
    assert!(d0(consts.lambda_d, &cfg).unwrap() < d0_upper_bound(consts.lambda_d));
}
