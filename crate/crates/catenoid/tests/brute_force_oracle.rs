//! Independent oracle: a fixed 100 000-panel composite Simpson rule over the
//! same square-root substitution, with no adaptivity, no error estimation,
//! and no tail machinery shared with the library path. Agreement pins both
//! the integrand transcriptions and the adaptive engine.
//!
//! After `t = s^2` every integrand below is smooth and even in `s`, so
//! Simpson converges like `h^4` and 1e5 panels leave ~1e-15 truncation.

use catenoid::area::{band_area, comparison_integral, f_area_difference, k_constant};
use catenoid::catenary::Catenary;
use catenoid::separation::{d0, d0_prime};
use catenoid::QuadConfig;

const PANELS: usize = 100_000;

/// Composite Simpson for `int_0^len f(d) dd` via `d = s^2`.
fn simpson_sqrt(f: impl Fn(f64) -> f64, len: f64) -> f64 {
    let g = |s: f64| 2.0 * s * f(s * s);
    let b = len.sqrt();
    let h = b / PANELS as f64;
    // For this integrand family g has a finite nonzero limit at s = 0 (the
    // 2s factor cancels the 1/sqrt singularity); s = 1e-30 evaluates it
    // without hitting the 0 * inf form.
    let mut sum = g(1e-30) + g(b);
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..PANELS {
        let v = g(i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    sum += 4.0 * odd + 2.0 * even;
    sum * h / 3.0
}

fn assert_agrees(library: f64, oracle: f64, tol: f64, what: &str) {
    assert!(
        (library - oracle).abs() <= tol,
        "{what}: library {library:.17e} vs oracle {oracle:.17e}, err {:.3e}",
        (library - oracle).abs()
    );
}

#[test]
fn oracle_d0() {
    let cfg = QuadConfig::default();
    for &lambda in &[0.3_f64, 0.5, 1.0, 2.0] {
        // Truncating at t = 40 discards ~e^{-120}.
        let oracle = simpson_sqrt(
            |t| {
                (2.0 * lambda).sinh()
                    / ((t + lambda).cosh()
                        * (2.0 * t + 4.0 * lambda).sinh().sqrt()
                        * (2.0 * t).sinh().sqrt())
            },
            40.0,
        );
        assert_agrees(
            d0(lambda, &cfg).unwrap(),
            oracle,
            1e-11,
            &format!("d0({lambda})"),
        );
    }
}

#[test]
fn oracle_profile() {
    let cfg = QuadConfig::default();
    let cat = Catenary::new(1.0).unwrap();
    let oracle = simpson_sqrt(
        |t| {
            (2.0_f64).sinh()
                / ((t + 1.0).cosh() * (2.0 * t + 4.0).sinh().sqrt() * (2.0 * t).sinh().sqrt())
        },
        1.0,
    );
    assert_agrees(cat.profile_x(2.0, &cfg).unwrap(), oracle, 1e-12, "x(1, 2)");
}

#[test]
fn oracle_d0_prime() {
    let cfg = QuadConfig::default();
    let lambda = 0.3;
    let oracle = simpson_sqrt(
        |t| {
            let num = (t + lambda).sinh()
                * (5.0 * (t + lambda).cosh().powi(2) - (t + 3.0 * lambda).cosh().powi(2));
            let den = (t + lambda).cosh().powi(2)
                * (2.0 * t).sinh().sqrt()
                * (2.0 * t + 4.0 * lambda).sinh().powi(3).sqrt();
            num / den
        },
        40.0,
    );
    assert_agrees(d0_prime(lambda, &cfg).unwrap(), oracle, 1e-10, "d0'(0.3)");
}

#[test]
fn oracle_area_excess_and_band() {
    let cfg = QuadConfig::default();
    let lambda = 0.5_f64;
    let oracle = simpson_sqrt(
        |t| {
            let p = (2.0 * t + 4.0 * lambda).sinh() * (2.0 * t).sinh();
            let sp = p.sqrt();
            (t + lambda).sinh() * (2.0 * lambda).sinh().powi(2)
                / (sp * ((2.0 * t + 2.0 * lambda).sinh() + sp))
        },
        40.0,
    );
    assert_agrees(
        f_area_difference(lambda, &cfg).unwrap(),
        oracle,
        1e-11,
        "f(0.5)",
    );

    let oracle = 4.0
        * std::f64::consts::PI
        * simpson_sqrt(
            |t| {
                (t + 1.0).sinh() * (2.0 * t + 2.0).sinh()
                    / ((2.0 * t + 4.0).sinh().sqrt() * (2.0 * t).sinh().sqrt())
            },
            1.0,
        );
    assert_agrees(
        band_area(1.0, 2.0, &cfg).unwrap(),
        oracle,
        1e-9,
        "band(1, 2)",
    );
}

#[test]
fn oracle_elliptic_constant() {
    let cfg = QuadConfig::default();
    // x = 1 - d with 1 - x^4 factored exactly.
    let oracle = simpson_sqrt(
        |d| {
            let x = 1.0 - d;
            let z = d * (2.0 - d) * (1.0 + x * x);
            let sz = z.sqrt();
            x * x / (sz * (1.0 + sz))
        },
        1.0,
    );
    assert_agrees(k_constant(&cfg).unwrap(), oracle, 1e-12, "K");

    let oracle = simpson_sqrt(
        |d| {
            let z = d * (2.0 - d);
            let sz = z.sqrt();
            1.0 / (sz * (1.0 + sz))
        },
        1.0,
    );
    assert_agrees(
        comparison_integral(&cfg).unwrap(),
        oracle,
        1e-12,
        "comparison integral",
    );
    assert_agrees(oracle, 1.0, 1e-12, "comparison integral closed form");
}
