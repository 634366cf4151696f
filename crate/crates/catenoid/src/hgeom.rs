//! Coordinate models of hyperbolic 3-space restricted to the rotationally
//! symmetric setting.
//!
//! Everything lives in the generating half-plane of a surface of revolution:
//! the warped-product half-disk with metric `ds^2 = cosh^2(y) dx^2 + dy^2`
//! (x the signed distance along the rotation axis, y the distance from it),
//! and the corresponding upper half of the Poincaré disk with Euclidean
//! coordinates (u, v). The third ball coordinate is never modeled; rotational
//! symmetry is implicit.

use crate::error::{Error, Result};

/// Point in warped-product coordinates: `x` along the rotation axis, `y >= 0`
/// the hyperbolic distance from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfDiskPoint {
    pub x: f64,
    pub y: f64,
}

impl HalfDiskPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain(format!(
                "half-disk point must be finite, got ({x}, {y})"
            )));
        }
        if y < 0.0 {
            return Err(Error::Domain(format!(
                "half-disk point needs y >= 0, got y = {y}"
            )));
        }
        Ok(Self { x, y })
    }
}

/// Point in the generating half-disk of the Poincaré ball: `u^2 + v^2 < 1`,
/// `v >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallPoint {
    pub u: f64,
    pub v: f64,
}

impl BallPoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !u.is_finite() || !v.is_finite() {
            return Err(Error::Domain(format!(
                "ball point must be finite, got ({u}, {v})"
            )));
        }
        if v < 0.0 {
            return Err(Error::Domain(format!(
                "ball point needs v >= 0, got v = {v}"
            )));
        }
        if u * u + v * v >= 1.0 {
            return Err(Error::Domain(format!(
                "ball point must satisfy u^2 + v^2 < 1, got ({u}, {v})"
            )));
        }
        Ok(Self { u, v })
    }
}

/// Hyperbolic distance between the two geodesic planes asymptotic to a
/// coaxial pair of boundary circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePairSeparation {
    pub d_l: f64,
}

impl CirclePairSeparation {
    pub fn new(d_l: f64) -> Result<Self> {
        if !(d_l > 0.0) || !d_l.is_finite() {
            return Err(Error::Domain(format!(
                "circle-pair separation must be positive and finite, got {d_l}"
            )));
        }
        Ok(Self { d_l })
    }
}

// Error-free transforms used to keep the chart maps accurate near the ideal
// boundary, where the naive expressions cancel catastrophically.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `1 - u^2 - v^2` with compensated arithmetic: exact products and a
/// compensated sum, so the only error left is the final rounding.
#[inline]
fn one_minus_r2(u: f64, v: f64) -> f64 {
    let (pu, eu) = two_prod(u, u);
    let (pv, ev) = two_prod(v, v);
    let (s1, c1) = two_sum(1.0, -pu);
    let (s2, c2) = two_sum(s1, -pv);
    s2 + ((c1 + c2) - (eu + ev))
}

/// Map a warped-product point to the Poincaré half-disk:
/// `u = sinh x cosh y / (1 + cosh x cosh y)`, `v = sinh y / (1 + ...)`.
///
/// Evaluated in exponent-scaled form so the map stays finite and accurate
/// out to `|x|, y <= 700`. Outputs within half an ulp of the ideal boundary
/// are nudged one ulp inward so the result is always a valid ball point.
pub fn halfdisk_to_ball(p: HalfDiskPoint) -> BallPoint {
    let ax = p.x.abs();
    let sign = if p.x < 0.0 { -1.0 } else { 1.0 };

    // Multiply numerator and denominator by 4 exp(-(|x| + y)).
    let ea = (-2.0 * ax).exp(); // e^{-2|x|}
    let eb = (-2.0 * p.y).exp(); // e^{-2y}
    let es = (-(ax + p.y)).exp(); // e^{-(|x|+y)}
    let one_m_ea = -(-2.0 * ax).exp_m1();
    let one_m_eb = -(-2.0 * p.y).exp_m1();

    let den = 4.0 * es + (1.0 + ea) * (1.0 + eb);
    let mut u = sign * one_m_ea * (1.0 + eb) / den;
    let mut v = 2.0 * one_m_eb * (-ax).exp() / den;

    // For y beyond ~38 the true v sits within half an ulp of 1; correct
    // rounding would land exactly on the boundary.
    while u * u + v * v >= 1.0 {
        if v >= u.abs() {
            v = next_toward_zero(v);
        } else {
            u = next_toward_zero(u);
        }
    }
    BallPoint { u, v }
}

#[inline]
fn next_toward_zero(x: f64) -> f64 {
    if x > 0.0 {
        f64::from_bits(x.to_bits() - 1)
    } else if x < 0.0 {
        -f64::from_bits((-x).to_bits() - 1)
    } else {
        x
    }
}

/// Inverse chart map: `tanh x = 2u / (1 + u^2 + v^2)`,
/// `sinh y = 2v / (1 - u^2 - v^2)`.
///
/// `x` is computed through the cancellation-free identity
/// `x = ln(((1+u)^2 + v^2) / ((1-u)^2 + v^2)) / 2` and `y` through a
/// compensated `1 - r^2`, so the only loss left is what the f64 inputs
/// themselves carry (near the boundary the chart itself is ill-conditioned:
/// sensitivities grow like `cosh x cosh y`).
pub fn ball_to_halfdisk(p: BallPoint) -> HalfDiskPoint {
    let BallPoint { u, v } = p;
    let num = (1.0 + u) * (1.0 + u) + v * v;
    let den = (1.0 - u) * (1.0 - u) + v * v;
    let x = 0.5 * (num / den).ln();
    let d = one_minus_r2(u, v);
    let y = (2.0 * v / d).asinh();
    HalfDiskPoint { x, y }
}

/// Area of a totally geodesic disk of hyperbolic radius `y1`:
/// `4 pi sinh^2(y1/2) = 2 pi (cosh y1 - 1)`.
pub fn geodesic_disk_area(y1: f64) -> Result<f64> {
    if !(y1 >= 0.0) || !y1.is_finite() {
        return Err(Error::Domain(format!("disk radius must be >= 0, got {y1}")));
    }
    // The sinh^2 form is exact at 0 and keeps full precision for small radii.
    let s = (0.5 * y1).sinh();
    Ok(4.0 * std::f64::consts::PI * s * s)
}
