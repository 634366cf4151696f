//! Band-versus-caps area comparison.
//!
//! The compact band of a catenoid between the symmetric planes through
//! radius `y1` has area (by the coarea formula)
//!
//! ```text
//! band(lambda, y1) = 4 pi int_lambda^y1 sinh t sinh 2t / sqrt(sinh^2 2t - sinh^2 2 lambda) dt ,
//! ```
//!
//! while the two geodesic caps bounded by the same circles have total area
//! `4 pi (cosh y1 - 1)`. Subtracting the cap growth leaves the area excess
//!
//! ```text
//! f(lambda) = int_lambda^inf sinh t (sinh 2t / sqrt(sinh^2 2t - sinh^2 2 lambda) - 1) dt ,
//! ```
//!
//! which is bounded by `K cosh lambda` with
//! `K = int_0^1 x^{-2} (1/sqrt(1-x^4) - 1) dx`. The band loses to the caps
//! once `f(lambda) < g(lambda) = cosh lambda - 1`, i.e. for
//! `lambda >= Lambda0 = acosh(1/(1-K))`.

use crate::error::{Error, Result};
use crate::hgeom::geodesic_disk_area;
use crate::quad::{
    integrate_semi_infinite, integrate_sqrt_singular_offset, QuadConfig, TailPolicy,
};

/// `Theta(t, lambda) - 1` where
/// `Theta = sinh(2t + 2L) / sqrt(sinh(2t + 4L) sinh(2t))`, written through
/// the conjugate so no cancellation survives:
/// `sinh^2(2L) / (sqrt(P) (sinh(2t + 2L) + sqrt(P)))`.
pub(crate) fn theta_minus_one(t: f64, lambda: f64) -> f64 {
    let sp = (2.0 * t + 4.0 * lambda).sinh().sqrt() * (2.0 * t).sinh().sqrt();
    let s2l = (2.0 * lambda).sinh();
    s2l * s2l / (sp * ((2.0 * t + 2.0 * lambda).sinh() + sp))
}

fn f_integrand(t: f64, lambda: f64) -> f64 {
    (t + lambda).sinh() * theta_minus_one(t, lambda)
}

fn f_tail(lambda: f64) -> TailPolicy {
    // |integrand| <= 1.04 sinh^2(2L) e^{-3L} e^{-3t} for t >= 1, folded into
    // the rate-1 majorant; sinh^2(2L) e^{-3L} = e^L (1 - e^{-4L})^2 / 4.
    let one_m = -(-4.0 * lambda).exp_m1();
    let coeff = 0.05 * lambda.exp() * one_m * one_m;
    TailPolicy::new(1.0, coeff.max(f64::MIN_POSITIVE), 1.0)
}

/// Area excess of one half-catenoid over the flat annulus (per `2 pi`):
/// finite for every `lambda > 0` and bounded by `K cosh lambda`.
pub fn f_area_difference(lambda: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("f needs lambda > 0, got {lambda}")));
    }
    let cfg = cfg.with_tail(f_tail(lambda));
    Ok(integrate_semi_infinite(|t| f_integrand(t, lambda), 0.0, &cfg)?.value)
}

/// Truncated area excess `int_0^(y1-lambda)` of the same integrand; the
/// piece of `f` accumulated up to radius `y1`.
pub fn f_partial(lambda: f64, y1: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(lambda > 0.0) || !(y1 >= lambda) {
        return Err(Error::Domain(format!(
            "partial excess needs y1 >= lambda > 0, got lambda = {lambda}, y1 = {y1}"
        )));
    }
    if y1 == lambda {
        return Ok(0.0);
    }
    Ok(integrate_sqrt_singular_offset(|t| f_integrand(t, lambda), y1 - lambda, cfg)?.value)
}

/// Cap growth `g(lambda) = cosh lambda - 1`.
pub fn g_cap(lambda: f64) -> Result<f64> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("g needs lambda >= 0, got {lambda}")));
    }
    let s = (0.5 * lambda).sinh();
    Ok(2.0 * s * s)
}

/// The comparison constant `K = int_0^1 x^{-2} (1/sqrt(1-x^4) - 1) dx`,
/// an elliptic-type integral in `(0, 1)`.
///
/// The integrand is rewritten as `x^2 / (sqrt(1-x^4) (1 + sqrt(1-x^4)))`
/// (no cancellation at 0) and the `1/sqrt(1-x)` singularity at the upper
/// endpoint is handled by the mirrored substitution `x = 1 - d`.
pub fn k_constant(cfg: &QuadConfig) -> Result<f64> {
    let q = |d: f64| {
        let x = 1.0 - d;
        let z = d * (2.0 - d) * (1.0 + x * x); // 1 - x^4, exactly factored
        let sz = z.sqrt();
        x * x / (sz * (1.0 + sz))
    };
    Ok(integrate_sqrt_singular_offset(q, 1.0, cfg)?.value)
}

/// The comparison integral `int_0^1 x^{-2} (1/sqrt(1-x^2) - 1) dx = 1`
/// that dominates `K`; same mirrored treatment of the endpoint.
pub fn comparison_integral(cfg: &QuadConfig) -> Result<f64> {
    let q = |d: f64| {
        let z = d * (2.0 - d); // 1 - x^2 at x = 1 - d
        let sz = z.sqrt();
        1.0 / (sz * (1.0 + sz))
    };
    Ok(integrate_sqrt_singular_offset(q, 1.0, cfg)?.value)
}

/// The least-area threshold `Lambda0 = acosh(1/(1 - K))`.
pub fn lambda0(cfg: &QuadConfig) -> Result<f64> {
    Ok(least_area_constants(cfg)?.lambda0)
}

/// The pair `(K, Lambda0)`.
#[derive(Debug, Clone, Copy)]
pub struct LeastAreaConstants {
    pub k: f64,
    pub lambda0: f64,
}

pub fn least_area_constants(cfg: &QuadConfig) -> Result<LeastAreaConstants> {
    let k = k_constant(cfg)?;
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::Inconclusive(format!("K = {k} escaped (0, 1)")));
    }
    Ok(LeastAreaConstants {
        k,
        lambda0: (1.0 / (1.0 - k)).acosh(),
    })
}

fn band_integrand(t: f64, lambda: f64) -> f64 {
    // sinh(t+L) sinh(2t+2L) / (sqrt(sinh(2t+4L)) sqrt(sinh 2t)) in
    // exponent-scaled form: e^{2t+L} (1-e^{-2(t+L)}) (1-e^{-(4t+4L)})
    //                       / (2 sqrt(2) sqrt(1-e^{-(4t+8L)}) sqrt(sinh 2t)).
    let e1sq = (-2.0 * (t + lambda)).exp();
    let e22sq = (-(4.0 * t + 4.0 * lambda)).exp();
    let e24sq = (-(4.0 * t + 8.0 * lambda)).exp();
    (2.0 * t + lambda).exp() * (1.0 - e1sq) * (1.0 - e22sq)
        / (2.0 * std::f64::consts::SQRT_2 * (1.0 - e24sq).sqrt() * (2.0 * t).sinh().sqrt())
}

/// Coarea band area of the catenoid between radii `lambda` and `y1`:
/// zero at `y1 = lambda`, strictly increasing in `y1`.
pub fn band_area(lambda: f64, y1: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(lambda > 0.0) || !(y1 >= lambda) || !y1.is_finite() {
        return Err(Error::Domain(format!(
            "band needs y1 >= lambda > 0, got lambda = {lambda}, y1 = {y1}"
        )));
    }
    if y1 == lambda {
        return Ok(0.0);
    }
    let q = integrate_sqrt_singular_offset(|t| band_integrand(t, lambda), y1 - lambda, cfg)?;
    Ok(4.0 * std::f64::consts::PI * q.value)
}

/// Total area of the two geodesic caps with radius `y1`:
/// `2 * disk(y1) = 4 pi (cosh y1 - 1)`.
pub fn caps_area(y1: f64) -> Result<f64> {
    Ok(2.0 * geodesic_disk_area(y1)?)
}

/// Band-versus-caps comparison at one `(lambda, y1)`.
#[derive(Debug, Clone, Copy)]
pub struct AreaComparison {
    pub lambda: f64,
    pub y1: f64,
    /// Band area by direct quadrature.
    pub band_area: f64,
    /// Band area through the split
    /// `4 pi (cosh y1 - cosh lambda) + 4 pi * partial excess` — the
    /// comparison's own consistency check.
    pub band_area_split: f64,
    pub caps_area: f64,
    /// `caps_area - band_area`; positive when the caps win.
    pub margin: f64,
}

/// Compare the band against the two caps, exposing both the direct band
/// integral and its split form.
pub fn compare(lambda: f64, y1: f64, cfg: &QuadConfig) -> Result<AreaComparison> {
    if !(y1 > lambda) || !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "comparison needs y1 > lambda > 0, got lambda = {lambda}, y1 = {y1}"
        )));
    }
    let band = band_area(lambda, y1, cfg)?;
    let caps = caps_area(y1)?;
    // cosh y1 - cosh lambda without cancellation.
    let cosh_diff = 2.0 * (0.5 * (y1 + lambda)).sinh() * (0.5 * (y1 - lambda)).sinh();
    let split = 4.0 * std::f64::consts::PI * (cosh_diff + f_partial(lambda, y1, cfg)?);
    Ok(AreaComparison {
        lambda,
        y1,
        band_area: band,
        band_area_split: split,
        caps_area: caps,
        margin: caps - band,
    })
}
